#pragma once

#include <array>
#include <string>
#include <vector>

#include "oneleg/gmatrix.hpp"
#include "oneleg/integrator.hpp"
#include "oneleg/problem.hpp"

namespace oneleg {

// Grid-weighted l2 norm of the difference over nodes and species:
//   ( sum_i sum_s (v_{s,i} - ref_{s,i})^2 h )^{1/2}.
double l2_error(const GridState& v, const GridState& v_ref);

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

// Ordinary least squares of y against x, all points weighted equally.
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

struct ConvergenceReport {
  std::vector<double> taus;    // strictly decreasing
  std::vector<double> errors;  // l2 errors against the reference
  std::vector<double> t_ends;  // comparison time per tau (nearest step multiple of t_m)
  double tau_ref = 0.0;
  double rate = 0.0;
  double r_squared = 0.0;
};

// Runs the base problem for every tau and for tau_ref, measures the error
// at time t_m against the reference run, and fits log(err) vs log(tau).
// Each tau must be an integer multiple of tau_ref (so the comparison times
// align with reference steps exactly); t_m is rounded to the nearest step
// multiple per tau.  Requires tau_ref <= min(taus)/8.  The independent
// simulations execute concurrently; assembly is ordered by tau.
ConvergenceReport convergence_study(const ProblemSpec& base, std::vector<double> taus,
                                    double tau_ref, double t_m);

struct DecayReport {
  Trajectory trajectory;
  double h_star = 0.0;
  bool h_star_from_min = false;  // final window was not the entropy minimum
  double slope = 0.0;            // d log(E_rel) / dt
  double r_squared = 0.0;
  size_t fit_points = 0;
  // steps violating H_{k+1} + tau P_k <= H_k + 1e-6 |H_k|; the production
  // quadrature is a diagnostic, so this is logged, never asserted
  size_t soft_dissipation_violations = 0;
};

// Runs to t_final, takes H* from the final window (or the trajectory
// minimum when smaller), and fits log(E_rel) against t on the band
// E_rel in [1e-10 E0, 0.5 E0].
DecayReport entropy_decay_study(const ProblemSpec& spec);

struct SchemeReportRow {
  std::string name;
  int p = 0;
  std::array<double, 3> alphas{};  // padded with zeros past p
  std::array<double, 3> betas{};
  bool admissible = true;
  GCertification cert;      // meaningful when admissible
  Eigen::MatrixXd g;        // candidate G fed to the certifier
};

// Catalogue: bdf2, midpoint, the gamma methods (9-4*sqrt5, 1/5, 1) and a
// 10x10 grid of family parameters including inadmissible combinations.
std::vector<SchemeReportRow> scheme_report();

}  // namespace oneleg
