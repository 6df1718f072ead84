#pragma once

#include <Eigen/Sparse>
#include <array>
#include <memory>
#include <utility>
#include <vector>

#include "oneleg/dlss.hpp"
#include "oneleg/entropy.hpp"
#include "oneleg/gmatrix.hpp"
#include "oneleg/grid.hpp"
#include "oneleg/newton.hpp"
#include "oneleg/scheme.hpp"
#include "oneleg/skt.hpp"

namespace oneleg {

// Spatial model behind the time stepper.
class DiffusionModel {
 public:
  virtual ~DiffusionModel() = default;
  virtual int species() const = 0;
  virtual GridState initial_densities(int n) const = 0;
  virtual Eigen::VectorXd residual(const History& hist, const GridState& v_new,
                                   const SchemeCoefficients& s, double alpha, double tau) const = 0;
  virtual Eigen::SparseMatrix<double> jacobian(const History& hist, const GridState& v_new,
                                               const SchemeCoefficients& s, double alpha,
                                               double tau) const = 0;
  virtual double entropy_production(const GridState& w, double alpha) const = 0;
};

class SktModel : public DiffusionModel {
 public:
  SktModel(SktParams params, bool paper_literal = false)
      : params_(params), paper_literal_(paper_literal) {}
  int species() const override { return 2; }
  GridState initial_densities(int n) const override {
    return skt_initial_data(SktTest::B, n).first;  // profile is test-independent
  }
  Eigen::VectorXd residual(const History& hist, const GridState& v_new, const SchemeCoefficients& s,
                           double alpha, double tau) const override {
    return skt_residual(hist, v_new, s, params_, alpha, tau, paper_literal_);
  }
  Eigen::SparseMatrix<double> jacobian(const History& hist, const GridState& v_new,
                                       const SchemeCoefficients& s, double alpha,
                                       double tau) const override {
    return skt_jacobian(hist, v_new, s, params_, alpha, tau, paper_literal_);
  }
  double entropy_production(const GridState& w, double alpha) const override {
    return skt_entropy_production(w, alpha, params_.d1, params_.d2);
  }
  const SktParams& params() const { return params_; }

 private:
  SktParams params_;
  bool paper_literal_;
};

class DlssModel : public DiffusionModel {
 public:
  int species() const override { return 1; }
  GridState initial_densities(int n) const override { return dlss_initial_data(n); }
  Eigen::VectorXd residual(const History& hist, const GridState& v_new, const SchemeCoefficients& s,
                           double alpha, double tau) const override {
    return dlss_residual(hist, v_new, s, alpha, tau);
  }
  Eigen::SparseMatrix<double> jacobian(const History& hist, const GridState& v_new,
                                       const SchemeCoefficients& s, double alpha,
                                       double tau) const override {
    return dlss_jacobian(hist, v_new, s, alpha, tau);
  }
  double entropy_production(const GridState& w, double alpha) const override {
    return dlss_entropy_production(w, alpha);
  }
};

struct StepDiagnostics {
  int newton_iters = 0;
  double residual_norm = 0.0;
  double entropy = 0.0;
  double entropy_production = 0.0;
  std::array<double, 2> mass_residual{0.0, 0.0};  // per species; [1] unused for one species
  double min_sigma_v = 0.0;
  double min_w = 0.0;
};

// First step of a two-step run: one implicit Euler solve for v_1 from v_0
// (rho = (-1, 1), sigma = (0, 1)); first-step error is O(tau^2).
GridState euler_startup(const DiffusionModel& model, const GridState& v0, double alpha, double tau,
                        const NewtonOptions& opts = {});

// One accepted one-leg step: solve the model residual for v_{k+p} starting
// from the linear-extrapolation guess (fallback: newest history state when
// extrapolation loses positivity), then evaluate diagnostics on the
// trailing window.
std::pair<GridState, StepDiagnostics> step(const DiffusionModel& model, const History& hist,
                                           const SchemeCoefficients& s, const GMatrix& g,
                                           double alpha, double tau,
                                           const NewtonOptions& opts = {});

struct StepRecord {
  long step = 0;        // time index k of the window V_k
  double time = 0.0;    // t_k
  double entropy = 0.0;
  double production = 0.0;
  double min_w = 0.0;
  double mass_residual = 0.0;  // max over species of |weighted mass sum|
  int newton_iters = 0;
  double residual_norm = 0.0;
};

struct Trajectory {
  std::vector<StepRecord> records;
  History final_window;
  GridState final_state;
  std::vector<std::pair<long, GridState>> snapshots;  // (time index, v state)
  double entropy_min = 0.0;
  double entropy_final = 0.0;
};

struct ProblemSpec;
Trajectory run(const ProblemSpec& spec);

}  // namespace oneleg
