#pragma once

#include <array>
#include <string>
#include <vector>

namespace oneleg {

// One-leg multistep method: polynomials rho(xi) = sum alpha_j xi^j and
// sigma(xi) = sum beta_j xi^j with p steps, normalized to sigma(1) = 1.
// Immutable after construction; build through the factory functions below.
struct SchemeCoefficients {
  int p = 0;
  std::vector<double> alphas;  // size p+1
  std::vector<double> betas;   // size p+1
  std::string name;

  double alpha(int j) const { return alphas[static_cast<size_t>(j)]; }
  double beta(int j) const { return betas[static_cast<size_t>(j)]; }
};

// Two-step BDF: alpha = (1/2, -2, 3/2), beta = (0, 0, 1).
SchemeCoefficients bdf2();

// Implicit midpoint rule: p = 1, alpha = (-1, 1), beta = (1/2, 1/2).
SchemeCoefficients implicit_midpoint();

// Implicit Euler: p = 1, alpha = (-1, 1), beta = (0, 1).
// Used for the startup step of two-step schemes and as a first-order
// reference method in rate studies.
SchemeCoefficients implicit_euler();

// Two-step family with free parameter gamma in (0, 1]:
//   alpha = (-gamma, gamma-1, 1) / (gamma+1)
//   beta  = (gamma(gamma+3), (gamma-1)^2, 3 gamma+1) / (2 (gamma+1)^2)
SchemeCoefficients gamma_method(double gamma);

// Full two-parameter family of second-order G-stable two-step methods:
//   alpha = (alpha2-1, 1-2 alpha2, alpha2)
//   beta  = (1/2-alpha2+beta2, 1/2+alpha2-2 beta2, beta2)
// Admissible iff beta2 > alpha2/2 (and alpha2 > 0 so the leading
// coefficient is positive).
SchemeCoefficients family_scheme(double alpha2, double beta2);

// Build from explicit coefficients (validated); mostly for tests.
SchemeCoefficients make_scheme(std::vector<double> alphas, std::vector<double> betas,
                               std::string name);

// Residuals of the normalization/consistency/second-order conditions:
//   [0] rho(1)            [1] rho'(1) - 1
//   [2] sigma(1) - 1      [3] rho'(1) + rho''(1) - 2 sigma'(1)
struct OrderReport {
  bool consistent = false;
  bool second_order = false;
  std::array<double, 4> residuals{};
};

OrderReport check_order(const SchemeCoefficients& s);

}  // namespace oneleg
