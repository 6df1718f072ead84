#pragma once

#include <Eigen/Sparse>
#include <utility>

#include "oneleg/entropy.hpp"
#include "oneleg/grid.hpp"
#include "oneleg/scheme.hpp"

namespace oneleg {

// Parameters of the two-species cross-diffusion population system
//   u1_t - div((d1 + a1 u1 + u2) grad u1 + u1 grad u2) = 0
//   u2_t - div((d2 + a2 u2 + u1) grad u2 + u2 grad u1) = 0.
struct SktParams {
  double d1 = 1.0, d2 = 1.0;
  double a1 = 1.0, a2 = 1.0;

  // Condition 4 a1 a2 >= max(a1,a2) + 1 under which the continuous system
  // dissipates the u^alpha entropy; reported, never enforced.
  bool entropy_condition_met() const {
    return 4.0 * a1 * a2 >= std::max(a1, a2) + 1.0;
  }
};

enum class SktTest { A, B };

// Residual of the transformed one-leg step for the unknown v_new; layout is
// species-major (r[s*N + i]).  With sigma = sigma(E)v and w = sigma^{2/alpha},
//   r_{s,i} = (2/alpha) sigma_{s,i}^{2/alpha-1} (rho(E)v)_{s,i}
//           - (tau/h^2) dd[ d_s w_s + (a_s/2) w_s^2 + w_1 w_2 ]_i,
// dd the periodic 3-point second difference.  paper_literal switches the
// powers to the verbatim published finite-difference display (time weight
// sigma^{alpha/2-1}, potentials sigma^{alpha/2}, sigma^alpha,
// (sigma_1 sigma_2)^{alpha/2}); both modes coincide at alpha = 2.
Eigen::VectorXd skt_residual(const History& hist, const GridState& v_new,
                             const SchemeCoefficients& s, const SktParams& par, double alpha,
                             double tau, bool paper_literal = false);

// Analytic Jacobian of skt_residual with respect to v_new; cyclic
// tridiagonal blocks coupling both species.
Eigen::SparseMatrix<double> skt_jacobian(const History& hist, const GridState& v_new,
                                         const SchemeCoefficients& s, const SktParams& par,
                                         double alpha, double tau, bool paper_literal = false);

// Nodal initial densities u(x_i, 0) of the published experiments
//   u1 = 2 e^{-x} sin(2 pi x) + 10,  u2 = -4 e^{-x} sin(2 pi x) + 10,
// with Test A: d = (1,1), a = (0.01, 0.01) and Test B: all ones.
std::pair<GridState, SktParams> skt_initial_data(SktTest test, int n);

}  // namespace oneleg
