#pragma once

#include <Eigen/Sparse>

#include "oneleg/entropy.hpp"
#include "oneleg/grid.hpp"
#include "oneleg/scheme.hpp"

namespace oneleg {

// Residual of the transformed one-leg step for the fourth-order quantum
// diffusion equation u_t + dxx(u dxx log u) = 0 on the periodic unit grid.
// With sigma = sigma(E)v and w = sigma^{2/alpha},
//   r_i = (2/alpha) sigma_i^{2/alpha-1} (rho(E)v)_i
//       + (tau/h^4) dd[ w dd(log w) ]_i,
// dd the periodic 3-point second difference (applied inside and outside),
// a cyclic 5-point nonlinear stencil.
Eigen::VectorXd dlss_residual(const History& hist, const GridState& v_new,
                              const SchemeCoefficients& s, double alpha, double tau);

// Jacobian by central finite differences of the residual, probed in column
// groups of pairwise cyclic distance >= 5 so one perturbation resolves many
// columns without aliasing across the pentadiagonal band.
Eigen::SparseMatrix<double> dlss_jacobian(const History& hist, const GridState& v_new,
                                          const SchemeCoefficients& s, double alpha, double tau);

// u(x, 0) = 1 + 0.5 sin(2 pi x).
GridState dlss_initial_data(int n);

}  // namespace oneleg
