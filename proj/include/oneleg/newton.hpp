#pragma once

#include <Eigen/Sparse>
#include <functional>
#include <utility>

#include "oneleg/grid.hpp"

namespace oneleg {

struct NewtonOptions {
  double tol_residual = 1e-10;  // max-norm stopping tolerance
  int max_iters = 50;
  int max_halvings = 30;
};

struct NewtonReport {
  int iters = 0;
  double residual_norm = 0.0;
};

using ResidualFn = std::function<Eigen::VectorXd(const GridState&)>;
using JacobianFn = std::function<Eigen::SparseMatrix<double>(const GridState&)>;

// Damped Newton iteration on the flat unknown vector of a GridState.
// Residual evaluations signal positivity violations by throwing
// positivity_error; each step is halved until the trial state evaluates
// cleanly and the residual max-norm does not increase.
//
// Throws nonconvergence_error (max_iters), positivity_trap_error
// (max_halvings) or jacobian_error (singular linear solve).
std::pair<GridState, NewtonReport> newton_solve(const ResidualFn& residual,
                                                const JacobianFn& jacobian, GridState guess,
                                                const NewtonOptions& opts = {});

}  // namespace oneleg
