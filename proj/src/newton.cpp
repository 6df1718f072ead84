#include "oneleg/newton.hpp"

#include <Eigen/SparseLU>
#include <string>

#include "oneleg/errors.hpp"

namespace oneleg {

namespace {

void check_opts(const NewtonOptions& o) {
  if (!(o.tol_residual > 0.0) || o.max_iters < 1 || o.max_halvings < 1)
    throw invalid_parameter("NewtonOptions: all fields must be positive");
}

}  // namespace

std::pair<GridState, NewtonReport> newton_solve(const ResidualFn& residual,
                                                const JacobianFn& jacobian, GridState guess,
                                                const NewtonOptions& opts) {
  check_opts(opts);
  GridState v = std::move(guess);
  Eigen::VectorXd r = residual(v);  // positivity at the guess is a precondition
  double rnorm = r.lpNorm<Eigen::Infinity>();

  NewtonReport rep;
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  GridState trial = v;

  while (rnorm > opts.tol_residual) {
    if (rep.iters >= opts.max_iters)
      throw nonconvergence_error("newton_solve: no convergence after " +
                                     std::to_string(opts.max_iters) +
                                     " iterations (residual " + std::to_string(rnorm) + ")",
                                 rnorm);
    Eigen::SparseMatrix<double> jac = jacobian(v);
    lu.compute(jac);
    if (lu.info() != Eigen::Success) throw jacobian_error("newton_solve: singular Jacobian");
    const Eigen::VectorXd dv = lu.solve(-r);
    if (lu.info() != Eigen::Success) throw jacobian_error("newton_solve: linear solve failed");

    double lambda = 1.0;
    bool accepted = false;
    for (int halving = 0; halving <= opts.max_halvings; ++halving) {
      for (int k = 0; k < v.size(); ++k) trial.v[k] = v.v[k] + lambda * dv(k);
      try {
        Eigen::VectorXd rt = residual(trial);
        const double rtnorm = rt.lpNorm<Eigen::Infinity>();
        if (rtnorm <= rnorm) {
          v.v = trial.v;
          r = std::move(rt);
          rnorm = rtnorm;
          accepted = true;
          break;
        }
      } catch (const positivity_error&) {
        // damp further
      }
      lambda *= 0.5;
    }
    if (!accepted)
      throw positivity_trap_error("newton_solve: step rejected after " +
                                  std::to_string(opts.max_halvings) + " halvings");
    ++rep.iters;
  }
  rep.residual_norm = rnorm;
  return {std::move(v), rep};
}

}  // namespace oneleg
