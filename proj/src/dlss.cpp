#include "oneleg/dlss.hpp"

#include <cmath>
#include <vector>

#include "oneleg/errors.hpp"

namespace oneleg {

namespace {

void check_inputs(const History& hist, const GridState& v_new, const SchemeCoefficients& s,
                  double alpha) {
  if (hist.length() != s.p) throw invalid_parameter("dlss: history length must equal p");
  require_same_grid(hist[0], v_new, "dlss");
  if (v_new.species != 1) throw invalid_parameter("dlss: expects a single species");
  if (!(alpha >= 1.0 && alpha <= 2.0)) throw invalid_parameter("dlss: alpha must lie in [1, 2]");
  if (v_new.n < 5) throw invalid_parameter("dlss: N must be >= 5 for the 5-point stencil");
}

}  // namespace

Eigen::VectorXd dlss_residual(const History& hist, const GridState& v_new,
                              const SchemeCoefficients& s, double alpha, double tau) {
  check_inputs(hist, v_new, s, alpha);
  GridState sig = apply_sigma(s, hist, v_new);
  if (min_value(sig) <= 0.0) throw positivity_error("dlss: sigma(E)v has a nonpositive node");
  const GridState rho = apply_rho(s, hist, v_new);

  const int n = v_new.n;
  const double h = v_new.h();
  const double q = 2.0 / alpha - 1.0;

  std::vector<double> w(static_cast<size_t>(n)), logw(static_cast<size_t>(n)),
      g(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    w[i] = std::pow(sig.at(0, i), 2.0 / alpha);
    logw[i] = std::log(w[i]);
  }
  for (int i = 0; i < n; ++i)
    g[i] = w[i] * (logw[(i + 1) % n] - 2.0 * logw[i] + logw[(i + n - 1) % n]);

  const double diff_scale = tau / (h * h * h * h);
  Eigen::VectorXd r(n);
  for (int i = 0; i < n; ++i) {
    const double dd = g[(i + 1) % n] - 2.0 * g[i] + g[(i + n - 1) % n];
    r(i) = (2.0 / alpha) * std::pow(sig.at(0, i), q) * rho.at(0, i) + diff_scale * dd;
  }
  return r;
}

Eigen::SparseMatrix<double> dlss_jacobian(const History& hist, const GridState& v_new,
                                          const SchemeCoefficients& s, double alpha, double tau) {
  check_inputs(hist, v_new, s, alpha);
  const int n = v_new.n;
  const double fd = 1e-6;

  // Column groups with pairwise cyclic distance >= 5 (band half-width 2,
  // so perturbed columns never influence a common residual row).
  std::vector<bool> done(static_cast<size_t>(n), false);
  int n_done = 0;

  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(static_cast<size_t>(5) * n);

  GridState vp = v_new, vm = v_new;
  std::vector<int> group;
  while (n_done < n) {
    group.clear();
    int first = -1, last = -1;
    for (int j = 0; j < n; ++j) {
      if (done[j]) continue;
      if (group.empty()) {
        group.push_back(j);
        first = last = j;
      } else if (j - last >= 5 && n - (j - first) >= 5) {
        group.push_back(j);
        last = j;
      }
    }
    vp.v = v_new.v;
    vm.v = v_new.v;
    std::vector<double> steps(group.size());
    for (size_t k = 0; k < group.size(); ++k) {
      const int j = group[k];
      const double step = fd * std::max(1.0, std::fabs(v_new.v[j]));
      steps[k] = step;
      vp.v[j] += step;
      vm.v[j] -= step;
    }
    const Eigen::VectorXd rp = dlss_residual(hist, vp, s, alpha, tau);
    const Eigen::VectorXd rm = dlss_residual(hist, vm, s, alpha, tau);
    for (size_t k = 0; k < group.size(); ++k) {
      const int j = group[k];
      for (int off = -2; off <= 2; ++off) {
        const int i = (j + off + n) % n;
        trip.emplace_back(i, j, (rp(i) - rm(i)) / (2.0 * steps[k]));
      }
      done[j] = true;
      ++n_done;
    }
  }

  Eigen::SparseMatrix<double> jac(n, n);
  jac.setFromTriplets(trip.begin(), trip.end());
  return jac;
}

GridState dlss_initial_data(int n) {
  if (n < 5) throw invalid_parameter("dlss_initial_data: N must be >= 5");
  GridState u(1, n);
  for (int i = 0; i < n; ++i) {
    const double x = static_cast<double>(i) / n;
    u.at(0, i) = 1.0 + 0.5 * std::sin(2.0 * M_PI * x);
  }
  return u;
}

}  // namespace oneleg
