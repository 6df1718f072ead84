#include "oneleg/skt.hpp"

#include <cmath>
#include <vector>

#include "oneleg/errors.hpp"

namespace oneleg {

namespace {

void check_inputs(const History& hist, const GridState& v_new, const SchemeCoefficients& s,
                  const SktParams& par, double alpha) {
  if (hist.length() != s.p) throw invalid_parameter("skt: history length must equal p");
  require_same_grid(hist[0], v_new, "skt");
  if (v_new.species != 2) throw invalid_parameter("skt: expects 2 species");
  if (!(par.d1 > 0.0 && par.d2 > 0.0 && par.a1 > 0.0 && par.a2 > 0.0))
    throw invalid_parameter("skt: diffusion parameters must be positive");
  if (!(alpha >= 1.0 && alpha <= 2.0)) throw invalid_parameter("skt: alpha must lie in [1, 2]");
}

GridState positive_sigma(const SchemeCoefficients& s, const History& hist, const GridState& v_new) {
  GridState sig = apply_sigma(s, hist, v_new);
  if (min_value(sig) <= 0.0) throw positivity_error("skt: sigma(E)v has a nonpositive node");
  return sig;
}

}  // namespace

Eigen::VectorXd skt_residual(const History& hist, const GridState& v_new,
                             const SchemeCoefficients& s, const SktParams& par, double alpha,
                             double tau, bool paper_literal) {
  check_inputs(hist, v_new, s, par, alpha);
  const GridState sig = positive_sigma(s, hist, v_new);
  const GridState rho = apply_rho(s, hist, v_new);

  const int n = v_new.n;
  const double h = v_new.h();
  const double diff_scale = tau / (h * h);
  const double d[2] = {par.d1, par.d2};
  const double a[2] = {par.a1, par.a2};

  // time_w = weight of rho(E)v; phi = discretized potential per species
  std::vector<double> time_w(2 * static_cast<size_t>(n)), phi(2 * static_cast<size_t>(n));
  if (!paper_literal) {
    const double q = 2.0 / alpha - 1.0;
    for (int i = 0; i < n; ++i) {
      const double w0 = std::pow(sig.at(0, i), 2.0 / alpha);
      const double w1 = std::pow(sig.at(1, i), 2.0 / alpha);
      time_w[i] = std::pow(sig.at(0, i), q);
      time_w[n + i] = std::pow(sig.at(1, i), q);
      phi[i] = d[0] * w0 + 0.5 * a[0] * w0 * w0 + w0 * w1;
      phi[n + i] = d[1] * w1 + 0.5 * a[1] * w1 * w1 + w0 * w1;
    }
  } else {
    for (int i = 0; i < n; ++i) {
      const double s0 = sig.at(0, i), s1 = sig.at(1, i);
      time_w[i] = std::pow(s0, alpha / 2.0 - 1.0);
      time_w[n + i] = std::pow(s1, alpha / 2.0 - 1.0);
      const double cross = std::pow(s0 * s1, alpha / 2.0);
      phi[i] = d[0] * std::pow(s0, alpha / 2.0) + 0.5 * a[0] * std::pow(s0, alpha) + cross;
      phi[n + i] = d[1] * std::pow(s1, alpha / 2.0) + 0.5 * a[1] * std::pow(s1, alpha) + cross;
    }
  }

  Eigen::VectorXd r(2 * n);
  for (int sp = 0; sp < 2; ++sp)
    for (int i = 0; i < n; ++i) {
      const int k = sp * n + i;
      const double dd = phi[sp * n + (i + 1) % n] - 2.0 * phi[k] + phi[sp * n + (i + n - 1) % n];
      r(k) = (2.0 / alpha) * time_w[k] * rho.at(sp, i) - diff_scale * dd;
    }
  return r;
}

Eigen::SparseMatrix<double> skt_jacobian(const History& hist, const GridState& v_new,
                                         const SchemeCoefficients& s, const SktParams& par,
                                         double alpha, double tau, bool paper_literal) {
  check_inputs(hist, v_new, s, par, alpha);
  const GridState sig = positive_sigma(s, hist, v_new);
  const GridState rho = apply_rho(s, hist, v_new);

  const int n = v_new.n;
  const double h = v_new.h();
  const double diff_scale = tau / (h * h);
  const double d[2] = {par.d1, par.d2};
  const double a[2] = {par.a1, par.a2};
  const double bp = s.beta(s.p);
  const double ap = s.alpha(s.p);

  // Nodewise derivatives: tdiag = d(time term)/dv at the same node,
  // dphi[s][s'] = d(phi_s at node)/dv_{s'} at that node.
  std::vector<double> tdiag(2 * static_cast<size_t>(n));
  std::vector<double> dphi00(static_cast<size_t>(n)), dphi01(static_cast<size_t>(n)),
      dphi10(static_cast<size_t>(n)), dphi11(static_cast<size_t>(n));

  for (int i = 0; i < n; ++i) {
    const double s0 = sig.at(0, i), s1 = sig.at(1, i);
    if (!paper_literal) {
      const double q = 2.0 / alpha - 1.0;
      const double w0 = std::pow(s0, 2.0 / alpha), w1 = std::pow(s1, 2.0 / alpha);
      const double dw0 = (2.0 / alpha) * std::pow(s0, q) * bp;
      const double dw1 = (2.0 / alpha) * std::pow(s1, q) * bp;
      tdiag[i] = (2.0 / alpha) * (q * std::pow(s0, q - 1.0) * bp * rho.at(0, i) + std::pow(s0, q) * ap);
      tdiag[n + i] =
          (2.0 / alpha) * (q * std::pow(s1, q - 1.0) * bp * rho.at(1, i) + std::pow(s1, q) * ap);
      dphi00[i] = (d[0] + a[0] * w0 + w1) * dw0;
      dphi01[i] = w0 * dw1;
      dphi10[i] = w1 * dw0;
      dphi11[i] = (d[1] + a[1] * w1 + w0) * dw1;
    } else {
      const double e = alpha / 2.0;
      tdiag[i] =
          (2.0 / alpha) * ((e - 1.0) * std::pow(s0, e - 2.0) * bp * rho.at(0, i) + std::pow(s0, e - 1.0) * ap);
      tdiag[n + i] =
          (2.0 / alpha) * ((e - 1.0) * std::pow(s1, e - 2.0) * bp * rho.at(1, i) + std::pow(s1, e - 1.0) * ap);
      const double dcross0 = e * std::pow(s0 * s1, e - 1.0) * s1 * bp;
      const double dcross1 = e * std::pow(s0 * s1, e - 1.0) * s0 * bp;
      dphi00[i] = d[0] * e * std::pow(s0, e - 1.0) * bp + 0.5 * a[0] * alpha * std::pow(s0, alpha - 1.0) * bp +
                  dcross0;
      dphi01[i] = dcross1;
      dphi10[i] = dcross0;
      dphi11[i] = d[1] * e * std::pow(s1, e - 1.0) * bp + 0.5 * a[1] * alpha * std::pow(s1, alpha - 1.0) * bp +
                  dcross1;
    }
  }

  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(static_cast<size_t>(14) * n);
  auto add_spatial = [&](int sp_row, int i, int sp_col, int j, double dphi_j) {
    // contribution of phi_{sp_row}(j) entering dd[phi]_i
    const double stencil = (j == i) ? -2.0 : 1.0;
    trip.emplace_back(sp_row * n + i, sp_col * n + j, -diff_scale * stencil * dphi_j);
  };
  const std::vector<double>* dphi[2][2] = {{&dphi00, &dphi01}, {&dphi10, &dphi11}};
  for (int sp = 0; sp < 2; ++sp)
    for (int i = 0; i < n; ++i) {
      trip.emplace_back(sp * n + i, sp * n + i, tdiag[sp * n + i]);
      for (int off = -1; off <= 1; ++off) {
        const int j = (i + off + n) % n;
        for (int spc = 0; spc < 2; ++spc) add_spatial(sp, i, spc, j, (*dphi[sp][spc])[j]);
      }
    }

  Eigen::SparseMatrix<double> jac(2 * n, 2 * n);
  jac.setFromTriplets(trip.begin(), trip.end());
  return jac;
}

std::pair<GridState, SktParams> skt_initial_data(SktTest test, int n) {
  if (n < 4) throw invalid_parameter("skt_initial_data: N must be >= 4");
  GridState u(2, n);
  for (int i = 0; i < n; ++i) {
    const double x = static_cast<double>(i) / n;
    const double bump = std::exp(-x) * std::sin(2.0 * M_PI * x);
    u.at(0, i) = 2.0 * bump + 10.0;
    u.at(1, i) = -4.0 * bump + 10.0;
  }
  SktParams par;
  if (test == SktTest::A) {
    par = {1.0, 1.0, 0.01, 0.01};
  } else {
    par = {1.0, 1.0, 1.0, 1.0};
  }
  return {u, par};
}

}  // namespace oneleg
