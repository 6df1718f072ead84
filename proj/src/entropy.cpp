#include "oneleg/entropy.hpp"

#include <cmath>

#include "oneleg/errors.hpp"

namespace oneleg {

bool alpha_analysis_backed_skt(double alpha) { return alpha > 1.0 && alpha <= 2.0; }

bool alpha_analysis_backed_dlss(double alpha) {
  // 1 < alpha < (sqrt(d)+1)^2/(d+2) = 4/3 in one dimension.
  return alpha > 1.0 && alpha < 4.0 / 3.0;
}

GridState to_entropy_var(const GridState& u, double alpha) {
  GridState v = u;
  const double e = alpha / 2.0;
  for (double& x : v.v) {
    if (x < 0.0) throw invalid_parameter("to_entropy_var: negative density");
    x = std::pow(x, e);
  }
  return v;
}

GridState reconstruct_w(const GridState& sigma_v, double alpha) {
  GridState w = sigma_v;
  const double e = 2.0 / alpha;
  for (double& x : w.v) {
    if (!(x > 0.0)) throw positivity_error("reconstruct_w: sigma(E)v has a nonpositive node");
    x = std::pow(x, e);
  }
  return w;
}

GridState apply_sigma(const SchemeCoefficients& s, const History& hist, const GridState& v_new) {
  if (hist.length() != s.p) throw invalid_parameter("apply_sigma: history length must equal p");
  require_same_grid(hist[0], v_new, "apply_sigma");
  GridState out(v_new.species, v_new.n);
  for (size_t k = 0; k < out.v.size(); ++k) {
    double acc = s.beta(s.p) * v_new.v[k];
    for (int j = 0; j < s.p; ++j) acc += s.beta(j) * hist[j].v[k];
    out.v[k] = acc;
  }
  return out;
}

GridState apply_rho(const SchemeCoefficients& s, const History& hist, const GridState& v_new) {
  if (hist.length() != s.p) throw invalid_parameter("apply_rho: history length must equal p");
  require_same_grid(hist[0], v_new, "apply_rho");
  double rho1 = 0.0;
  for (int j = 0; j <= s.p; ++j) rho1 += s.alpha(j);
  GridState out(v_new.species, v_new.n);
  for (size_t k = 0; k < out.v.size(); ++k) {
    double acc = rho1 * v_new.v[k];
    for (int j = 0; j < s.p; ++j) acc += s.alpha(j) * (hist[j].v[k] - v_new.v[k]);
    out.v[k] = acc;
  }
  return out;
}

double discrete_entropy(const GMatrix& g, const History& hist) {
  return 0.5 * g_norm_sq(g, hist);
}

double relative_entropy(double h_k, double h_star) { return h_k - h_star; }

double skt_entropy_production(const GridState& w, double alpha, double d1, double d2) {
  if (min_value(w) <= 0.0) throw invalid_parameter("skt_entropy_production: w must be positive");
  const int n = w.n;
  const double h = w.h();
  const double d[2] = {d1, d2};
  double acc = 0.0;
  for (int s = 0; s < w.species; ++s) {
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
      const double a = std::pow(w.at(s, i), alpha / 2.0);
      const double b = std::pow(w.at(s, (i + 1) % n), alpha / 2.0);
      sum += (b - a) * (b - a);
    }
    acc += d[s] * sum / h;  // h * sum (D+ f)^2 / h^2
  }
  return (2.0 / (alpha * alpha)) * (alpha - 1.0) * acc;
}

double dlss_entropy_production(const GridState& w, double alpha) {
  if (min_value(w) <= 0.0) throw invalid_parameter("dlss_entropy_production: w must be positive");
  const int n = w.n;
  const double h = w.h();
  std::vector<double> f(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) f[static_cast<size_t>(i)] = std::pow(w.at(0, i), alpha / 2.0);
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    const double lap = (f[(i + 1) % n] - 2.0 * f[i] + f[(i + n - 1) % n]) / (h * h);
    acc += lap * lap;
  }
  return acc * h;
}

}  // namespace oneleg
