#include "oneleg/scheme.hpp"

#include <cmath>
#include <cstdio>
#include <utility>

#include "oneleg/errors.hpp"

namespace oneleg {

namespace {

void validate(const SchemeCoefficients& s) {
  if (s.p != 1 && s.p != 2) throw invalid_parameter(s.name + ": step count p must be 1 or 2");
  if (s.alphas.size() != static_cast<size_t>(s.p + 1) || s.betas.size() != static_cast<size_t>(s.p + 1))
    throw invalid_parameter(s.name + ": coefficient vectors must have p+1 entries");
  if (!(s.alphas.back() > 0.0)) throw invalid_parameter(s.name + ": leading alpha_p must be positive");
  if (!(s.betas.back() > 0.0)) throw invalid_parameter(s.name + ": leading beta_p must be positive");
  double sigma1 = 0.0;
  for (double b : s.betas) sigma1 += b;
  if (std::fabs(sigma1 - 1.0) > 1e-13)
    throw invalid_parameter(s.name + ": sigma(1) must equal 1 (normalization)");
}

std::string fmt_param(const char* pattern, double a, double b = 0.0) {
  char buf[96];
  std::snprintf(buf, sizeof buf, pattern, a, b);
  return buf;
}

}  // namespace

SchemeCoefficients bdf2() {
  SchemeCoefficients s{2, {0.5, -2.0, 1.5}, {0.0, 0.0, 1.0}, "bdf2"};
  validate(s);
  return s;
}

SchemeCoefficients implicit_midpoint() {
  SchemeCoefficients s{1, {-1.0, 1.0}, {0.5, 0.5}, "midpoint"};
  validate(s);
  return s;
}

SchemeCoefficients implicit_euler() {
  SchemeCoefficients s{1, {-1.0, 1.0}, {0.0, 1.0}, "euler"};
  validate(s);
  return s;
}

SchemeCoefficients gamma_method(double gamma) {
  if (!(gamma > 0.0 && gamma <= 1.0))
    throw invalid_parameter(fmt_param("gamma_method: gamma = %.17g not in (0, 1]", gamma));
  const double g1 = gamma + 1.0;
  SchemeCoefficients s;
  s.p = 2;
  s.alphas = {-gamma / g1, (gamma - 1.0) / g1, 1.0 / g1};
  s.betas = {gamma * (gamma + 3.0) / (2.0 * g1 * g1), (gamma - 1.0) * (gamma - 1.0) / (2.0 * g1 * g1),
             (3.0 * gamma + 1.0) / (2.0 * g1 * g1)};
  s.name = fmt_param("gamma(%.17g)", gamma);
  validate(s);
  return s;
}

SchemeCoefficients family_scheme(double alpha2, double beta2) {
  if (!(beta2 > alpha2 / 2.0))
    throw invalid_parameter(
        fmt_param("family_scheme: beta2 = %.17g <= alpha2/2 = %.17g violates G-stability", beta2, alpha2 / 2.0));
  SchemeCoefficients s;
  s.p = 2;
  s.alphas = {alpha2 - 1.0, 1.0 - 2.0 * alpha2, alpha2};
  s.betas = {0.5 - alpha2 + beta2, 0.5 + alpha2 - 2.0 * beta2, beta2};
  s.name = fmt_param("family(%.17g,%.17g)", alpha2, beta2);
  validate(s);
  return s;
}

SchemeCoefficients make_scheme(std::vector<double> alphas, std::vector<double> betas, std::string name) {
  SchemeCoefficients s;
  s.p = static_cast<int>(alphas.size()) - 1;
  s.alphas = std::move(alphas);
  s.betas = std::move(betas);
  s.name = std::move(name);
  validate(s);
  return s;
}

OrderReport check_order(const SchemeCoefficients& s) {
  double rho1 = 0.0, drho1 = 0.0, ddrho1 = 0.0, sigma1 = 0.0, dsigma1 = 0.0;
  for (int j = 0; j <= s.p; ++j) {
    rho1 += s.alpha(j);
    drho1 += j * s.alpha(j);
    ddrho1 += j * (j - 1) * s.alpha(j);
    sigma1 += s.beta(j);
    dsigma1 += j * s.beta(j);
  }
  OrderReport r;
  r.residuals = {rho1, drho1 - 1.0, sigma1 - 1.0, drho1 + ddrho1 - 2.0 * dsigma1};
  const double tol = 1e-12;
  r.consistent = std::fabs(r.residuals[0]) < tol && std::fabs(r.residuals[1]) < tol &&
                 std::fabs(r.residuals[2]) < tol;
  r.second_order = r.consistent && std::fabs(r.residuals[3]) < tol;
  return r;
}

}  // namespace oneleg
