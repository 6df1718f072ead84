#include "oneleg/gmatrix.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

#include "oneleg/errors.hpp"

namespace oneleg {

namespace {

void require_spd(const GMatrix& g, const char* where) {
  if (g.p < 1 || g.m.rows() != g.p || g.m.cols() != g.p)
    throw invalid_parameter(std::string(where) + ": G has wrong dimensions");
  if (g.m != g.m.transpose())
    throw invalid_parameter(std::string(where) + ": G must be symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g.m);
  if (es.eigenvalues().minCoeff() <= 0.0)
    throw invalid_parameter(std::string(where) + ": G must be positive definite");
}

// Symmetric matrix of q(v) = (rho(E)v)(sigma(E)v) - 1/2 V1'GV1 + 1/2 V0'GV0.
Eigen::MatrixXd remainder_form(const SchemeCoefficients& s, const Eigen::MatrixXd& g) {
  const int p = s.p;
  Eigen::MatrixXd q = Eigen::MatrixXd::Zero(p + 1, p + 1);
  for (int i = 0; i <= p; ++i)
    for (int j = 0; j <= p; ++j)
      q(i, j) += 0.5 * (s.alpha(i) * s.beta(j) + s.alpha(j) * s.beta(i));
  // V1 = (v_1..v_p), V0 = (v_0..v_{p-1})
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j) {
      q(i + 1, j + 1) -= 0.5 * g(i, j);
      q(i, j) += 0.5 * g(i, j);
    }
  return q;
}

}  // namespace

GMatrix identity_g(int p) { return GMatrix(p, Eigen::MatrixXd::Identity(p, p)); }

GMatrix family_g_matrix(double alpha2, double beta2) {
  if (!(beta2 > alpha2 / 2.0))
    throw invalid_parameter("family_g_matrix: requires beta2 > alpha2/2");
  Eigen::MatrixXd m(2, 2);
  m(0, 0) = (2.0 * alpha2 - 5.0) * alpha2 + 2.0 * beta2 + 2.0;
  m(0, 1) = (-2.0 * alpha2 + 3.0) * alpha2 - 2.0 * beta2;
  m(1, 0) = m(0, 1);
  m(1, 1) = (2.0 * alpha2 - 1.0) * alpha2 + 2.0 * beta2;
  return GMatrix(2, 0.25 * m);
}

GCertification verify_g_stability(const SchemeCoefficients& s, const GMatrix& g) {
  if (g.p != s.p) throw invalid_parameter("verify_g_stability: G dimension does not match scheme");
  require_spd(g, "verify_g_stability");

  GCertification best;
  for (double scale : {1.0, 2.0}) {
    Eigen::MatrixXd q = remainder_form(s, scale * g.m);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(q);
    const double min_eig = es.eigenvalues().minCoeff();
    const double entry_scale = std::max(q.cwiseAbs().maxCoeff(), 1.0);
    GCertification cert;
    cert.certified = min_eig >= -1e-12 * entry_scale;
    cert.remainder_min_eig = min_eig;
    cert.scale_used = scale;
    cert.remainder = std::move(q);
    if (cert.certified) return cert;
    if (scale == 1.0) best = std::move(cert);
  }
  return best;  // not certified at either scale; report the scale-1 attempt
}

GMatrix certified_g_matrix(const SchemeCoefficients& s) {
  const GMatrix candidate = (s.p == 1) ? identity_g(1) : family_g_matrix(s.alpha(2), s.beta(2));
  const GCertification cert = verify_g_stability(s, candidate);
  if (!cert.certified)
    throw invalid_parameter(s.name + ": candidate G-matrix failed stability certification");
  return GMatrix(s.p, cert.scale_used * candidate.m);
}

double g_norm_sq(const GMatrix& g, const History& window) {
  if (window.length() != g.p) throw invalid_parameter("g_norm_sq: window length must equal p");
  double acc = 0.0;
  for (int i = 0; i < g.p; ++i)
    for (int j = 0; j < g.p; ++j) acc += g.m(i, j) * grid_dot(window[i], window[j]);
  return acc;
}

}  // namespace oneleg
