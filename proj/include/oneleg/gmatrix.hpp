#pragma once

#include <Eigen/Dense>

#include "oneleg/grid.hpp"
#include "oneleg/scheme.hpp"

namespace oneleg {

// Symmetric positive definite p x p matrix defining the G-norm
//   ||U_k||_G^2 = sum_{i,j} G_ij (u_{k+i}, u_{k+j}).
struct GMatrix {
  int p = 0;
  Eigen::MatrixXd m;  // p x p, symmetric

  GMatrix() = default;
  GMatrix(int steps, Eigen::MatrixXd entries) : p(steps), m(std::move(entries)) {}
};

GMatrix identity_g(int p);

// Closed-form candidate G for the two-parameter family (requires
// beta2 > alpha2/2):
//   G = (1/4) [ (2a2-5)a2+2b2+2   (-2a2+3)a2-2b2 ]
//             [ (-2a2+3)a2-2b2    (2a2-1)a2+2b2  ]
// The prefactor convention in the literature is ambiguous by a factor 2;
// pass the result through verify_g_stability, which certifies the matrix
// as-is or rescaled by 2.
GMatrix family_g_matrix(double alpha2, double beta2);

// Certification of the stability inequality
//   (rho(E)v, sigma(E)v) >= 1/2 ||V_{k+1}||_G^2 - 1/2 ||V_k||_G^2.
// The quadratic form
//   q(v) = (rho(E)v)(sigma(E)v) - 1/2 V1' G V1 + 1/2 V0' G V0
// over v in R^{p+1} is assembled as a symmetric matrix and accepted iff its
// minimum eigenvalue is >= -1e-12 relative to the entry scale.  If that
// fails, the test is repeated with 2G.
struct GCertification {
  bool certified = false;
  double remainder_min_eig = 0.0;
  double scale_used = 1.0;      // scale applied to the candidate G
  Eigen::MatrixXd remainder;    // (p+1) x (p+1) matrix of q at scale_used
};

GCertification verify_g_stability(const SchemeCoefficients& s, const GMatrix& g);

// The scheme's certified G-matrix in the 1/2-increment convention above:
// the fixed 1x1 identity for p = 1, otherwise the closed-form family candidate built
// from (alpha_p, beta_p) rescaled by the certification outcome.
GMatrix certified_g_matrix(const SchemeCoefficients& s);

// sum_{i,j} G_ij <v_{k+i}, v_{k+j}> with the grid-weighted inner product;
// window must hold exactly p states.
double g_norm_sq(const GMatrix& g, const History& window);

}  // namespace oneleg
