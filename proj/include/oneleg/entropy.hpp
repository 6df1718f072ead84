#pragma once

#include "oneleg/gmatrix.hpp"
#include "oneleg/grid.hpp"
#include "oneleg/scheme.hpp"

namespace oneleg {

// Entropy density h(u) = u^alpha (summed over species).  The analysis
// covers 1 < alpha <= 2; alpha = 1 runs are experimental but accepted.
bool alpha_analysis_backed_skt(double alpha);
bool alpha_analysis_backed_dlss(double alpha);

// v = u^{alpha/2} nodewise.  Requires u >= 0.
GridState to_entropy_var(const GridState& u, double alpha);

// w = (sigma_v)^{2/alpha} nodewise.  Requires sigma_v > 0; a nonpositive
// node raises positivity_error so the Newton safeguard can damp.
GridState reconstruct_w(const GridState& sigma_v, double alpha);

// sigma(E) over the window (hist, v_new): sum_{j<p} beta_j hist[j] + beta_p v_new.
GridState apply_sigma(const SchemeCoefficients& s, const History& hist, const GridState& v_new);

// rho(E) over the window.  Evaluated in incremental form
//   sum_{j<p} alpha_j (hist[j] - v_new) + rho(1) v_new
// which is algebraically identical but keeps full precision near
// constant-in-time windows where the plain sum cancels catastrophically.
GridState apply_rho(const SchemeCoefficients& s, const History& hist, const GridState& v_new);

// H[V_k] = 1/2 sum_{i,j} G_ij <v_{k+i}, v_{k+j}>  (grid-weighted).
double discrete_entropy(const GMatrix& g, const History& hist);

double relative_entropy(double h_k, double h_star);

// Entropy production of the cross-diffusion system,
//   P = (2/alpha^2)(alpha-1) * sum_i h [ d1 (D+ w1^{a/2})_i^2 / h^2 + d2 (...) ],
// with forward differences and periodic wrap.  Diagnostic only.
double skt_entropy_production(const GridState& w, double alpha, double d1, double d2);

// Raw fourth-order production integral of the quantum diffusion equation,
//   int (Delta w^{alpha/2})^2 dx,
// via the 3-point second difference (the model constant kappa_alpha has no
// known numeric value, so it is not applied).
double dlss_entropy_production(const GridState& w, double alpha);

}  // namespace oneleg
