#include "oneleg/integrator.hpp"

#include <algorithm>
#include <cmath>

#include "oneleg/errors.hpp"
#include "oneleg/problem.hpp"

namespace oneleg {

namespace {

// | sum_i sigma_i^{2/alpha-1} (rho(E)v)_i h | per species: testing the
// scheme with phi = 1 makes exactly this weighted sum vanish.
std::array<double, 2> weighted_mass_residual(const GridState& sig, const GridState& rho,
                                             double alpha) {
  std::array<double, 2> out{0.0, 0.0};
  const double q = 2.0 / alpha - 1.0;
  for (int s = 0; s < sig.species; ++s) {
    double acc = 0.0;
    for (int i = 0; i < sig.n; ++i) acc += std::pow(sig.at(s, i), q) * rho.at(s, i);
    out[static_cast<size_t>(s)] = acc * sig.h();
  }
  return out;
}

StepDiagnostics diagnostics_at(const DiffusionModel& model, const History& hist,
                               const GridState& v_new, const SchemeCoefficients& s,
                               const GMatrix& g, double alpha, const NewtonReport& rep) {
  StepDiagnostics d;
  d.newton_iters = rep.iters;
  d.residual_norm = rep.residual_norm;
  const GridState sig = apply_sigma(s, hist, v_new);
  const GridState rho = apply_rho(s, hist, v_new);
  d.min_sigma_v = min_value(sig);
  const GridState w = reconstruct_w(sig, alpha);
  d.min_w = min_value(w);
  d.entropy_production = model.entropy_production(w, alpha);
  d.mass_residual = weighted_mass_residual(sig, rho, alpha);

  History trailing;
  for (int j = 1; j < s.p; ++j) trailing.states.push_back(hist[j]);
  trailing.states.push_back(v_new);
  d.entropy = discrete_entropy(g, trailing);
  return d;
}

}  // namespace

GridState euler_startup(const DiffusionModel& model, const GridState& v0, double alpha, double tau,
                        const NewtonOptions& opts) {
  const SchemeCoefficients euler = implicit_euler();
  History hist({v0});
  auto res = [&](const GridState& v) { return model.residual(hist, v, euler, alpha, tau); };
  auto jac = [&](const GridState& v) { return model.jacobian(hist, v, euler, alpha, tau); };
  return newton_solve(res, jac, v0, opts).first;
}

std::pair<GridState, StepDiagnostics> step(const DiffusionModel& model, const History& hist,
                                           const SchemeCoefficients& s, const GMatrix& g,
                                           double alpha, double tau, const NewtonOptions& opts) {
  if (hist.length() != s.p) throw invalid_parameter("step: history length must equal p");

  GridState guess = hist.newest();
  if (s.p == 2) {
    GridState extrap(guess.species, guess.n);
    for (int k = 0; k < guess.size(); ++k) extrap.v[k] = 2.0 * hist[1].v[k] - hist[0].v[k];
    if (min_value(apply_sigma(s, hist, extrap)) > 0.0) guess = std::move(extrap);
  }

  auto res = [&](const GridState& v) { return model.residual(hist, v, s, alpha, tau); };
  auto jac = [&](const GridState& v) { return model.jacobian(hist, v, s, alpha, tau); };
  auto [v, rep] = newton_solve(res, jac, std::move(guess), opts);
  StepDiagnostics d = diagnostics_at(model, hist, v, s, g, alpha, rep);
  return {std::move(v), d};
}

Trajectory run(const ProblemSpec& spec) {
  validate_spec(spec);
  const SchemeCoefficients scheme = build_scheme(spec.scheme);
  const GMatrix g = certified_g_matrix(scheme);
  const std::unique_ptr<DiffusionModel> model = build_model(spec);
  const long total = step_count(spec);

  const GridState u0 = model->initial_densities(spec.n);
  const GridState v0 = to_entropy_var(u0, spec.alpha);

  Trajectory traj;
  auto snapshot = [&](long k, const GridState& v) {
    if (spec.snapshot_every > 0 && k % spec.snapshot_every == 0)
      traj.snapshots.emplace_back(k, v);
  };
  snapshot(0, v0);

  // Assemble the first full window V_0.
  History window;
  NewtonReport startup_rep;
  if (scheme.p == 2 && total >= 1) {
    auto res = [&](const GridState& v) {
      History h0({v0});
      return model->residual(h0, v, implicit_euler(), spec.alpha, spec.tau);
    };
    auto jac = [&](const GridState& v) {
      History h0({v0});
      return model->jacobian(h0, v, implicit_euler(), spec.alpha, spec.tau);
    };
    auto [v1, rep] = newton_solve(res, jac, v0, spec.newton);
    startup_rep = rep;
    snapshot(1, v1);
    window = History({v0, std::move(v1)});
  } else {
    std::vector<GridState> w0(static_cast<size_t>(scheme.p), v0);
    window = History(std::move(w0));
  }

  StepRecord first;
  first.step = 0;
  first.time = 0.0;
  first.entropy = discrete_entropy(g, window);
  first.production = model->entropy_production(u0, spec.alpha);
  first.min_w = min_value(u0);
  first.newton_iters = startup_rep.iters;
  first.residual_norm = startup_rep.residual_norm;
  traj.records.push_back(first);

  // One-leg steps produce states v_{k+p} for windows V_k, k = 1, 2, ...
  const long n_oneleg = (scheme.p == 2) ? std::max<long>(total - 1, 0) : total;
  for (long k = 1; k <= n_oneleg; ++k) {
    auto [v, d] = step(*model, window, scheme, g, spec.alpha, spec.tau, spec.newton);
    window.advance(std::move(v));
    snapshot(k + scheme.p - 1, window.newest());
    StepRecord rec;
    rec.step = k;
    rec.time = static_cast<double>(k) * spec.tau;
    rec.entropy = d.entropy;
    rec.production = d.entropy_production;
    rec.min_w = d.min_w;
    rec.mass_residual = std::max(std::fabs(d.mass_residual[0]), std::fabs(d.mass_residual[1]));
    rec.newton_iters = d.newton_iters;
    rec.residual_norm = d.residual_norm;
    traj.records.push_back(rec);
  }

  traj.final_window = window;
  traj.final_state = window.newest();
  traj.entropy_final = traj.records.back().entropy;
  traj.entropy_min = traj.records.front().entropy;
  for (const StepRecord& r : traj.records) traj.entropy_min = std::min(traj.entropy_min, r.entropy);
  return traj;
}

}  // namespace oneleg
