#include "oneleg/study.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>
#include <map>

#include "oneleg/errors.hpp"
#include "oneleg/newton.hpp"

namespace oneleg {

namespace {

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// Lean simulation loop capturing the states v_k at the requested time
// indices (k = 0 is the initial state).  Same guess and solver policy as
// run(), so captured states agree with it bitwise.
std::map<long, GridState> simulate_states(const ProblemSpec& spec, std::vector<long> capture) {
  validate_spec(spec);
  std::sort(capture.begin(), capture.end());
  capture.erase(std::unique(capture.begin(), capture.end()), capture.end());
  const long total = capture.empty() ? 0 : capture.back();

  const SchemeCoefficients scheme = build_scheme(spec.scheme);
  const std::unique_ptr<DiffusionModel> model = build_model(spec);
  const GridState v0 = to_entropy_var(model->initial_densities(spec.n), spec.alpha);

  std::map<long, GridState> out;
  auto grab = [&](long k, const GridState& v) {
    if (std::binary_search(capture.begin(), capture.end(), k)) out.emplace(k, v);
  };
  grab(0, v0);
  if (total == 0) return out;

  History window;
  if (scheme.p == 2) {
    GridState v1 = euler_startup(*model, v0, spec.alpha, spec.tau, spec.newton);
    grab(1, v1);
    window = History({v0, std::move(v1)});
  } else {
    window = History({v0});
  }

  auto res_jac_step = [&](const History& hist) {
    GridState guess = hist.newest();
    if (scheme.p == 2) {
      GridState extrap(guess.species, guess.n);
      for (int k = 0; k < guess.size(); ++k) extrap.v[k] = 2.0 * hist[1].v[k] - hist[0].v[k];
      if (min_value(apply_sigma(scheme, hist, extrap)) > 0.0) guess = std::move(extrap);
    }
    auto res = [&](const GridState& v) { return model->residual(hist, v, scheme, spec.alpha, spec.tau); };
    auto jac = [&](const GridState& v) { return model->jacobian(hist, v, scheme, spec.alpha, spec.tau); };
    return newton_solve(res, jac, std::move(guess), spec.newton).first;
  };

  for (long k = scheme.p; k <= total; ++k) {
    GridState v = res_jac_step(window);
    window.advance(std::move(v));
    grab(k, window.newest());
  }
  return out;
}

template <typename Fn>
auto annotate_tau(double tau, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const nonconvergence_error& e) {
    throw nonconvergence_error("tau=" + fmt(tau) + ": " + e.what(), e.last_residual_norm);
  } catch (const positivity_trap_error& e) {
    throw positivity_trap_error("tau=" + fmt(tau) + ": " + e.what());
  } catch (const jacobian_error& e) {
    throw jacobian_error("tau=" + fmt(tau) + ": " + e.what());
  }
}

}  // namespace

double l2_error(const GridState& v, const GridState& v_ref) {
  require_same_grid(v, v_ref, "l2_error");
  double acc = 0.0;
  for (size_t k = 0; k < v.v.size(); ++k) {
    const double d = v.v[k] - v_ref.v[k];
    acc += d * d;
  }
  return std::sqrt(acc * v.h());
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw study_error("fit_line: need at least two points");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0) throw study_error("fit_line: degenerate abscissae");
  LineFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ss_res = 0.0;
  for (size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (f.intercept + f.slope * x[i]);
    ss_res += r * r;
  }
  f.r_squared = (syy > 0.0) ? 1.0 - ss_res / syy : 1.0;
  return f;
}

ConvergenceReport convergence_study(const ProblemSpec& base, std::vector<double> taus,
                                    double tau_ref, double t_m) {
  std::sort(taus.begin(), taus.end(), std::greater<double>());
  taus.erase(std::unique(taus.begin(), taus.end()), taus.end());
  if (taus.size() < 2) throw invalid_parameter("convergence_study: need at least two step sizes");
  if (!(taus.back() > 0.0) || !(tau_ref > 0.0) || !(t_m > 0.0))
    throw invalid_parameter("convergence_study: step sizes and t_m must be positive");
  if (tau_ref > taus.back() / 8.0)
    throw invalid_parameter("convergence_study: tau_ref must be <= min(taus)/8");

  struct Plan {
    double tau;
    long steps;        // steps of this tau to reach ~t_m
    long ref_index;    // matching reference time index
    double t_end;
  };
  std::vector<Plan> plans;
  std::vector<long> ref_capture;
  for (double tau : taus) {
    const double ratio = tau / tau_ref;
    const long m = std::llround(ratio);
    if (m < 1 || std::fabs(ratio - static_cast<double>(m)) > 1e-9 * ratio)
      throw invalid_parameter("convergence_study: tau=" + fmt(tau) +
                              " is not an integer multiple of tau_ref=" + fmt(tau_ref));
    Plan p;
    p.tau = tau;
    p.steps = std::llround(t_m / tau);
    if (p.steps < 1) throw invalid_parameter("convergence_study: t_m shorter than tau=" + fmt(tau));
    p.ref_index = p.steps * m;
    p.t_end = static_cast<double>(p.steps) * tau;
    plans.push_back(p);
    ref_capture.push_back(p.ref_index);
  }

  ProblemSpec ref_spec = base;
  ref_spec.tau = tau_ref;
  ref_spec.t_final = static_cast<double>(*std::max_element(ref_capture.begin(), ref_capture.end())) * tau_ref;
  ref_spec.snapshot_every = 0;

  auto ref_future = std::async(std::launch::async, [ref_spec, ref_capture, tau_ref] {
    return annotate_tau(tau_ref, [&] { return simulate_states(ref_spec, ref_capture); });
  });

  std::vector<std::future<GridState>> runs;
  for (const Plan& p : plans) {
    ProblemSpec s = base;
    s.tau = p.tau;
    s.t_final = p.t_end;
    s.snapshot_every = 0;
    runs.push_back(std::async(std::launch::async, [s, p] {
      return annotate_tau(p.tau, [&] {
        auto states = simulate_states(s, {p.steps});
        return states.at(p.steps);
      });
    }));
  }

  const std::map<long, GridState> ref_states = ref_future.get();

  ConvergenceReport rep;
  rep.tau_ref = tau_ref;
  std::vector<double> lx, ly;
  for (size_t i = 0; i < plans.size(); ++i) {
    const GridState v = runs[i].get();
    const double err = l2_error(v, ref_states.at(plans[i].ref_index));
    if (!(err > 0.0))
      throw study_error("convergence_study: nonpositive error at tau=" + fmt(plans[i].tau));
    rep.taus.push_back(plans[i].tau);
    rep.errors.push_back(err);
    rep.t_ends.push_back(plans[i].t_end);
    lx.push_back(std::log(plans[i].tau));
    ly.push_back(std::log(err));
  }
  const LineFit f = fit_line(lx, ly);
  rep.rate = f.slope;
  rep.r_squared = f.r_squared;
  return rep;
}

DecayReport entropy_decay_study(const ProblemSpec& spec) {
  DecayReport rep;
  rep.trajectory = run(spec);
  const Trajectory& traj = rep.trajectory;
  rep.h_star = std::min(traj.entropy_final, traj.entropy_min);
  rep.h_star_from_min = traj.entropy_min < traj.entropy_final;

  const double e0 = traj.records.front().entropy - rep.h_star;
  if (!(e0 > 0.0)) throw study_error("entropy_decay_study: no initial entropy excess to fit");
  std::vector<double> t, loge;
  for (const StepRecord& r : traj.records) {
    const double e = r.entropy - rep.h_star;
    if (e >= 1e-10 * e0 && e <= 0.5 * e0) {
      t.push_back(r.time);
      loge.push_back(std::log(e));
    }
  }
  if (t.size() < 2) throw study_error("entropy_decay_study: fit window has fewer than two points");
  const LineFit f = fit_line(t, loge);
  rep.slope = f.slope;
  rep.r_squared = f.r_squared;
  rep.fit_points = t.size();

  if (spec.model != ModelKind::Dlss) {  // the DLSS production misses its unknown model constant
    for (size_t k = 1; k < traj.records.size(); ++k) {
      const double h_prev = traj.records[k - 1].entropy;
      const double lhs = traj.records[k].entropy + spec.tau * traj.records[k].production;
      if (lhs > h_prev + 1e-6 * std::fabs(h_prev)) ++rep.soft_dissipation_violations;
    }
  }
  return rep;
}

std::vector<SchemeReportRow> scheme_report() {
  std::vector<SchemeReportRow> rows;

  auto add = [&](const SchemeCoefficients& s) {
    SchemeReportRow row;
    row.name = s.name;
    row.p = s.p;
    for (int j = 0; j <= s.p; ++j) {
      row.alphas[static_cast<size_t>(j)] = s.alpha(j);
      row.betas[static_cast<size_t>(j)] = s.beta(j);
    }
    row.g = (s.p == 1) ? identity_g(1).m : family_g_matrix(s.alpha(2), s.beta(2)).m;
    row.cert = verify_g_stability(s, GMatrix(s.p, row.g));
    rows.push_back(std::move(row));
  };

  add(bdf2());
  add(implicit_midpoint());
  add(gamma_method(9.0 - 4.0 * std::sqrt(5.0)));
  add(gamma_method(0.2));
  add(gamma_method(1.0));

  // alpha2 starts at 1/2: the certifiable corner of the family.
  for (int ia = 0; ia < 10; ++ia)
    for (int ib = 1; ib <= 10; ++ib) {
      const double a2 = 0.5 + 0.25 * ia;
      const double b2 = 0.25 * ib;
      if (b2 > a2 / 2.0) {
        add(family_scheme(a2, b2));
      } else {
        SchemeReportRow row;
        row.name = "family(" + fmt(a2) + "," + fmt(b2) + ")";
        row.p = 2;
        row.alphas = {a2 - 1.0, 1.0 - 2.0 * a2, a2};
        row.betas = {0.5 - a2 + b2, 0.5 + a2 - 2.0 * b2, b2};
        row.admissible = false;
        rows.push_back(std::move(row));
      }
    }
  return rows;
}

}  // namespace oneleg
