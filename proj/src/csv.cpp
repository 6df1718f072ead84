#include "oneleg/csv.hpp"

#include <cmath>
#include <cstdio>

namespace oneleg {

std::string csv_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

void write_provenance(std::ostream& os, const ProblemSpec& spec) {
  const nlohmann::json j = problem_to_json(spec);
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (it->is_object()) {
      for (auto in = it->begin(); in != it->end(); ++in)
        os << "# " << it.key() << '.' << in.key() << '=' << in->dump() << '\n';
    } else {
      os << "# " << it.key() << '=' << it->dump() << '\n';
    }
  }
}

}  // namespace

void write_trace_csv(std::ostream& os, const ProblemSpec& spec, const Trajectory& traj,
                     double h_star, const DecayReport* fit) {
  write_provenance(os, spec);
  const bool is_skt = spec.model != ModelKind::Dlss;
  os << "# alpha_analysis_backed="
     << ((is_skt ? alpha_analysis_backed_skt(spec.alpha) : alpha_analysis_backed_dlss(spec.alpha))
             ? 1
             : 0)
     << '\n';
  if (is_skt)
    os << "# entropy_condition_met=" << (skt_params_of(spec).entropy_condition_met() ? 1 : 0)
       << '\n';
  os << "# h_star=" << csv_number(h_star) << '\n';
  if (fit != nullptr) {
    os << "# h_star_from_min=" << (fit->h_star_from_min ? 1 : 0) << '\n';
    os << "# decay_slope=" << csv_number(fit->slope) << '\n';
    os << "# decay_r_squared=" << csv_number(fit->r_squared) << '\n';
    os << "# fit_points=" << fit->fit_points << '\n';
    if (is_skt)
      os << "# soft_dissipation_violations=" << fit->soft_dissipation_violations << '\n';
  }
  os << "step,time,H,E_rel,production,min_w,mass_residual\n";
  for (const StepRecord& r : traj.records) {
    os << r.step << ',' << csv_number(r.time) << ',' << csv_number(r.entropy) << ','
       << csv_number(r.entropy - h_star) << ',' << csv_number(r.production) << ','
       << csv_number(r.min_w) << ',' << csv_number(r.mass_residual) << '\n';
  }
}

void write_convergence_csv(std::ostream& os, const ProblemSpec& base, const ConvergenceReport& rep) {
  write_provenance(os, base);
  os << "# tau_ref=" << csv_number(rep.tau_ref) << '\n';
  os << "# rate=" << csv_number(rep.rate) << '\n';
  os << "# r_squared=" << csv_number(rep.r_squared) << '\n';
  os << "tau,error,t_end\n";
  for (size_t i = 0; i < rep.taus.size(); ++i)
    os << csv_number(rep.taus[i]) << ',' << csv_number(rep.errors[i]) << ','
       << csv_number(rep.t_ends[i]) << '\n';
}

void write_schemes_csv(std::ostream& os, const std::vector<SchemeReportRow>& rows) {
  os << "name,p,alpha0,alpha1,alpha2,beta0,beta1,beta2,g00,g01,g11,certified,scale_used\n";
  for (const SchemeReportRow& r : rows) {
    os << r.name << ',' << r.p;
    for (int j = 0; j < 3; ++j)
      os << ',' << (j <= r.p ? csv_number(r.alphas[static_cast<size_t>(j)]) : std::string());
    for (int j = 0; j < 3; ++j)
      os << ',' << (j <= r.p ? csv_number(r.betas[static_cast<size_t>(j)]) : std::string());
    if (!r.admissible) {
      os << ",,,,inadmissible,\n";
      continue;
    }
    os << ',' << csv_number(r.g(0, 0));
    if (r.p == 2)
      os << ',' << csv_number(r.g(0, 1)) << ',' << csv_number(r.g(1, 1));
    else
      os << ",,";
    os << ',' << (r.cert.certified ? "true" : "false") << ',' << csv_number(r.cert.scale_used)
       << '\n';
  }
}

void write_snapshot_csv(std::ostream& os, const GridState& v, double alpha) {
  os << "# row=node (x_i = i/" << v.n << "), column=species, values are densities u=v^(2/alpha)\n";
  for (int i = 0; i < v.n; ++i) {
    for (int s = 0; s < v.species; ++s) {
      if (s > 0) os << ',';
      os << csv_number(std::pow(v.at(s, i), 2.0 / alpha));
    }
    os << '\n';
  }
}

}  // namespace oneleg
