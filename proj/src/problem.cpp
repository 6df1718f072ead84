#include "oneleg/problem.hpp"

#include <cmath>
#include <cstdio>

#include "oneleg/errors.hpp"

namespace oneleg {

namespace {

// Accepts 0.2 or {"num": 1, "den": 5}.
double read_real(const nlohmann::json& j, const std::string& key, double fallback) {
  if (!j.contains(key)) return fallback;
  const nlohmann::json& v = j.at(key);
  if (v.is_number()) return v.get<double>();
  if (v.is_object() && v.contains("num") && v.contains("den")) {
    const double den = v.at("den").get<double>();
    if (den == 0.0) throw invalid_parameter("config: zero denominator in " + key);
    return v.at("num").get<double>() / den;
  }
  throw invalid_parameter("config: field '" + key + "' must be a number or {num, den}");
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

SchemeCoefficients build_scheme(const SchemeChoice& c) {
  switch (c.kind) {
    case SchemeChoice::Bdf2:
      return bdf2();
    case SchemeChoice::Midpoint:
      return implicit_midpoint();
    case SchemeChoice::Euler:
      return implicit_euler();
    case SchemeChoice::Gamma:
      return gamma_method(c.gamma);
    case SchemeChoice::Family:
      return family_scheme(c.alpha2, c.beta2);
  }
  throw invalid_parameter("build_scheme: unknown scheme kind");
}

std::unique_ptr<DiffusionModel> build_model(const ProblemSpec& spec) {
  if (spec.model == ModelKind::Dlss) return std::make_unique<DlssModel>();
  return std::make_unique<SktModel>(skt_params_of(spec), spec.paper_literal);
}

long step_count(const ProblemSpec& spec) {
  const double ratio = spec.t_final / spec.tau;
  const long steps = std::llround(ratio);
  if (std::fabs(ratio - static_cast<double>(steps)) > 1e-9 * std::max(1.0, ratio))
    throw invalid_parameter("t_final = " + fmt(spec.t_final) + " is not a whole multiple of tau = " +
                            fmt(spec.tau));
  return steps;
}

void validate_spec(const ProblemSpec& spec) {
  if (spec.n < 4) throw invalid_parameter("config: N must be >= 4");
  if (spec.model == ModelKind::Dlss && spec.n < 5)
    throw invalid_parameter("config: DLSS needs N >= 5");
  if (!(spec.tau > 0.0)) throw invalid_parameter("config: tau must be positive");
  if (!(spec.t_final >= 0.0)) throw invalid_parameter("config: t_final must be nonnegative");
  if (!(spec.alpha >= 1.0 && spec.alpha <= 2.0))
    throw invalid_parameter("config: alpha must lie in [1, 2]");
  if (!(spec.newton.tol_residual > 0.0) || spec.newton.max_iters < 1 || spec.newton.max_halvings < 1)
    throw invalid_parameter("config: newton options must be positive");
  if (spec.snapshot_every < 0) throw invalid_parameter("config: snapshot_every must be >= 0");
  if (spec.model == ModelKind::SktCustom) {
    const SktParams& p = spec.custom_params;
    if (!(p.d1 > 0.0 && p.d2 > 0.0 && p.a1 > 0.0 && p.a2 > 0.0))
      throw invalid_parameter("config: SKT parameters must be positive");
  }
  step_count(spec);
  build_scheme(spec.scheme);  // validates scheme parameters
}

SktParams skt_params_of(const ProblemSpec& spec) {
  switch (spec.model) {
    case ModelKind::SktTestA:
      return {1.0, 1.0, 0.01, 0.01};
    case ModelKind::SktTestB:
      return {1.0, 1.0, 1.0, 1.0};
    case ModelKind::SktCustom:
      return spec.custom_params;
    case ModelKind::Dlss:
      break;
  }
  throw invalid_parameter("skt_params_of: not a cross-diffusion model");
}

std::string model_name(ModelKind m) {
  switch (m) {
    case ModelKind::SktTestA: return "SKT-TestA";
    case ModelKind::SktTestB: return "SKT-TestB";
    case ModelKind::SktCustom: return "SKT-custom";
    case ModelKind::Dlss: return "DLSS";
  }
  return "?";
}

std::string scheme_label(const SchemeChoice& c) {
  switch (c.kind) {
    case SchemeChoice::Bdf2: return "bdf2";
    case SchemeChoice::Midpoint: return "midpoint";
    case SchemeChoice::Euler: return "euler";
    case SchemeChoice::Gamma: return "gamma(" + fmt(c.gamma) + ")";
    case SchemeChoice::Family: return "family(" + fmt(c.alpha2) + "," + fmt(c.beta2) + ")";
  }
  return "?";
}

SchemeChoice parse_scheme_string(const std::string& text, const SchemeChoice& defaults) {
  SchemeChoice c = defaults;
  auto args_of = [&](size_t prefix_len) {
    if (text.back() != ')') throw invalid_parameter("config: malformed scheme '" + text + "'");
    return text.substr(prefix_len, text.size() - prefix_len - 1);
  };
  if (text == "bdf2") {
    c.kind = SchemeChoice::Bdf2;
  } else if (text == "midpoint") {
    c.kind = SchemeChoice::Midpoint;
  } else if (text == "euler") {
    c.kind = SchemeChoice::Euler;
  } else if (text == "gamma") {
    c.kind = SchemeChoice::Gamma;
  } else if (text == "family") {
    c.kind = SchemeChoice::Family;
  } else if (text.rfind("gamma(", 0) == 0) {
    c.kind = SchemeChoice::Gamma;
    c.gamma = std::stod(args_of(6));
  } else if (text.rfind("family(", 0) == 0) {
    c.kind = SchemeChoice::Family;
    const std::string args = args_of(7);
    const size_t comma = args.find(',');
    if (comma == std::string::npos)
      throw invalid_parameter("config: family scheme needs two parameters");
    c.alpha2 = std::stod(args.substr(0, comma));
    c.beta2 = std::stod(args.substr(comma + 1));
  } else {
    throw invalid_parameter("config: unknown scheme '" + text + "'");
  }
  return c;
}

ProblemSpec problem_from_json(const nlohmann::json& j) {
  ProblemSpec spec;
  try {
    if (j.contains("model")) {
      const std::string m = j.at("model").get<std::string>();
      if (m == "SKT-TestA") spec.model = ModelKind::SktTestA;
      else if (m == "SKT-TestB") spec.model = ModelKind::SktTestB;
      else if (m == "SKT-custom") spec.model = ModelKind::SktCustom;
      else if (m == "DLSS") spec.model = ModelKind::Dlss;
      else throw invalid_parameter("config: unknown model '" + m + "'");
    }
    spec.scheme.gamma = read_real(j, "gamma", spec.scheme.gamma);
    spec.scheme.alpha2 = read_real(j, "alpha2", spec.scheme.alpha2);
    spec.scheme.beta2 = read_real(j, "beta2", spec.scheme.beta2);
    if (j.contains("scheme"))
      spec.scheme = parse_scheme_string(j.at("scheme").get<std::string>(), spec.scheme);
    spec.alpha = read_real(j, "alpha", spec.alpha);
    spec.n = j.value("N", spec.n);
    spec.tau = read_real(j, "tau", spec.tau);
    spec.t_final = read_real(j, "t_final", spec.t_final);
    spec.snapshot_every = j.value("snapshot_every", spec.snapshot_every);
    spec.paper_literal = j.value("paper_literal", spec.paper_literal);
    if (j.contains("newton")) {
      const nlohmann::json& nw = j.at("newton");
      spec.newton.tol_residual = read_real(nw, "tol_residual", spec.newton.tol_residual);
      spec.newton.max_iters = nw.value("max_iters", spec.newton.max_iters);
      spec.newton.max_halvings = nw.value("max_halvings", spec.newton.max_halvings);
    }
    if (j.contains("skt")) {
      const nlohmann::json& sk = j.at("skt");
      spec.custom_params.d1 = read_real(sk, "d1", spec.custom_params.d1);
      spec.custom_params.d2 = read_real(sk, "d2", spec.custom_params.d2);
      spec.custom_params.a1 = read_real(sk, "a1", spec.custom_params.a1);
      spec.custom_params.a2 = read_real(sk, "a2", spec.custom_params.a2);
    }
  } catch (const nlohmann::json::exception& e) {
    throw invalid_parameter(std::string("config: ") + e.what());
  }
  validate_spec(spec);
  return spec;
}

nlohmann::json problem_to_json(const ProblemSpec& spec) {
  nlohmann::json j;
  j["model"] = model_name(spec.model);
  j["scheme"] = scheme_label(spec.scheme);
  j["alpha"] = spec.alpha;
  j["N"] = spec.n;
  j["tau"] = spec.tau;
  j["t_final"] = spec.t_final;
  j["newton"] = {{"tol_residual", spec.newton.tol_residual},
                 {"max_iters", spec.newton.max_iters},
                 {"max_halvings", spec.newton.max_halvings}};
  j["snapshot_every"] = spec.snapshot_every;
  j["paper_literal"] = spec.paper_literal;
  if (spec.model == ModelKind::SktCustom)
    j["skt"] = {{"d1", spec.custom_params.d1},
                {"d2", spec.custom_params.d2},
                {"a1", spec.custom_params.a1},
                {"a2", spec.custom_params.a2}};
  return j;
}

}  // namespace oneleg
