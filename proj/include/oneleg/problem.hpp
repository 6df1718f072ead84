#pragma once

#include <memory>
#include <string>

#include "json.hpp"
#include "oneleg/integrator.hpp"
#include "oneleg/newton.hpp"
#include "oneleg/scheme.hpp"
#include "oneleg/skt.hpp"

namespace oneleg {

enum class ModelKind { SktTestA, SktTestB, SktCustom, Dlss };

struct SchemeChoice {
  enum Kind { Bdf2, Midpoint, Euler, Gamma, Family } kind = Bdf2;
  double gamma = 0.2;
  double alpha2 = 1.5;
  double beta2 = 1.0;
};

// Full description of one deterministic simulation.
struct ProblemSpec {
  ModelKind model = ModelKind::SktTestB;
  SchemeChoice scheme;
  double alpha = 1.5;
  int n = 100;
  double tau = 1e-5;
  double t_final = 0.05;
  NewtonOptions newton;
  long snapshot_every = 0;  // 0 disables snapshots
  SktParams custom_params;  // SKT-custom only
  bool paper_literal = false;
};

SchemeCoefficients build_scheme(const SchemeChoice& c);
std::unique_ptr<DiffusionModel> build_model(const ProblemSpec& spec);

// Number of time steps; requires t_final to be a whole multiple of tau
// (within 1e-9 relative).
long step_count(const ProblemSpec& spec);

void validate_spec(const ProblemSpec& spec);

// JSON round trip.  Real-valued fields accept either a number or a
// {"num": p, "den": q} pair so rational parameters like 1/6 survive
// parsing exactly as intended.
ProblemSpec problem_from_json(const nlohmann::json& j);
nlohmann::json problem_to_json(const ProblemSpec& spec);

std::string model_name(ModelKind m);
std::string scheme_label(const SchemeChoice& c);

// Diffusion/self-diffusion coefficients the spec resolves to; invalid for DLSS.
SktParams skt_params_of(const ProblemSpec& spec);

// "gamma(0.2)", "family(1.5,1)", "bdf2", ... -> SchemeChoice (partial: the
// plain names keep the parameter fields supplied elsewhere in the config).
SchemeChoice parse_scheme_string(const std::string& text, const SchemeChoice& defaults);

}  // namespace oneleg
