#include "oneleg/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "oneleg/csv.hpp"
#include "oneleg/errors.hpp"
#include "oneleg/problem.hpp"
#include "oneleg/study.hpp"

namespace oneleg {

namespace {

namespace fs = std::filesystem;

void apply_override(nlohmann::json& j, const std::string& kv) {
  const size_t eq = kv.find('=');
  if (eq == std::string::npos || eq == 0)
    throw invalid_parameter("override must look like key=value: '" + kv + "'");
  const std::string path = kv.substr(0, eq);
  const std::string raw = kv.substr(eq + 1);

  nlohmann::json* node = &j;
  size_t start = 0;
  while (true) {
    const size_t dot = path.find('.', start);
    const std::string key = path.substr(start, dot == std::string::npos ? dot : dot - start);
    if (key.empty()) throw invalid_parameter("override has an empty key segment: '" + kv + "'");
    if (dot == std::string::npos) {
      nlohmann::json parsed = nlohmann::json::parse(raw, nullptr, false);
      (*node)[key] = parsed.is_discarded() ? nlohmann::json(raw) : parsed;
      break;
    }
    node = &(*node)[key];
    start = dot + 1;
  }
}

nlohmann::json load_config(const std::string& config_path, const std::vector<std::string>& overrides) {
  nlohmann::json j = nlohmann::json::object();
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) throw invalid_parameter("cannot open config file '" + config_path + "'");
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw invalid_parameter("config parse error in '" + config_path + "': " + e.what());
    }
  }
  for (const std::string& kv : overrides) apply_override(j, kv);
  return j;
}

void write_file(const fs::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw invalid_parameter("cannot write '" + path.string() + "'");
  out << contents;
}

void write_snapshots(const fs::path& out_dir, const Trajectory& traj, double alpha) {
  if (traj.snapshots.empty()) return;
  fs::create_directories(out_dir / "snapshots");
  for (const auto& [k, state] : traj.snapshots) {
    std::ostringstream ss;
    write_snapshot_csv(ss, state, alpha);
    write_file(out_dir / "snapshots" / ("step_" + std::to_string(k) + ".csv"), ss.str());
  }
}

std::vector<double> parse_tau_list(const std::string& text) {
  std::vector<double> taus;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    size_t used = 0;
    const double tau = std::stod(item, &used);
    if (used != item.size()) throw invalid_parameter("bad tau value '" + item + "'");
    taus.push_back(tau);
  }
  if (taus.empty()) throw invalid_parameter("--taus is empty");
  return taus;
}

int dispatch(int argc, char** argv) {
  CLI::App app{"One-leg multistep experiments for entropy-dissipative diffusion equations"};
  app.require_subcommand(1);

  std::string config_path, out_dir_str, taus_text;
  std::vector<std::string> overrides;
  double tau_ref = 0.0, t_m = 0.0;

  auto add_common = [&](CLI::App* cmd, bool needs_config) {
    if (needs_config)
      cmd->add_option("--config", config_path, "JSON problem description");
    cmd->add_option("--out", out_dir_str, "output directory")->required();
    if (needs_config)
      cmd->add_option("--override", overrides, "key=value config override (repeatable)");
  };

  CLI::App* cmd_run = app.add_subcommand("run", "integrate one problem and write trace.csv");
  add_common(cmd_run, true);

  CLI::App* cmd_converge =
      app.add_subcommand("converge", "tau sweep against a reference run; writes convergence.csv");
  add_common(cmd_converge, true);
  cmd_converge->add_option("--taus", taus_text, "comma-separated step sizes")->required();
  cmd_converge->add_option("--tau-ref", tau_ref, "reference step size")->required();
  cmd_converge->add_option("--tm", t_m, "comparison time")->required();

  CLI::App* cmd_entropy =
      app.add_subcommand("entropy", "entropy decay trace and exponential fit; writes trace.csv");
  add_common(cmd_entropy, true);

  CLI::App* cmd_schemes = app.add_subcommand("schemes", "scheme catalogue; writes schemes.csv");
  add_common(cmd_schemes, false);

  app.parse(argc, argv);

  const fs::path out_dir(out_dir_str);
  fs::create_directories(out_dir);

  if (cmd_schemes->parsed()) {
    std::ostringstream ss;
    write_schemes_csv(ss, scheme_report());
    write_file(out_dir / "schemes.csv", ss.str());
    std::cout << "wrote " << (out_dir / "schemes.csv").string() << '\n';
    return 0;
  }

  const ProblemSpec spec = problem_from_json(load_config(config_path, overrides));

  if (cmd_run->parsed()) {
    const Trajectory traj = run(spec);
    const double h_star = std::min(traj.entropy_final, traj.entropy_min);
    std::ostringstream ss;
    write_trace_csv(ss, spec, traj, h_star);
    write_file(out_dir / "trace.csv", ss.str());
    write_snapshots(out_dir, traj, spec.alpha);
    std::cout << "steps=" << traj.records.back().step << " H_final=" << csv_number(traj.entropy_final)
              << " min_w=" << csv_number(traj.records.back().min_w) << '\n';
    return 0;
  }

  if (cmd_entropy->parsed()) {
    const DecayReport rep = entropy_decay_study(spec);
    std::ostringstream ss;
    write_trace_csv(ss, spec, rep.trajectory, rep.h_star, &rep);
    write_file(out_dir / "trace.csv", ss.str());
    write_snapshots(out_dir, rep.trajectory, spec.alpha);
    std::cout << "decay_slope=" << csv_number(rep.slope)
              << " r_squared=" << csv_number(rep.r_squared) << " fit_points=" << rep.fit_points
              << " soft_dissipation_violations=" << rep.soft_dissipation_violations
              << (rep.h_star_from_min ? " (H* from trajectory minimum)" : "") << '\n';
    return 0;
  }

  // converge
  const ConvergenceReport rep = convergence_study(spec, parse_tau_list(taus_text), tau_ref, t_m);
  std::ostringstream ss;
  write_convergence_csv(ss, spec, rep);
  write_file(out_dir / "convergence.csv", ss.str());
  std::cout << "rate=" << csv_number(rep.rate) << " r_squared=" << csv_number(rep.r_squared) << '\n';
  return 0;
}

}  // namespace

int run_cli(int argc, char** argv) {
  try {
    return dispatch(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return 0;  // --help
    std::cerr << e.what() << '\n';
    return 2;
  } catch (const invalid_parameter& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const nonconvergence_error& e) {
    std::cerr << "solver error: " << e.what() << '\n';
    return 3;
  } catch (const positivity_trap_error& e) {
    std::cerr << "solver error: " << e.what() << '\n';
    return 3;
  } catch (const positivity_error& e) {
    std::cerr << "solver error: " << e.what() << '\n';
    return 3;
  } catch (const jacobian_error& e) {
    std::cerr << "solver error: " << e.what() << '\n';
    return 3;
  } catch (const study_error& e) {
    std::cerr << "study assertion failed: " << e.what() << '\n';
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace oneleg
