#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "swipt/experiment.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitViolation = 3;
constexpr int kExitSolver = 4;

using swipt::experiment::Method;

nlohmann::json load_config_json(const std::string& path) {
  if (path.empty()) return nlohmann::json::object();  // built-in defaults
  std::ifstream in(path);
  if (!in) throw swipt::ConfigError("cannot open config file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw swipt::ConfigError("config parse error in '" + path + "': " + e.what());
  }
  return j;
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw swipt::ConfigError("cannot open output file '" + path + "'");
  out << content;
}

std::vector<Method> parse_methods(const std::vector<std::string>& names) {
  std::vector<Method> methods;
  for (const std::string& chunk : names) {
    std::stringstream ss(chunk);
    std::string item;
    while (std::getline(ss, item, ','))
      if (!item.empty()) methods.push_back(swipt::experiment::method_from_string(item));
  }
  return methods;
}

struct CommonArgs {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
  std::string out_path;
  int threads = 0;  // 0: hardware concurrency

  int resolved_threads() const {
    if (threads > 0) return threads;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
  }
};

void add_common(CLI::App* cmd, CommonArgs& args, bool with_trials = true) {
  cmd->add_option("--config", args.config_path, "JSON config file (defaults apply when omitted)");
  cmd->add_option("--seed", [&args](const CLI::results_t& res) {
        args.seed = std::stoull(res.at(0));
        return true;
      },
      "master seed override (u64)");
  if (with_trials) cmd->add_option("--trials", [&args](const CLI::results_t& res) {
        args.trials = std::stoi(res.at(0));
        return true;
      },
      "Monte-Carlo trials override");
  cmd->add_option("--out", args.out_path, "output file (stdout when omitted)");
  cmd->add_option("--threads", args.threads, "worker threads (0 = hardware)");
}

int cmd_sweep(const CommonArgs& args, const std::string& axis, const std::string& values_csv,
              const std::vector<std::string>& method_names) {
  const nlohmann::json j = load_config_json(args.config_path);
  swipt::experiment::SweepSpec spec = swipt::experiment::sweep_from_json(j);
  if (!axis.empty()) spec.axis = swipt::experiment::axis_from_string(axis);
  if (!values_csv.empty()) {
    spec.values.clear();
    std::stringstream ss(values_csv);
    std::string item;
    while (std::getline(ss, item, ','))
      if (!item.empty()) spec.values.push_back(std::stod(item));
  }
  if (!method_names.empty()) spec.methods = parse_methods(method_names);
  if (args.seed) spec.base.master_seed = *args.seed;
  if (args.trials) spec.trials = *args.trials;

  const auto rows = swipt::experiment::run_sweep(spec, args.resolved_threads());
  write_output(args.out_path, swipt::experiment::rows_to_csv(rows));
  return kExitOk;
}

int cmd_verify(const CommonArgs& args) {
  const nlohmann::json j = load_config_json(args.config_path);
  swipt::SystemConfig cfg = swipt::experiment::config_from_json(j);
  if (args.seed) cfg.master_seed = *args.seed;
  const int trials = args.trials.value_or(100);

  const auto summary = swipt::experiment::run_verification(cfg, trials, args.resolved_threads());
  std::ostringstream out;
  out << "trials: " << summary.trials << "\n"
      << "audited: " << summary.audited
      << (summary.trivial_dimension ? " (trivial: dedicated block empty, M == K_I)" : "") << "\n"
      << "infeasible: " << summary.infeasible << "\n"
      << "violations: " << summary.violations.size() << "\n";
  for (const std::string& v : summary.violations) out << "  " << v << "\n";
  write_output(args.out_path, out.str());
  return summary.ok() ? kExitOk : kExitViolation;
}

int cmd_complexity(const CommonArgs& args, const std::string& pairs_arg, bool csv) {
  std::vector<std::pair<int, int>> extra;
  if (!pairs_arg.empty()) {
    std::stringstream ss(pairs_arg);
    std::string item;
    while (std::getline(ss, item, ';')) {
      const auto comma = item.find(',');
      if (comma == std::string::npos)
        throw swipt::ConfigError("complexity: --pairs expects 'K,M[;K,M...]'");
      extra.emplace_back(std::stoi(item.substr(0, comma)), std::stoi(item.substr(comma + 1)));
    }
  }
  const auto rows = swipt::experiment::complexity_table(extra);
  write_output(args.out_path, csv ? swipt::experiment::complexity_to_csv(rows)
                                  : swipt::experiment::complexity_to_text(rows));
  return kExitOk;
}

int cmd_solve(const CommonArgs& args, int trial, const std::vector<std::string>& method_names,
              const std::string& dump_sdp_path) {
  const nlohmann::json j = load_config_json(args.config_path);
  swipt::SystemConfig cfg = swipt::experiment::config_from_json(j);
  if (args.seed) cfg.master_seed = *args.seed;
  std::vector<Method> methods{Method::FullSdr, Method::NullspaceSdr, Method::LowComplexity};
  if (!method_names.empty()) methods = parse_methods(method_names);

  if (!dump_sdp_path.empty()) {
    const swipt::ChannelSet cs = swipt::generate_scenario(cfg, trial);
    nlohmann::json dump;
    for (Method m : methods) {
      if (m == Method::FullSdr)
        dump["full_sdr"] = swipt::sdp::problem_to_json(
            swipt::beamforming::build_full_sdr_problem(cs, cfg));
      else if (m == Method::NullspaceSdr)
        dump["nullspace_sdr"] = swipt::sdp::problem_to_json(swipt::beamforming::build_nullspace_problem(
            swipt::beamforming::compute_null_spaces(cs), cs, cfg));
    }
    std::ofstream out(dump_sdp_path, std::ios::binary);
    if (!out) throw swipt::ConfigError("cannot open dump file '" + dump_sdp_path + "'");
    out << dump.dump(2) << "\n";
  }

  const nlohmann::json result = swipt::experiment::solve_scenario_json(cfg, trial, methods);
  write_output(args.out_path, result.dump(2) + "\n");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SWIPT downlink beamforming: full SDR, null-space SDR, and the low-complexity design"};
  app.require_subcommand(1);

  CommonArgs sweep_args, verify_args, complexity_args, solve_args;
  std::string sweep_axis, sweep_values;
  std::vector<std::string> sweep_methods;
  std::string pairs_arg;
  bool complexity_csv = false;
  int solve_trial = 0;
  std::vector<std::string> solve_methods;
  std::string dump_sdp_path;

  CLI::App* sweep = app.add_subcommand("sweep", "Monte-Carlo sweep over one axis, CSV output");
  add_common(sweep, sweep_args);
  sweep->add_option("--axis", sweep_axis, "P_max | T | kappa | M");
  sweep->add_option("--values", sweep_values, "comma-separated axis values (strictly increasing)");
  sweep->add_option("--method,--methods", sweep_methods,
                    "comma-separated subset of full_sdr,nullspace_sdr,lowcomplexity");

  CLI::App* verify = app.add_subcommand(
      "verify", "dedicated-beam audit and cross-method invariants over seeded trials");
  add_common(verify, verify_args);

  CLI::App* complexity = app.add_subcommand("complexity", "interior-point cost model table");
  add_common(complexity, complexity_args, /*with_trials=*/false);
  complexity->add_option("--pairs", pairs_arg, "extra scenarios as 'K,M[;K,M...]'");
  complexity->add_flag("--csv", complexity_csv, "emit CSV instead of text");

  CLI::App* solve = app.add_subcommand("solve", "solve one scenario, dump beams and metrics as JSON");
  add_common(solve, solve_args, /*with_trials=*/false);
  solve->add_option("--trial", solve_trial, "trial index (default 0)");
  solve->add_option("--method,--methods", solve_methods, "methods to run (default: all)");
  solve->add_option("--dump-sdp", dump_sdp_path, "also dump the built SDP(s) as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (sweep->parsed()) return cmd_sweep(sweep_args, sweep_axis, sweep_values, sweep_methods);
    if (verify->parsed()) return cmd_verify(verify_args);
    if (complexity->parsed()) return cmd_complexity(complexity_args, pairs_arg, complexity_csv);
    if (solve->parsed()) return cmd_solve(solve_args, solve_trial, solve_methods, dump_sdp_path);
  } catch (const swipt::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const swipt::InvalidInput& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const swipt::SolverFailure& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return kExitSolver;
  } catch (const swipt::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSolver;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitConfig;
}
