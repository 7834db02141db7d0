#include "swipt/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

namespace swipt::experiment {

namespace {
constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

void parallel_for(int n, int threads, const std::function<void(int)>& fn) {
  threads = std::max(1, threads);
  if (threads == 1 || n <= 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::mutex mu;
  std::exception_ptr first_error;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      for (int i = t; i < n; i += threads) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(mu);
          if (!first_error) first_error = std::current_exception();
          return;
        }
      }
    });
  }
  for (std::thread& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

struct TrialOutcome {
  bool feasible = false;
  double total_power = 0.0;
  double rate_slack = kNan;
  double rank_defect = kNan;
};

beamforming::BeamformingSolution solve_with(Method method, const ChannelSet& cs,
                                            const SystemConfig& cfg) {
  switch (method) {
    case Method::FullSdr: return beamforming::solve_full_sdr(cs, cfg);
    case Method::NullspaceSdr: return beamforming::solve_nullspace_sdr(cs, cfg);
    case Method::LowComplexity: return beamforming::solve_low_complexity(cs, cfg);
  }
  throw InvalidInput("unknown method");
}

TrialOutcome run_trial_method(Method method, const ChannelSet& cs, const SystemConfig& cfg) {
  TrialOutcome out;
  try {
    const beamforming::BeamformingSolution sol = solve_with(method, cs, cfg);
    out.feasible = true;
    out.total_power = sol.objective;
    double slack = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < sol.per_user_rate.size(); ++i)
      slack = std::min(slack, sol.per_user_rate[i] - cfg.T_i[i]);
    out.rate_slack = slack;
    out.rank_defect = 0.0;
    for (double d : sol.rank_defects) out.rank_defect = std::max(out.rank_defect, d);
  } catch (const InfeasibleProblem&) {
    // recorded via feasible_fraction
  }
  return out;
}

SystemConfig apply_axis(const SystemConfig& base, SweepAxis axis, double value) {
  SystemConfig cfg = base;
  switch (axis) {
    case SweepAxis::PMax:
      cfg.P_max = value;
      break;
    case SweepAxis::RateTarget:
      std::fill(cfg.T_i.begin(), cfg.T_i.end(), value);
      break;
    case SweepAxis::Kappa:
      std::fill(cfg.kappa_I.begin(), cfg.kappa_I.end(), value);
      std::fill(cfg.kappa_E.begin(), cfg.kappa_E.end(), value);
      break;
    case SweepAxis::Antennas: {
      const double rounded = std::round(value);
      if (std::abs(value - rounded) > 1e-9 || rounded < 1.0)
        throw ConfigError("sweep: antenna axis values must be positive integers");
      cfg.M = static_cast<int>(rounded);
      break;
    }
  }
  cfg.validate();
  return cfg;
}
}  // namespace

const char* to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::PMax: return "P_max";
    case SweepAxis::RateTarget: return "T";
    case SweepAxis::Kappa: return "kappa";
    case SweepAxis::Antennas: return "M";
  }
  return "?";
}

SweepAxis axis_from_string(const std::string& name) {
  if (name == "P_max") return SweepAxis::PMax;
  if (name == "T") return SweepAxis::RateTarget;
  if (name == "kappa") return SweepAxis::Kappa;
  if (name == "M") return SweepAxis::Antennas;
  throw ConfigError("unknown sweep axis '" + name + "' (expected P_max, T, kappa, or M)");
}

Method method_from_string(const std::string& name) {
  if (name == "full_sdr") return Method::FullSdr;
  if (name == "nullspace_sdr") return Method::NullspaceSdr;
  if (name == "lowcomplexity") return Method::LowComplexity;
  throw ConfigError("unknown method '" + name +
                    "' (expected full_sdr, nullspace_sdr, or lowcomplexity)");
}

void SweepSpec::validate() const {
  base.validate();
  if (values.empty()) throw ConfigError("sweep: values must be non-empty");
  for (std::size_t i = 1; i < values.size(); ++i)
    if (!(values[i] > values[i - 1])) throw ConfigError("sweep: values must be strictly increasing");
  if (methods.empty()) throw ConfigError("sweep: at least one method required");
  if (trials < 1) throw ConfigError("sweep: trials >= 1 required");
}

std::vector<ResultRow> run_sweep(const SweepSpec& spec, int threads) {
  spec.validate();
  std::vector<ResultRow> rows;
  rows.reserve(spec.values.size() * spec.methods.size());

  for (double value : spec.values) {
    const SystemConfig cfg = apply_axis(spec.base, spec.axis, value);
    std::vector<std::vector<TrialOutcome>> outcomes(
        spec.methods.size(), std::vector<TrialOutcome>(static_cast<std::size_t>(spec.trials)));
    parallel_for(spec.trials, threads, [&](int trial) {
      const ChannelSet cs = generate_scenario(cfg, trial);
      for (std::size_t mi = 0; mi < spec.methods.size(); ++mi)
        outcomes[mi][static_cast<std::size_t>(trial)] = run_trial_method(spec.methods[mi], cs, cfg);
    });

    for (std::size_t mi = 0; mi < spec.methods.size(); ++mi) {
      const std::vector<TrialOutcome>& oc = outcomes[mi];
      ResultRow row;
      row.axis = spec.axis;
      row.axis_value = value;
      row.method = spec.methods[mi];
      row.trials = spec.trials;

      double sum = 0.0;
      int feas = 0;
      double slack_sum = 0.0, defect_sum = 0.0;
      for (const TrialOutcome& o : oc) {
        sum += o.total_power;
        if (o.feasible) {
          ++feas;
          slack_sum += o.rate_slack;
          defect_sum += o.rank_defect;
        }
      }
      const double n = static_cast<double>(spec.trials);
      row.mean_total_power_w = sum / n;
      double var = 0.0;
      for (const TrialOutcome& o : oc) {
        const double d = o.total_power - row.mean_total_power_w;
        var += d * d;
      }
      row.std_err_w = spec.trials > 1 ? std::sqrt(var / (n - 1.0) / n) : 0.0;
      row.feasible_fraction = static_cast<double>(feas) / n;
      row.mean_rate_slack = feas > 0 ? slack_sum / feas : kNan;
      row.mean_rank_defect = feas > 0 ? defect_sum / feas : kNan;
      rows.push_back(row);
    }
  }
  return rows;
}

std::string format_g12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string rows_to_csv(const std::vector<ResultRow>& rows) {
  std::ostringstream out;
  out << "axis,axis_value,method,mean_total_power_w,std_err_w,feasible_fraction,"
         "mean_rate_slack,mean_rank_defect,trials\n";
  for (const ResultRow& r : rows) {
    out << to_string(r.axis) << ',' << format_g12(r.axis_value) << ','
        << beamforming::to_string(r.method) << ',' << format_g12(r.mean_total_power_w) << ','
        << format_g12(r.std_err_w) << ',' << format_g12(r.feasible_fraction) << ','
        << format_g12(r.mean_rate_slack) << ',' << format_g12(r.mean_rank_defect) << ','
        << r.trials << '\n';
  }
  return out.str();
}

VerifySummary run_verification(const SystemConfig& config, int trials, int threads) {
  config.validate();
  if (trials < 1) throw ConfigError("verify: trials >= 1 required");

  VerifySummary summary;
  summary.trials = trials;
  summary.trivial_dimension = config.M == config.K_I;

  struct TrialResult {
    bool infeasible = false;
    bool audited = false;
    std::vector<std::string> violations;
  };
  std::vector<TrialResult> results(static_cast<std::size_t>(trials));

  parallel_for(trials, threads, [&](int trial) {
    TrialResult& res = results[static_cast<std::size_t>(trial)];
    const auto note = [&](const std::string& msg) {
      res.violations.push_back("trial " + std::to_string(trial) + ": " + msg);
    };
    const ChannelSet cs = generate_scenario(config, trial);

    bool ns_feasible = true;
    beamforming::BeamformingSolution full, ns, lc;
    bool have_full = true, have_lc = true;
    try {
      ns = beamforming::solve_nullspace_sdr(cs, config);
    } catch (const InfeasibleProblem&) {
      ns_feasible = false;
    }
    try {
      full = beamforming::solve_full_sdr(cs, config);
    } catch (const InfeasibleProblem&) {
      have_full = false;
      if (ns_feasible) note("full SDR infeasible although the null-space restriction is feasible");
    }
    try {
      lc = beamforming::solve_low_complexity(cs, config);
    } catch (const InfeasibleProblem&) {
      have_lc = false;
    }
    if (!ns_feasible) {
      if (have_lc) note("low-complexity feasible although the null-space program is infeasible");
      res.infeasible = true;
      return;
    }

    // dedicated-beam audit
    if (!summary.trivial_dimension) {
      const beamforming::DedicatedBeamAudit audit = beamforming::audit_dedicated_beam(cs, config);
      res.audited = true;
      if (audit.trace_D_rel > 1e-6)
        note("dedicated beam carries " + format_g12(audit.trace_D_rel) + " of the budget");
      if (!audit.interlace_ok) note("compression eigenvalue bound violated");
      if (audit.slack_eig_max > 1e-8)
        note("dual slack S_E - beta I not negative semidefinite (max eig " +
             format_g12(audit.slack_eig_max) + ")");
      for (double l : audit.dual_lambda)
        if (l < -1e-9) note("negative rate multiplier " + format_g12(l));
      if (audit.dual_beta < -1e-9) note("negative power multiplier " + format_g12(audit.dual_beta));
    }

    // cross-method invariants on this realization
    const auto check_solution = [&](const beamforming::BeamformingSolution& sol) {
      for (std::size_t i = 0; i < sol.per_user_rate.size(); ++i)
        if (sol.per_user_rate[i] < config.T_i[i] - 1e-6)
          note(std::string(beamforming::to_string(sol.method)) + ": rate target missed by " +
               format_g12(config.T_i[i] - sol.per_user_rate[i]));
      if (sol.tx_power > config.P_max * (1.0 + 1e-8))
        note(std::string(beamforming::to_string(sol.method)) + ": power budget exceeded");
    };
    const auto check_nulling = [&](const beamforming::BeamformingSolution& sol) {
      for (int i = 0; i < cs.K_I(); ++i) {
        double leak = 0.0;
        for (int l = 0; l < cs.K_I(); ++l)
          if (l != i)
            leak += std::norm(cs.h_I[static_cast<std::size_t>(i)].dot(sol.w[static_cast<std::size_t>(l)]));
        if (sol.v) leak += std::norm(cs.h_I[static_cast<std::size_t>(i)].dot(*sol.v));
        if (leak > 1e-16 * config.P_max)
          note(std::string(beamforming::to_string(sol.method)) + ": interference leak " +
               format_g12(leak));
      }
    };

    check_solution(ns);
    check_nulling(ns);
    if (have_full) check_solution(full);
    if (have_lc) {
      check_solution(lc);
      check_nulling(lc);
      for (int i = 0; i < cs.K_I(); ++i) {
        if (lc.chosen_index && *lc.chosen_index == i) continue;
        const double t = config.T_i[static_cast<std::size_t>(i)];
        if (std::abs(lc.per_user_rate[static_cast<std::size_t>(i)] - t) > 1e-9 * t)
          note("lowcomplexity: non-boosted rate deviates from its target");
      }
      const double slack_lc = 1e-6 * std::max(lc.objective, ns.objective) + 1e-15;
      if (lc.objective > ns.objective + slack_lc)
        note("objective ordering violated: lowcomplexity " + format_g12(lc.objective) +
             " > nullspace_sdr " + format_g12(ns.objective));
    }
    if (have_full) {
      const double slack_full = 1e-6 * std::max(ns.objective, full.objective) + 1e-15;
      if (ns.objective > full.objective + slack_full)
        note("objective ordering violated: nullspace_sdr " + format_g12(ns.objective) +
             " > full_sdr " + format_g12(full.objective));
    } else {
      note("full SDR missing while null-space restriction solved");
    }
  });

  for (const TrialResult& res : results) {
    if (res.infeasible) ++summary.infeasible;
    if (res.audited) ++summary.audited;
    summary.violations.insert(summary.violations.end(), res.violations.begin(),
                              res.violations.end());
  }
  return summary;
}

std::vector<ComplexityRow> complexity_table(const std::vector<std::pair<int, int>>& extra) {
  std::vector<std::pair<int, int>> pairs{{2, 4}, {16, 64}};
  pairs.insert(pairs.end(), extra.begin(), extra.end());

  std::vector<ComplexityRow> rows;
  for (const auto& [k, m] : pairs) {
    for (metrics::ProblemForm form :
         {metrics::ProblemForm::P12, metrics::ProblemForm::P22, metrics::ProblemForm::P3}) {
      const metrics::ComplexityEstimate est = metrics::complexity_estimate(form, k, m);
      ComplexityRow row;
      row.scenario = "K_I=" + std::to_string(k) + " M=" + std::to_string(m);
      row.K_I = k;
      row.M = m;
      row.method = form;
      row.flops = est.flops;
      row.reduction_pct = 100.0 * est.reduction_vs_p12;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::string complexity_to_csv(const std::vector<ComplexityRow>& rows) {
  std::ostringstream out;
  out << "scenario,K_I,M,method,flops,reduction_pct\n";
  for (const ComplexityRow& r : rows)
    out << r.scenario << ',' << r.K_I << ',' << r.M << ',' << metrics::to_string(r.method) << ','
        << format_g12(r.flops) << ',' << format_g12(r.reduction_pct) << '\n';
  return out.str();
}

std::string complexity_to_text(const std::vector<ComplexityRow>& rows) {
  std::ostringstream out;
  std::string last;
  for (const ComplexityRow& r : rows) {
    if (r.scenario != last) {
      out << r.scenario << '\n';
      last = r.scenario;
    }
    char line[160];
    std::snprintf(line, sizeof(line), "  %-4s flops %-14.6g reduction %7.3f%%\n",
                  metrics::to_string(r.method), r.flops, r.reduction_pct);
    out << line;
  }
  return out.str();
}

namespace {
std::vector<double> per_user_list(const nlohmann::json& j, const char* key, int count,
                                  const std::vector<double>& fallback) {
  if (!j.contains(key)) {
    if (static_cast<int>(fallback.size()) == count) return fallback;
    if (fallback.size() == 1) return std::vector<double>(static_cast<std::size_t>(count), fallback[0]);
    return fallback;
  }
  const nlohmann::json& v = j.at(key);
  if (v.is_number()) return std::vector<double>(static_cast<std::size_t>(count), v.get<double>());
  if (v.is_array()) {
    std::vector<double> out;
    for (const auto& e : v) {
      if (!e.is_number()) throw ConfigError(std::string("config: ") + key + " must hold numbers");
      out.push_back(e.get<double>());
    }
    return out;
  }
  throw ConfigError(std::string("config: ") + key + " must be a number or an array");
}
}  // namespace

SystemConfig config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config: top-level JSON object expected");
  SystemConfig cfg;
  try {
    cfg.M = j.value("M", cfg.M);
    cfg.K_I = j.value("K_I", cfg.K_I);
    cfg.K_E = j.value("K_E", cfg.K_E);
    cfg.P_max = j.value("P_max", cfg.P_max);
    if (j.contains("noise_dbm"))
      cfg.noise_power = dbm_to_watts(j.at("noise_dbm").get<double>());
    cfg.noise_power = j.value("noise_power", cfg.noise_power);
    cfg.dist_I = j.value("dist_I", cfg.dist_I);
    cfg.dist_E = j.value("dist_E", cfg.dist_E);
    cfg.alpha_I = j.value("alpha_I", cfg.alpha_I);
    cfg.alpha_E = j.value("alpha_E", cfg.alpha_E);
    cfg.ref_loss_db = j.value("ref_loss_db", cfg.ref_loss_db);
    cfg.mc_trials = j.value("mc_trials", cfg.mc_trials);
    cfg.master_seed = j.value("master_seed", cfg.master_seed);
    cfg.kappa_is_db = j.value("kappa_is_db", cfg.kappa_is_db);
    cfg.nlos_unit_entry_variance = j.value("nlos_unit_entry_variance", cfg.nlos_unit_entry_variance);
    cfg.T_i = per_user_list(j, "T_i", cfg.K_I, {8.0});
    cfg.kappa_I = per_user_list(j, "kappa_I", cfg.K_I, {5.0});
    cfg.kappa_E = per_user_list(j, "kappa_E", cfg.K_E, {5.0});
    cfg.aod_I = j.contains("aod_I") && !j.at("aod_I").is_null()
                    ? per_user_list(j, "aod_I", cfg.K_I, {})
                    : std::vector<double>{};
    cfg.aod_E = j.contains("aod_E") && !j.at("aod_E").is_null()
                    ? per_user_list(j, "aod_E", cfg.K_E, {})
                    : std::vector<double>{};
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

nlohmann::json config_to_json(const SystemConfig& cfg) {
  nlohmann::json j;
  j["M"] = cfg.M;
  j["K_I"] = cfg.K_I;
  j["K_E"] = cfg.K_E;
  j["P_max"] = cfg.P_max;
  j["T_i"] = cfg.T_i;
  j["noise_power"] = cfg.noise_power;
  j["kappa_I"] = cfg.kappa_I;
  j["kappa_E"] = cfg.kappa_E;
  j["dist_I"] = cfg.dist_I;
  j["dist_E"] = cfg.dist_E;
  j["alpha_I"] = cfg.alpha_I;
  j["alpha_E"] = cfg.alpha_E;
  j["ref_loss_db"] = cfg.ref_loss_db;
  if (cfg.aod_I.empty())
    j["aod_I"] = nullptr;
  else
    j["aod_I"] = cfg.aod_I;
  if (cfg.aod_E.empty())
    j["aod_E"] = nullptr;
  else
    j["aod_E"] = cfg.aod_E;
  j["mc_trials"] = cfg.mc_trials;
  j["master_seed"] = cfg.master_seed;
  j["kappa_is_db"] = cfg.kappa_is_db;
  j["nlos_unit_entry_variance"] = cfg.nlos_unit_entry_variance;
  return j;
}

SweepSpec sweep_from_json(const nlohmann::json& j) {
  SweepSpec spec;
  spec.base = config_from_json(j);
  spec.trials = spec.base.mc_trials;
  if (!j.contains("sweep")) return spec;
  const nlohmann::json& s = j.at("sweep");
  if (!s.is_object()) throw ConfigError("config: sweep must be an object");
  try {
    if (s.contains("axis")) spec.axis = axis_from_string(s.at("axis").get<std::string>());
    if (s.contains("values")) spec.values = s.at("values").get<std::vector<double>>();
    if (s.contains("trials")) spec.trials = s.at("trials").get<int>();
    if (s.contains("methods")) {
      spec.methods.clear();
      for (const auto& name : s.at("methods"))
        spec.methods.push_back(method_from_string(name.get<std::string>()));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config: sweep: ") + e.what());
  }
  return spec;
}

namespace {
nlohmann::json cvector_to_json(const CVector& v) {
  nlohmann::json out = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i)
    out.push_back(nlohmann::json::array({v(i).real(), v(i).imag()}));
  return out;
}
}  // namespace

nlohmann::json solve_scenario_json(const SystemConfig& config, int trial_index,
                                   const std::vector<Method>& methods) {
  const ChannelSet cs = generate_scenario(config, trial_index);
  nlohmann::json j;
  j["config"] = config_to_json(config);
  j["trial_index"] = trial_index;
  nlohmann::json scenario;
  scenario["aod_I"] = cs.aod_I;
  scenario["aod_E"] = cs.aod_E;
  scenario["rho_I"] = cs.rho_I;
  scenario["rho_E"] = cs.rho_E;
  scenario["h_I"] = nlohmann::json::array();
  for (const CVector& h : cs.h_I) scenario["h_I"].push_back(cvector_to_json(h));
  scenario["h_E"] = nlohmann::json::array();
  for (const CVector& h : cs.h_E) scenario["h_E"].push_back(cvector_to_json(h));
  j["scenario"] = std::move(scenario);

  nlohmann::json sols = nlohmann::json::object();
  for (Method method : methods) {
    nlohmann::json js;
    try {
      const beamforming::BeamformingSolution sol = solve_with(method, cs, config);
      js["status"] = "ok";
      js["objective_w"] = sol.objective;
      js["tx_power_w"] = sol.tx_power;
      js["per_user_rate"] = sol.per_user_rate;
      js["per_eu_power_w"] = sol.per_eu_power;
      js["rank_defects"] = sol.rank_defects;
      js["w"] = nlohmann::json::array();
      for (const CVector& wi : sol.w) js["w"].push_back(cvector_to_json(wi));
      js["v"] = sol.v ? cvector_to_json(*sol.v) : nlohmann::json();
      js["chosen_index"] = sol.chosen_index ? nlohmann::json(*sol.chosen_index) : nlohmann::json();
      js["solver"] = {{"iterations", sol.solver.iterations},
                      {"gap", sol.solver.gap},
                      {"sdp_objective_w", sol.solver.sdp_objective},
                      {"status", sdp::to_string(sol.solver.status)}};
    } catch (const InfeasibleProblem& e) {
      js["status"] = "infeasible";
      js["detail"] = e.what();
      js["rate_shortfall"] = e.rate_shortfall();
    }
    sols[beamforming::to_string(method)] = std::move(js);
  }
  j["solutions"] = std::move(sols);
  return j;
}

}  // namespace swipt::experiment
