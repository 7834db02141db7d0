#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "swipt/beamforming.hpp"

namespace swipt::experiment {

using beamforming::Method;

enum class SweepAxis { PMax, RateTarget, Kappa, Antennas };

const char* to_string(SweepAxis axis);
SweepAxis axis_from_string(const std::string& name);      // throws ConfigError
Method method_from_string(const std::string& name);       // throws ConfigError

// One sweep: vary one scalar axis over `values`, rerun `trials` Monte-Carlo
// trials per point. Every method sees the same channel realization per
// (value, trial) pair.
struct SweepSpec {
  SystemConfig base;
  SweepAxis axis = SweepAxis::PMax;
  std::vector<double> values{0.5, 1.0, 2.0, 4.0, 8.0};
  std::vector<Method> methods{Method::FullSdr, Method::NullspaceSdr, Method::LowComplexity};
  int trials = 500;

  void validate() const;
};

// Aggregates per (axis value, method). Infeasible trials contribute 0 W to
// the mean (no service) and lower feasible_fraction; slack/defect means are
// over feasible trials only (NaN when none).
struct ResultRow {
  SweepAxis axis = SweepAxis::PMax;
  double axis_value = 0.0;
  Method method = Method::FullSdr;
  double mean_total_power_w = 0.0;
  double std_err_w = 0.0;
  double feasible_fraction = 0.0;
  double mean_rate_slack = 0.0;
  double mean_rank_defect = 0.0;
  int trials = 0;
};

// Deterministic for a fixed spec regardless of `threads` (results reduced in
// (value, trial) order).
std::vector<ResultRow> run_sweep(const SweepSpec& spec, int threads = 1);

std::string rows_to_csv(const std::vector<ResultRow>& rows);

// Batch run of the dedicated-beam audit and the cross-method invariants
// (objective ordering, interference nulling, rate feasibility, power budget,
// MRT rate tightness) over seeded trials.
struct VerifySummary {
  int trials = 0;
  int audited = 0;          // trials where the null-space program was feasible
  int infeasible = 0;
  bool trivial_dimension = false;  // M == K_I: dedicated block empty
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

VerifySummary run_verification(const SystemConfig& config, int trials, int threads = 1);

struct ComplexityRow {
  std::string scenario;
  int K_I = 0;
  int M = 0;
  metrics::ProblemForm method = metrics::ProblemForm::P12;
  double flops = 0.0;
  double reduction_pct = 0.0;
};

// Rows for the two benchmark scenarios (K_I=2, M=4) and (K_I=16, M=64) plus
// any extra (K_I, M) pairs.
std::vector<ComplexityRow> complexity_table(const std::vector<std::pair<int, int>>& extra = {});
std::string complexity_to_csv(const std::vector<ComplexityRow>& rows);
std::string complexity_to_text(const std::vector<ComplexityRow>& rows);

// JSON config ingestion; scalars broadcast to per-user lists, noise may be
// given as noise_power (W) or noise_dbm. Unknown keys are ignored.
SystemConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const SystemConfig& config);
SweepSpec sweep_from_json(const nlohmann::json& j);  // reads optional "sweep" object

// Single-scenario solve; dumps scenario, beams, and metrics per method.
nlohmann::json solve_scenario_json(const SystemConfig& config, int trial_index,
                                   const std::vector<Method>& methods);

// %.12g, broken out so CSV and text output format identically.
std::string format_g12(double v);

}  // namespace swipt::experiment
