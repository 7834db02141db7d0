#pragma once

#include <optional>
#include <string>
#include <vector>

#include "swipt/channel.hpp"

namespace swipt::metrics {

// Link-level evaluation of a set of beams on one channel realization.
struct MetricsReport {
  std::vector<double> sinr;      // per IU
  std::vector<double> rate;      // per IU, log2(1 + sinr)
  std::vector<double> eu_power;  // per EU, watts
  double total_power = 0.0;      // sum of eu_power
  double tx_power_used = 0.0;    // sum ||w||^2 + ||v||^2
  bool feasible = true;
  std::vector<std::string> violations;
};

// SINR includes intra-IU interference and the energy beam when present.
// Feasibility: rate_i >= T_i - 1e-6 and tx power <= P_max (1 + 1e-6).
MetricsReport evaluate(const std::vector<CVector>& w, const std::optional<CVector>& v,
                       const ChannelSet& channels, const SystemConfig& config);

enum class ProblemForm { P12, P22, P3 };

const char* to_string(ProblemForm form);

struct ComplexityEstimate {
  ProblemForm method = ProblemForm::P12;
  double flops = 0.0;
  double reduction_vs_p12 = 0.0;  // 1 - flops/flops(p12); 0 for p12
};

// Interior-point cost model with unit constants:
//   p12: ((K+1) M)^3.5 + (K+1) M^3
//   p22: (K n)^3.5 + K n^3 + K M (K-1)^2        with n = M - K + 1
//   p3:  K (n^3.5 + n^3 + M (K-1)^2)
ComplexityEstimate complexity_estimate(ProblemForm form, int k_i, int m_antennas);

}  // namespace swipt::metrics
