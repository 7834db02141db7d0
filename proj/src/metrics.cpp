#include "swipt/metrics.hpp"

#include <cmath>

namespace swipt::metrics {

MetricsReport evaluate(const std::vector<CVector>& w, const std::optional<CVector>& v,
                       const ChannelSet& channels, const SystemConfig& config) {
  const int k_i = channels.K_I();
  const int k_e = channels.K_E();
  const int m = channels.M();
  if (static_cast<int>(w.size()) != k_i)
    throw InvalidInput("evaluate: one beam per information user required");
  for (const CVector& wi : w)
    if (wi.size() != m) throw InvalidInput("evaluate: beam length must equal antenna count");
  if (v && v->size() != m) throw InvalidInput("evaluate: energy beam length must equal antenna count");
  if (static_cast<int>(config.T_i.size()) != k_i)
    throw InvalidInput("evaluate: config rate targets do not match channel set");

  MetricsReport rep;
  rep.sinr.resize(static_cast<std::size_t>(k_i));
  rep.rate.resize(static_cast<std::size_t>(k_i));
  for (int i = 0; i < k_i; ++i) {
    const CVector& hi = channels.h_I[static_cast<std::size_t>(i)];
    const double rho = channels.rho_I[static_cast<std::size_t>(i)];
    const double signal = rho * std::norm(hi.dot(w[static_cast<std::size_t>(i)]));
    double interf = 0.0;
    for (int l = 0; l < k_i; ++l)
      if (l != i) interf += std::norm(hi.dot(w[static_cast<std::size_t>(l)]));
    if (v) interf += std::norm(hi.dot(*v));
    interf *= rho;
    rep.sinr[static_cast<std::size_t>(i)] = signal / (interf + config.noise_power);
    rep.rate[static_cast<std::size_t>(i)] = std::log2(1.0 + rep.sinr[static_cast<std::size_t>(i)]);
  }

  rep.eu_power.resize(static_cast<std::size_t>(k_e));
  for (int j = 0; j < k_e; ++j) {
    const CVector& hj = channels.h_E[static_cast<std::size_t>(j)];
    double p = 0.0;
    for (const CVector& wi : w) p += std::norm(hj.dot(wi));
    if (v) p += std::norm(hj.dot(*v));
    rep.eu_power[static_cast<std::size_t>(j)] = channels.rho_E[static_cast<std::size_t>(j)] * p;
    rep.total_power += rep.eu_power[static_cast<std::size_t>(j)];
  }

  for (const CVector& wi : w) rep.tx_power_used += wi.squaredNorm();
  if (v) rep.tx_power_used += v->squaredNorm();

  for (int i = 0; i < k_i; ++i) {
    if (rep.rate[static_cast<std::size_t>(i)] < config.T_i[static_cast<std::size_t>(i)] - 1e-6) {
      rep.feasible = false;
      rep.violations.push_back("rate[" + std::to_string(i) + "] = " +
                               std::to_string(rep.rate[static_cast<std::size_t>(i)]) +
                               " < target " + std::to_string(config.T_i[static_cast<std::size_t>(i)]));
    }
  }
  if (rep.tx_power_used > config.P_max * (1.0 + 1e-6)) {
    rep.feasible = false;
    rep.violations.push_back("tx power " + std::to_string(rep.tx_power_used) + " W exceeds budget " +
                             std::to_string(config.P_max) + " W");
  }
  return rep;
}

const char* to_string(ProblemForm form) {
  switch (form) {
    case ProblemForm::P12: return "p12";
    case ProblemForm::P22: return "p22";
    case ProblemForm::P3: return "p3";
  }
  return "?";
}

ComplexityEstimate complexity_estimate(ProblemForm form, int k_i, int m_antennas) {
  if (k_i < 1) throw InvalidInput("complexity_estimate: K_I >= 1 required");
  if (m_antennas < k_i) throw InvalidInput("complexity_estimate: M >= K_I required");
  const double k = k_i;
  const double m = m_antennas;
  const double n = m - k + 1.0;

  const double f_p12 = std::pow((k + 1.0) * m, 3.5) + (k + 1.0) * std::pow(m, 3.0);
  double f = f_p12;
  switch (form) {
    case ProblemForm::P12:
      break;
    case ProblemForm::P22:
      f = std::pow(k * n, 3.5) + k * std::pow(n, 3.0) + k * m * (k - 1.0) * (k - 1.0);
      break;
    case ProblemForm::P3:
      f = k * (std::pow(n, 3.5) + std::pow(n, 3.0) + m * (k - 1.0) * (k - 1.0));
      break;
  }
  ComplexityEstimate est;
  est.method = form;
  est.flops = f;
  est.reduction_vs_p12 = form == ProblemForm::P12 ? 0.0 : 1.0 - f / f_p12;
  return est;
}

}  // namespace swipt::metrics
