#include "swipt/channel.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace swipt {

namespace {
constexpr std::uint64_t kClassIu = 1;
constexpr std::uint64_t kClassEu = 2;
constexpr std::uint64_t kPurposeAngle = 0;
constexpr std::uint64_t kPurposeNlos = 1;
}  // namespace

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

void SystemConfig::validate() const {
  if (K_I < 1) throw ConfigError("config: K_I >= 1 required");
  if (M < K_I) throw ConfigError("config: M >= K_I required (per-user null spaces must be nonempty)");
  if (K_E < 0) throw ConfigError("config: K_E >= 0 required");
  if (!(P_max > 0.0)) throw ConfigError("config: P_max must be positive");
  if (!(noise_power > 0.0)) throw ConfigError("config: noise_power must be positive");
  if (static_cast<int>(T_i.size()) != K_I) throw ConfigError("config: T_i must have K_I entries");
  for (double t : T_i)
    if (!(t > 0.0)) throw ConfigError("config: rate targets must be positive");
  if (static_cast<int>(kappa_I.size()) != K_I) throw ConfigError("config: kappa_I must have K_I entries");
  if (static_cast<int>(kappa_E.size()) != K_E) throw ConfigError("config: kappa_E must have K_E entries");
  for (double k : kappa_I)
    if (k < 0.0 && !kappa_is_db) throw ConfigError("config: kappa_I must be nonnegative");
  for (double k : kappa_E)
    if (k < 0.0 && !kappa_is_db) throw ConfigError("config: kappa_E must be nonnegative");
  if (!(dist_I >= 1.0) || !(dist_E >= 1.0)) throw ConfigError("config: distances must be >= 1 m");
  if (!(alpha_I > 0.0) || !(alpha_E > 0.0)) throw ConfigError("config: pathloss exponents must be positive");
  if (!aod_I.empty() && static_cast<int>(aod_I.size()) != K_I)
    throw ConfigError("config: aod_I must have K_I entries when given");
  if (!aod_E.empty() && static_cast<int>(aod_E.size()) != K_E)
    throw ConfigError("config: aod_E must have K_E entries when given");
  if (mc_trials < 1) throw ConfigError("config: mc_trials >= 1 required");
}

double SystemConfig::kappa_linear(double raw) const {
  return kappa_is_db ? std::pow(10.0, raw / 10.0) : raw;
}

CVector steering_vector(int m_antennas, double theta) {
  if (m_antennas < 1) throw InvalidInput("steering_vector: M >= 1 required");
  const double phase_step = std::numbers::pi * std::sin(theta);
  const double scale = 1.0 / std::sqrt(static_cast<double>(m_antennas));
  CVector a(m_antennas);
  for (int m = 0; m < m_antennas; ++m) a(m) = std::polar(scale, phase_step * m);
  return a;
}

CVector sample_rician(const CVector& h_bar, double kappa, SplitMix64& rng,
                      double entry_variance) {
  if (kappa < 0.0) throw InvalidInput("sample_rician: kappa must be nonnegative");
  const Eigen::Index m = h_bar.size();
  if (m < 1) throw InvalidInput("sample_rician: empty LoS vector");
  if (std::abs(h_bar.norm() - 1.0) > 1e-9)
    throw InvalidInput("sample_rician: LoS component must be unit norm");
  const double var = entry_variance > 0.0 ? entry_variance : 1.0 / static_cast<double>(m);
  const double sd = std::sqrt(var);
  CVector h_hat(m);
  for (Eigen::Index i = 0; i < m; ++i) h_hat(i) = sd * rng.complex_gaussian();
  const double w_los = std::sqrt(kappa / (1.0 + kappa));
  const double w_nlos = std::sqrt(1.0 / (1.0 + kappa));
  return w_los * h_bar + w_nlos * h_hat;
}

double pathloss(double dist, double alpha, double ref_loss_db) {
  if (!(dist >= 1.0)) throw InvalidInput("pathloss: model valid for dist >= 1 m");
  if (!(alpha > 0.0)) throw InvalidInput("pathloss: exponent must be positive");
  return std::pow(10.0, -ref_loss_db / 10.0) * std::pow(dist, -alpha);
}

ChannelSet generate_scenario(const SystemConfig& config, int trial_index) {
  config.validate();
  if (trial_index < 0) throw ConfigError("generate_scenario: trial_index >= 0 required");

  ChannelSet cs;
  cs.trial_index = trial_index;
  cs.seed = derive_stream_key({config.master_seed, static_cast<std::uint64_t>(trial_index)});

  const double var = config.nlos_unit_entry_variance ? 1.0 : 1.0 / static_cast<double>(config.M);
  const auto make_user = [&](std::uint64_t user_class, int u, const std::vector<double>& fixed_aod,
                             double kappa_raw, double& aod_out) {
    double theta;
    if (!fixed_aod.empty()) {
      theta = fixed_aod[static_cast<std::size_t>(u)];
    } else {
      SplitMix64 angle_rng(derive_stream_key({config.master_seed, static_cast<std::uint64_t>(trial_index),
                                              user_class, static_cast<std::uint64_t>(u), kPurposeAngle}));
      theta = angle_rng.uniform(-std::numbers::pi / 2.0, std::numbers::pi / 2.0);
    }
    aod_out = theta;
    SplitMix64 nlos_rng(derive_stream_key({config.master_seed, static_cast<std::uint64_t>(trial_index),
                                           user_class, static_cast<std::uint64_t>(u), kPurposeNlos}));
    return sample_rician(steering_vector(config.M, theta), config.kappa_linear(kappa_raw),
                         nlos_rng, var);
  };

  cs.h_I.reserve(config.K_I);
  cs.aod_I.resize(config.K_I);
  const double rho_iu = pathloss(config.dist_I, config.alpha_I, config.ref_loss_db);
  for (int i = 0; i < config.K_I; ++i) {
    cs.h_I.push_back(make_user(kClassIu, i, config.aod_I, config.kappa_I[i], cs.aod_I[i]));
    cs.rho_I.push_back(rho_iu);
  }

  cs.h_E.reserve(config.K_E);
  cs.aod_E.resize(config.K_E);
  const double rho_eu = pathloss(config.dist_E, config.alpha_E, config.ref_loss_db);
  for (int j = 0; j < config.K_E; ++j) {
    cs.h_E.push_back(make_user(kClassEu, j, config.aod_E, config.kappa_E[j], cs.aod_E[j]));
    cs.rho_E.push_back(rho_eu);
  }
  return cs;
}

}  // namespace swipt
