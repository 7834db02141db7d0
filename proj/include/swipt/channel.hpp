#pragma once

#include <cstdint>
#include <vector>

#include "swipt/linalg.hpp"
#include "swipt/rng.hpp"

namespace swipt {

double dbm_to_watts(double dbm);

// Scenario scalars. Angles are in radians, powers in watts, rates in
// bits/s/Hz, Rician factors linear unless kappa_is_db is set.
struct SystemConfig {
  int M = 4;
  int K_I = 2;
  int K_E = 2;
  double P_max = 1.0;
  std::vector<double> T_i{8.0, 8.0};
  double noise_power = 3.9810717055349695e-12;  // -84 dBm
  std::vector<double> kappa_I{5.0, 5.0};
  std::vector<double> kappa_E{5.0, 5.0};
  double dist_I = 50.0;
  double dist_E = 5.0;
  double alpha_I = 3.2;
  double alpha_E = 2.2;
  double ref_loss_db = 30.0;
  std::vector<double> aod_I;  // empty: drawn uniform on [-pi/2, pi/2] per trial
  std::vector<double> aod_E;
  int mc_trials = 500;
  std::uint64_t master_seed = 1;
  bool kappa_is_db = false;
  bool nlos_unit_entry_variance = false;  // default: per-entry variance 1/M

  void validate() const;  // throws ConfigError
  double kappa_linear(double raw) const;
};

// One channel realization. h vectors exclude pathloss; rho carries it.
struct ChannelSet {
  std::vector<CVector> h_I;
  std::vector<CVector> h_E;
  std::vector<double> rho_I;
  std::vector<double> rho_E;
  std::vector<double> aod_I;
  std::vector<double> aod_E;
  std::uint64_t seed = 0;  // derived per-trial stream key
  int trial_index = 0;

  int M() const { return h_I.empty() ? 0 : static_cast<int>(h_I.front().size()); }
  int K_I() const { return static_cast<int>(h_I.size()); }
  int K_E() const { return static_cast<int>(h_E.size()); }
};

// Uniform linear array response, entry m (0-based): exp(i m pi sin(theta)) / sqrt(M).
CVector steering_vector(int m_antennas, double theta);

// sqrt(kappa/(1+kappa)) h_bar + sqrt(1/(1+kappa)) h_hat, h_hat iid CSCG with
// per-entry variance entry_variance (default 1/M so both parts have unit energy).
CVector sample_rician(const CVector& h_bar, double kappa, SplitMix64& rng,
                      double entry_variance = -1.0);

// 10^(-ref_loss_db/10) * dist^(-alpha); valid from the 1 m reference distance.
double pathloss(double dist, double alpha, double ref_loss_db);

// Pure function of (config, trial_index); identical output regardless of
// execution order or parallelism.
ChannelSet generate_scenario(const SystemConfig& config, int trial_index);

}  // namespace swipt
