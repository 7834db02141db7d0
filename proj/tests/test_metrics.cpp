#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "swipt/metrics.hpp"

using swipt::CVector;
using swipt::ChannelSet;
using swipt::SystemConfig;
namespace metrics = swipt::metrics;

namespace {

ChannelSet tiny_channels(int m, int k_i, int k_e, swipt::SplitMix64& rng, double rho_i = 1.0,
                         double rho_e = 1.0) {
  ChannelSet cs;
  for (int i = 0; i < k_i; ++i) {
    CVector h(m);
    for (int a = 0; a < m; ++a) h(a) = rng.complex_gaussian();
    cs.h_I.push_back(h);
    cs.rho_I.push_back(rho_i);
  }
  for (int j = 0; j < k_e; ++j) {
    CVector h(m);
    for (int a = 0; a < m; ++a) h(a) = rng.complex_gaussian();
    cs.h_E.push_back(h);
    cs.rho_E.push_back(rho_e);
  }
  cs.aod_I.assign(static_cast<std::size_t>(k_i), 0.0);
  cs.aod_E.assign(static_cast<std::size_t>(k_e), 0.0);
  return cs;
}

SystemConfig tiny_config(int m, int k_i, int k_e) {
  SystemConfig cfg;
  cfg.M = m;
  cfg.K_I = k_i;
  cfg.K_E = k_e;
  cfg.T_i.assign(static_cast<std::size_t>(k_i), 1.0);
  cfg.kappa_I.assign(static_cast<std::size_t>(k_i), 5.0);
  cfg.kappa_E.assign(static_cast<std::size_t>(k_e), 5.0);
  cfg.noise_power = 1.0;
  cfg.P_max = 10.0;
  return cfg;
}

}  // namespace

TEST_CASE("all-zero beams: no rate, no harvest, infeasible") {
  swipt::SplitMix64 rng(3);
  const ChannelSet cs = tiny_channels(3, 2, 1, rng);
  const SystemConfig cfg = tiny_config(3, 2, 1);
  std::vector<CVector> w(2, CVector::Zero(3));
  const auto rep = metrics::evaluate(w, std::nullopt, cs, cfg);
  CHECK(rep.sinr[0] == 0.0);
  CHECK(rep.sinr[1] == 0.0);
  CHECK(rep.eu_power[0] == 0.0);
  CHECK(rep.total_power == 0.0);
  CHECK_FALSE(rep.feasible);
  CHECK(rep.violations.size() == 2);
}

TEST_CASE("single user, matched beam, no interference") {
  swipt::SplitMix64 rng(5);
  ChannelSet cs = tiny_channels(4, 1, 0, rng, 0.25);
  SystemConfig cfg = tiny_config(4, 1, 0);
  cfg.noise_power = 2.0;
  const double p = 3.0;
  std::vector<CVector> w{std::sqrt(p) * cs.h_I[0].normalized()};
  const auto rep = metrics::evaluate(w, std::nullopt, cs, cfg);
  const double expected = 0.25 * p * cs.h_I[0].squaredNorm() / 2.0;
  CHECK(rep.sinr[0] == doctest::Approx(expected).epsilon(1e-12));
  CHECK(rep.rate[0] == doctest::Approx(std::log2(1.0 + expected)).epsilon(1e-12));
  CHECK(rep.tx_power_used == doctest::Approx(p).epsilon(1e-12));
}

TEST_CASE("harvest matches brute-force oracle; linear in beam power") {
  swipt::SplitMix64 rng(7);
  const ChannelSet cs = tiny_channels(4, 2, 3, rng, 1.0, 0.7);
  const SystemConfig cfg = tiny_config(4, 2, 3);
  std::vector<CVector> w;
  for (int i = 0; i < 2; ++i) {
    CVector wi(4);
    for (int a = 0; a < 4; ++a) wi(a) = rng.complex_gaussian();
    w.push_back(wi);
  }
  CVector v(4);
  for (int a = 0; a < 4; ++a) v(a) = rng.complex_gaussian();

  const auto rep = metrics::evaluate(w, v, cs, cfg);
  for (int j = 0; j < 3; ++j) {
    // independent oracle: entrywise inner products summed by hand
    double acc = 0.0;
    for (const CVector& wi : w) {
      std::complex<double> dot = 0.0;
      for (int a = 0; a < 4; ++a) dot += std::conj(cs.h_E[j](a)) * wi(a);
      acc += std::norm(dot);
    }
    std::complex<double> dv = 0.0;
    for (int a = 0; a < 4; ++a) dv += std::conj(cs.h_E[j](a)) * v(a);
    acc += std::norm(dv);
    CHECK(rep.eu_power[static_cast<std::size_t>(j)] == doctest::Approx(0.7 * acc).epsilon(1e-12));
  }
  CHECK(rep.total_power ==
        doctest::Approx(rep.eu_power[0] + rep.eu_power[1] + rep.eu_power[2]).epsilon(1e-12));

  const double c = 2.3;
  std::vector<CVector> w_scaled;
  for (const CVector& wi : w) w_scaled.push_back(std::sqrt(c) * wi);
  const auto rep2 = metrics::evaluate(w_scaled, std::sqrt(c) * v, cs, cfg);
  for (int j = 0; j < 3; ++j)
    CHECK(rep2.eu_power[static_cast<std::size_t>(j)] ==
          doctest::Approx(c * rep.eu_power[static_cast<std::size_t>(j)]).epsilon(1e-12));
}

TEST_CASE("complexity reductions for the benchmark scenarios") {
  using metrics::ProblemForm;
  // reference percentages hold to +-0.1 percentage point
  const auto pct = [](ProblemForm f, int k, int m) {
    return 100.0 * metrics::complexity_estimate(f, k, m).reduction_vs_p12;
  };
  CHECK(std::abs(pct(ProblemForm::P22, 2, 4) - 90.4) <= 0.1);
  CHECK(std::abs(pct(ProblemForm::P3, 2, 4) - 97.5) <= 0.1);
  CHECK(std::abs(pct(ProblemForm::P22, 16, 64) - 68.2) <= 0.1);
  CHECK(std::abs(pct(ProblemForm::P3, 16, 64) - 99.96) <= 0.1);
  CHECK(metrics::complexity_estimate(ProblemForm::P12, 2, 4).reduction_vs_p12 == 0.0);
}

TEST_CASE("complexity ordering and edge cases") {
  using metrics::ProblemForm;
  for (int k = 2; k <= 8; ++k) {
    for (int m = 2 * k; m <= 4 * k; m += k) {
      const double f12 = metrics::complexity_estimate(ProblemForm::P12, k, m).flops;
      const double f22 = metrics::complexity_estimate(ProblemForm::P22, k, m).flops;
      const double f3 = metrics::complexity_estimate(ProblemForm::P3, k, m).flops;
      CHECK(f12 >= f22);
      CHECK(f22 >= f3);
      CHECK(f3 > 0.0);
      CHECK(metrics::complexity_estimate(ProblemForm::P22, k, m).reduction_vs_p12 >= 0.0);
      CHECK(metrics::complexity_estimate(ProblemForm::P22, k, m).reduction_vs_p12 < 1.0);
    }
  }
  // single user: the two reduced forms coincide
  CHECK(metrics::complexity_estimate(ProblemForm::P22, 1, 2).flops ==
        doctest::Approx(metrics::complexity_estimate(ProblemForm::P3, 1, 2).flops));
  CHECK_THROWS_AS(metrics::complexity_estimate(ProblemForm::P12, 0, 4), swipt::InvalidInput);
  CHECK_THROWS_AS(metrics::complexity_estimate(ProblemForm::P12, 4, 2), swipt::InvalidInput);
}
