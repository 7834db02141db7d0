#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "swipt/channel.hpp"

using swipt::CVector;
using swipt::SystemConfig;

TEST_CASE("steering vector fixed values and unit norm") {
  const CVector one = swipt::steering_vector(1, 0.7);
  CHECK(one(0).real() == doctest::Approx(1.0));
  CHECK(one(0).imag() == doctest::Approx(0.0));

  const CVector two = swipt::steering_vector(2, std::numbers::pi / 2.0);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  CHECK(two(0).real() == doctest::Approx(inv_sqrt2).epsilon(1e-15));
  CHECK(two(1).real() == doctest::Approx(-inv_sqrt2).epsilon(1e-12));
  CHECK(std::abs(two(1).imag()) <= 1e-12);

  const CVector four = swipt::steering_vector(4, 0.0);
  for (int m = 0; m < 4; ++m) {
    CHECK(four(m).real() == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(four(m).imag() == doctest::Approx(0.0));
  }

  swipt::SplitMix64 rng(5);
  for (int rep = 0; rep < 50; ++rep) {
    const double theta = rng.uniform(-std::numbers::pi / 2, std::numbers::pi / 2);
    CHECK(std::abs(swipt::steering_vector(8, theta).norm() - 1.0) <= 1e-15);
  }
  CHECK_THROWS_AS(swipt::steering_vector(0, 0.0), swipt::InvalidInput);
}

TEST_CASE("rician sampling: LoS limit, NLoS-only weight, moments") {
  const CVector h_bar = swipt::steering_vector(4, 0.3);

  swipt::SplitMix64 rng_los(7);
  const CVector los = swipt::sample_rician(h_bar, 1e12, rng_los);
  CHECK((los - h_bar).norm() <= 1e-5);

  // kappa = 0 removes the LoS part entirely: output independent of h_bar
  swipt::SplitMix64 rng_a(9), rng_b(9);
  const CVector n1 = swipt::sample_rician(h_bar, 0.0, rng_a);
  const CVector n2 = swipt::sample_rician(swipt::steering_vector(4, -1.1), 0.0, rng_b);
  CHECK((n1 - n2).norm() <= 1e-15);

  swipt::SplitMix64 rng_bad(1);
  CHECK_THROWS_AS(swipt::sample_rician(h_bar, -0.5, rng_bad), swipt::InvalidInput);
  CHECK_THROWS_AS(swipt::sample_rician(2.0 * h_bar, 1.0, rng_bad), swipt::InvalidInput);

  // E ||h||^2 = 1 for every kappa; 3-sigma statistical gate
  for (double kappa : {0.0, 1.0, 5.0}) {
    swipt::SplitMix64 rng(101 + static_cast<std::uint64_t>(kappa));
    const int n = 20000;
    double sum = 0.0, sum_sq = 0.0;
    for (int i = 0; i < n; ++i) {
      const double e = swipt::sample_rician(h_bar, kappa, rng).squaredNorm();
      sum += e;
      sum_sq += e * e;
    }
    const double mean = sum / n;
    const double var = sum_sq / n - mean * mean;
    const double sigma_mean = std::sqrt(var / n);
    CHECK(std::abs(mean - 1.0) <= 3.0 * sigma_mean + 1e-12);
  }

  // kappa = 5 with 1e5 draws: mean energy within 1%
  swipt::SplitMix64 rng(2024);
  double sum = 0.0;
  for (int i = 0; i < 100000; ++i) sum += swipt::sample_rician(h_bar, 5.0, rng).squaredNorm();
  CHECK(std::abs(sum / 100000 - 1.0) <= 0.01);
}

TEST_CASE("pathloss values") {
  CHECK(swipt::pathloss(1.0, 2.2, 30.0) == doctest::Approx(1e-3).epsilon(1e-12));
  CHECK(swipt::pathloss(5.0, 2.2, 30.0) ==
        doctest::Approx(std::pow(10.0, -3.0) * std::pow(5.0, -2.2)).epsilon(1e-12));
  CHECK(swipt::pathloss(50.0, 3.2, 30.0) ==
        doctest::Approx(std::pow(10.0, -3.0) * std::pow(50.0, -3.2)).epsilon(1e-12));
  CHECK(swipt::pathloss(5.0, 2.2, 30.0) == doctest::Approx(2.90e-5).epsilon(1e-2));
  CHECK_THROWS_AS(swipt::pathloss(0.5, 2.0, 30.0), swipt::InvalidInput);
}

TEST_CASE("dbm conversion") {
  CHECK(swipt::dbm_to_watts(-84.0) == doctest::Approx(3.981e-12).epsilon(1e-3));
  CHECK(swipt::dbm_to_watts(30.0) == doctest::Approx(1.0));
}

TEST_CASE("scenario generation: determinism, shapes, pathloss defaults") {
  SystemConfig cfg;  // defaults match the evaluation setup
  const swipt::ChannelSet a = swipt::generate_scenario(cfg, 3);
  const swipt::ChannelSet b = swipt::generate_scenario(cfg, 3);

  REQUIRE(a.h_I.size() == 2);
  REQUIRE(a.h_E.size() == 2);
  CHECK(a.h_I[0].size() == 4);
  CHECK(a.h_E[1].size() == 4);
  for (std::size_t i = 0; i < a.h_I.size(); ++i) CHECK((a.h_I[i] - b.h_I[i]).norm() == 0.0);
  for (std::size_t j = 0; j < a.h_E.size(); ++j) CHECK((a.h_E[j] - b.h_E[j]).norm() == 0.0);
  CHECK(a.aod_I == b.aod_I);

  CHECK(a.rho_E[0] == doctest::Approx(std::pow(10.0, -3.0) * std::pow(5.0, -2.2)).epsilon(1e-12));
  CHECK(a.rho_I[0] == doctest::Approx(std::pow(10.0, -3.0) * std::pow(50.0, -3.2)).epsilon(1e-12));

  const swipt::ChannelSet c = swipt::generate_scenario(cfg, 4);
  CHECK((a.h_I[0] - c.h_I[0]).norm() > 1e-3);

  SystemConfig fixed = cfg;
  fixed.aod_I = {0.25, -0.5};
  const swipt::ChannelSet d = swipt::generate_scenario(fixed, 0);
  CHECK(d.aod_I[0] == doctest::Approx(0.25));
  CHECK(d.aod_I[1] == doctest::Approx(-0.5));
}

TEST_CASE("config validation") {
  SystemConfig cfg;
  cfg.K_I = 5;
  cfg.M = 4;
  CHECK_THROWS_AS(cfg.validate(), swipt::ConfigError);

  SystemConfig neg = SystemConfig{};
  neg.P_max = 0.0;
  CHECK_THROWS_AS(neg.validate(), swipt::ConfigError);

  SystemConfig bad_t = SystemConfig{};
  bad_t.T_i = {8.0};  // K_I = 2
  CHECK_THROWS_AS(bad_t.validate(), swipt::ConfigError);

  SystemConfig db = SystemConfig{};
  db.kappa_is_db = true;
  CHECK(db.kappa_linear(10.0) == doctest::Approx(10.0));
  CHECK(db.kappa_linear(0.0) == doctest::Approx(1.0));
}
