// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tcwave Authors

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "tcw/cascade.hpp"
#include "tcw/engine.hpp"
#include "tcw/error.hpp"

namespace {

using namespace tcw;

const double kSqrt2 = std::sqrt(2.0);

double sum_sq(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0, [](double a, double x) { return a + x * x; });
}

TEST(ScaleLevels, GeometricInC2) {
  EXPECT_EQ(scale_levels(2.0, 1.0, 3), (std::vector<double>{4.0, 16.0, 64.0}));
  EXPECT_EQ(scale_levels(2.0, 1.0, 1), std::vector<double>{4.0});
  const auto s = scale_levels(kSqrt2, 1.0, 2);
  EXPECT_NEAR(s[0], 2.0, 1e-14);
  EXPECT_NEAR(s[1], 4.0, 1e-14);
}

TEST(ScaleLevels, RejectsDomainViolations) {
  EXPECT_THROW(scale_levels(1.0, 1.0, 3), ConfigError);
  EXPECT_THROW(scale_levels(0.5, 1.0, 3), ConfigError);
  EXPECT_THROW(scale_levels(2.0, 0.0, 3), ConfigError);
  EXPECT_THROW(scale_levels(2.0, -1.0, 3), ConfigError);
  EXPECT_THROW(scale_levels(2.0, 1.0, 0), ConfigError);
}

TEST(MuLimit, Values) {
  EXPECT_NEAR(mu_limit(2.0, 1.0, 1), std::sqrt(3.0) / 2.0, 1e-15);
  EXPECT_NEAR(mu_limit(2.0, 1.0, 2), std::sqrt(3.0) / 4.0, 1e-15);
  EXPECT_THROW(mu_limit(2.0, 1.0, 0), ConfigError);
}

TEST(MuLimit, TailConvergesGeometrically) {
  for (double c : {kSqrt2, 2.0, 3.0}) {
    double partial = 0.0;
    for (int k = 1; k <= 40; ++k) {
      partial += std::pow(mu_limit(c, 1.0, k), 2);
      // Remaining variance after k layers is c^(-2k).
      EXPECT_NEAR(1.0 - partial, std::pow(c, -2.0 * k), 1e-13) << "c=" << c << " k=" << k;
    }
  }
}

TEST(MuTruncated, Values) {
  const auto mu = mu_truncated(2.0, 1.0, 8);
  ASSERT_EQ(mu.size(), 8u);
  EXPECT_NEAR(mu[0], 0.0078125, 1e-16);
  EXPECT_NEAR(mu[7], std::sqrt(3.0) / 2.0, 1e-15);
  EXPECT_NEAR(sum_sq(mu), 1.0, 1e-15);
  const auto single = mu_truncated(kSqrt2, 4.0, 1);
  ASSERT_EQ(single.size(), 1u);
  EXPECT_NEAR(single[0], 2.0, 1e-15);
}

TEST(MuTruncated, CumulativeVarianceMatchesLevels) {
  // The first j layers of the truncated cascade at tau_K sit at tau_j.
  const double c = kSqrt2;
  const auto taus = scale_levels(c, 0.5, 9);
  const auto mu = mu_truncated(c, taus.back(), 9);
  double acc = 0.0;
  for (std::size_t k = 0; k < mu.size(); ++k) {
    acc += mu[k] * mu[k];
    EXPECT_NEAR(acc / taus[k], 1.0, 1e-13);
  }
}

TEST(MuDiscrete, RootsOfQuadratic) {
  EXPECT_DOUBLE_EQ(mu_discrete(2.0), 1.0);
  EXPECT_DOUBLE_EQ(mu_discrete(6.0), 2.0);
  EXPECT_EQ(mu_discrete(0.0), 0.0);
  EXPECT_THROW(mu_discrete(-1e-9), ConfigError);
}

TEST(MuDiscrete, RoundTrip) {
  for (double mu : {1e-8, 1e-3, 0.1, 0.5, 1.0, 3.7, 120.0, 1e5}) {
    const double dtau = mu * mu + mu;
    EXPECT_NEAR(mu_discrete(dtau) / mu, 1.0, 1e-12) << mu;
  }
}

TEST(BuildCascade, DiscreteIncrements) {
  const auto s = build_cascade(2.0, 1.0, 2, 1.0, CascadeMode::discrete);
  ASSERT_EQ(s.mu_disc.size(), 2u);
  EXPECT_NEAR(s.mu_disc[0], (std::sqrt(17.0) - 1.0) / 2.0, 1e-14);
  EXPECT_NEAR(s.mu_disc[1], 3.0, 1e-14);
  const auto r = build_cascade(kSqrt2, 1.0, 3);
  EXPECT_NEAR(r.tau_levels[0], 2.0, 1e-14);
  EXPECT_NEAR(r.tau_levels[1], 4.0, 1e-14);
  EXPECT_NEAR(r.tau_levels[2], 8.0, 1e-14);
}

class CascadeInvariants
    : public ::testing::TestWithParam<std::tuple<double, double, int, double>> {};

TEST_P(CascadeInvariants, VarianceIdentities) {
  const auto [c, tau0, K, dt] = GetParam();
  const auto s = build_cascade(c, tau0, K, dt);
  const double tauK = s.tau_levels.back();
  EXPECT_NEAR(sum_sq(s.mu_cont) / tauK, 1.0, 1e-12);
  double disc = 0.0;
  for (double m : s.mu_disc) disc += m * m + m;
  EXPECT_NEAR(disc / (tauK / (dt * dt)), 1.0, 1e-12);
  for (std::size_t k = 1; k < s.tau_levels.size(); ++k) {
    EXPECT_GT(s.tau_levels[k], s.tau_levels[k - 1]);
  }
  for (double m : s.mu_cont) EXPECT_GT(m, 0.0);
  for (double m : s.mu_disc) EXPECT_GT(m, 0.0);
}

INSTANTIATE_TEST_SUITE_P(Grid, CascadeInvariants,
                         ::testing::Values(std::make_tuple(2.0, 1.0, 8, 1.0),
                                           std::make_tuple(kSqrt2, 1.0, 8, 1.0),
                                           std::make_tuple(kSqrt2, 0.01, 20, 0.5),
                                           std::make_tuple(3.0, 1e-4, 12, 2.0),
                                           std::make_tuple(1.1, 2.0, 30, 1.0),
                                           std::make_tuple(2.0, 1.0, 1, 0.1)));

TEST(BuildCascade, FilterMuByMode) {
  const auto d = build_cascade(2.0, 1.0, 3, 0.5, CascadeMode::discrete);
  EXPECT_EQ(d.filter_mu(), d.mu_disc);
  const auto s = build_cascade(2.0, 1.0, 3, 0.5, CascadeMode::continuous_truncated);
  const auto f = s.filter_mu();
  for (std::size_t k = 0; k < f.size(); ++k) EXPECT_DOUBLE_EQ(f[k], s.mu_cont[k] / 0.5);
  EXPECT_THROW(build_cascade(2.0, 1.0, 3, 0.0), ConfigError);
}

TEST(DefaultCascade, EightLevelsAtOrBelowSigmaMin) {
  for (double c : {kSqrt2, 2.0}) {
    const auto s = default_cascade(c, 1.0, 64.0);
    int below = 0;
    for (std::size_t k = 0; k < s.layers(); ++k) below += s.sigma(k) <= 1.0 + 1e-12;
    EXPECT_EQ(below, 8);
    EXPECT_GE(s.sigma(s.layers() - 1), 64.0 * (1 - 1e-12));
    EXPECT_LT(s.sigma(s.layers() - 2), 64.0);
  }
}

TEST(Delays, ClosedForms) {
  EXPECT_NEAR(mean_delay_continuous(2.0, 1.0), std::sqrt(3.0), 1e-15);
  EXPECT_NEAR(mean_delay_continuous(kSqrt2, 1.0), 1.0 + kSqrt2, 1e-14);
  EXPECT_NEAR(mean_delay_continuous(2.0, 4.0), 2.0 * std::sqrt(3.0), 1e-14);
  EXPECT_NEAR(tmax_delay_approx(2.0, 1.0), 1.125, 1e-15);
  EXPECT_NEAR(tmax_delay_approx(2.0, 4.0), 2.25, 1e-15);
  // (sqrt2 + 1)^2 / (2 sqrt2 * sqrt((sqrt2 - 1) * 2 sqrt2)) evaluated by hand.
  EXPECT_NEAR(tmax_delay_approx(kSqrt2, 1.0), 5.828427124746190 / (2.0 * kSqrt2 * 1.082392200292394),
              1e-12);
  EXPECT_NEAR(tmax_delay_approx(kSqrt2, 1.0), 1.90380, 1e-5);
}

TEST(Delays, ScaleWithSqrtTau) {
  for (double c : {kSqrt2, 2.0, 5.0}) {
    EXPECT_NEAR(mean_delay_continuous(c, 36.0), 2.0 * mean_delay_continuous(c, 9.0), 1e-12);
    EXPECT_NEAR(tmax_delay_approx(c, 36.0), 2.0 * tmax_delay_approx(c, 9.0), 1e-12);
  }
}

TEST(Delays, DiscreteImpulse) {
  KernelSamples k;
  k.values = {1.0, 0.0, 0.0};
  const auto d = delay_measures_discrete(k);
  EXPECT_EQ(d.mean_delay, 0.0);
  EXPECT_EQ(d.tmax_delay, 0.0);
  EXPECT_EQ(d.kind, DelayKind::discrete_empirical);
}

TEST(Delays, DiscreteMeanIsSumOfTimeConstants) {
  const auto s = build_cascade(2.0, 1.0, 8);
  const std::size_t last = s.layers() - 1;
  const auto k = equivalent_kernel(s, last, required_kernel_length(s, last, 1e-13), 1e-13);
  const double expect = std::accumulate(s.mu_disc.begin(), s.mu_disc.end(), 0.0);
  EXPECT_NEAR(delay_measures_discrete(k).mean_delay / expect, 1.0, 1e-6);
  EXPECT_LT(delay_measures_discrete(k).mean_delay, mean_delay_continuous(2.0, s.tau_levels.back()));
}

TEST(Delays, RejectsBadKernels) {
  KernelSamples k;
  EXPECT_THROW(delay_measures_discrete(k), ConfigError);
  k.values = {0.0, 0.0};
  EXPECT_THROW(delay_measures_discrete(k), ConfigError);
}

TEST(Parabolic, Offsets) {
  EXPECT_EQ(parabolic_offset(1.0, 2.0, 1.0), 0.0);
  // Vertex of -(x - 0.25)^2 sampled at -1, 0, 1.
  auto f = [](double x) { return -(x - 0.25) * (x - 0.25); };
  EXPECT_NEAR(parabolic_offset(f(-1), f(0), f(1)), 0.25, 1e-15);
  EXPECT_EQ(parabolic_offset(1.0, 1.0, 1.0), 0.0);
  EXPECT_LE(std::abs(parabolic_offset(0.0, 1.0, 50.0)), 1.0);
}

}  // namespace
