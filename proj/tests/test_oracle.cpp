// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tcwave Authors

#include <gtest/gtest.h>

#include <boost/math/special_functions/bessel.hpp>
#include <cmath>
#include <numbers>
#include <numeric>

#include "tcw/cascade.hpp"
#include "tcw/error.hpp"
#include "tcw/oracle.hpp"
#include "tcw/wavelets.hpp"

namespace {

using namespace tcw;

const double kSqrt2 = std::sqrt(2.0);
const double kPi = std::numbers::pi;

template <class F>
double trapezoid(F f, double a, double b, std::size_t n) {
  const double h = (b - a) / static_cast<double>(n);
  double s = 0.5 * (f(a) + f(b));
  for (std::size_t i = 1; i < n; ++i) s += f(a + h * static_cast<double>(i));
  return s * h;
}

TEST(SeriesCoefficients, Examples) {
  EXPECT_EQ(series_coefficients(std::vector<double>{3.5}), std::vector<double>{1.0});
  const auto A = series_coefficients(std::vector<double>{2.0, 1.0});
  ASSERT_EQ(A.size(), 2u);
  EXPECT_NEAR(A[0], 2.0, 1e-15);
  EXPECT_NEAR(A[1], -1.0, 1e-15);
  EXPECT_THROW(series_coefficients(std::vector<double>{1.0, 1.0}), ConfigError);
}

TEST(SeriesCoefficients, Identities) {
  for (double c : {2.0, 3.0, 1.5}) {
    const auto mus = mu_truncated(c, 1.0, 8);
    const auto A = series_coefficients(mus);
    double sum = 0.0, at_zero = 0.0;
    for (std::size_t k = 0; k < A.size(); ++k) {
      sum += A[k];
      at_zero += A[k] / mus[k];
    }
    EXPECT_NEAR(sum, 1.0, 1e-9) << c;
    EXPECT_NEAR(at_zero, 0.0, 1e-9) << c;
  }
}

TEST(EvalSeries, TwoPoleClosedForm) {
  // Convolving e^{-t/2}/2 with e^{-t} gives e^{-t/2} - e^{-t}.
  const auto k0 = make_series_kernel({2.0, 1.0}, 0);
  const auto k1 = make_series_kernel({2.0, 1.0}, 1);
  const auto k2 = make_series_kernel({2.0, 1.0}, 2);
  for (double t : {0.0, 0.3, 1.0, 2.5, 7.0}) {
    EXPECT_NEAR(eval_series(k0, t), std::exp(-t / 2) - std::exp(-t), 1e-15);
    EXPECT_NEAR(eval_series(k1, t), -0.5 * std::exp(-t / 2) + std::exp(-t), 1e-15);
    EXPECT_NEAR(eval_series(k2, t), 0.25 * std::exp(-t / 2) - std::exp(-t), 1e-15);
  }
  EXPECT_EQ(eval_series(k0, -1.0), 0.0);
  EXPECT_LT(eval_series(k0, 80.0), 1e-17);
}

TEST(EvalSeries, UnitMass) {
  const auto k = make_series_kernel(mu_truncated(2.0, 1.0, 8), 0);
  EXPECT_NEAR(std::abs(eval_series(k, 0.0)), 0.0, 1e-9);
  const double mass = trapezoid([&](double t) { return eval_series(k, t); }, 0.0, 40.0, 400000);
  EXPECT_NEAR(mass, 1.0, 1e-6);
  EXPECT_NEAR(k.tau(), 1.0, 1e-14);
}

TEST(CascadeKernel, MatchesSeries) {
  const auto mus = mu_truncated(2.0, 1.0, 8);
  const CascadeKernel ss(mus);
  for (int n = 0; n <= 2; ++n) {
    const auto sk = make_series_kernel(mus, n);
    double peak = 0.0;
    for (double t = 0.0; t < 8.0; t += 0.01) peak = std::max(peak, std::abs(eval_series(sk, t)));
    for (double t : {0.05, 0.2, 0.7, 1.3, 3.0, 6.0}) {
      EXPECT_NEAR(ss.eval(n, t), eval_series(sk, t), 1e-9 * peak) << "n=" << n << " t=" << t;
    }
  }
  EXPECT_EQ(ss.eval(0, -0.5), 0.0);
}

TEST(CascadeKernel, HandlesRepeatedTimeConstants) {
  // Two equal poles: the convolution of two exponentials is t e^{-t}.
  const CascadeKernel k({1.0, 1.0});
  for (double t : {0.1, 1.0, 4.0}) EXPECT_NEAR(k.eval(0, t), t * std::exp(-t), 1e-13);
  EXPECT_NEAR(k.eval(1, 2.0), (1.0 - 2.0) * std::exp(-2.0), 1e-13);
}

TEST(ContinuousNorm, TwoPoleClosedForms) {
  const auto k0 = make_series_kernel({2.0, 1.0}, 0);
  const auto k1 = make_series_kernel({2.0, 1.0}, 1);
  EXPECT_NEAR(continuous_lp_norm(k0, 1.0, 0.0), 1.0, 1e-10);
  // Integral of (e^{-t/2} - e^{-t})^2 is 1 - 4/3 + 1/2.
  EXPECT_NEAR(continuous_lp_norm(k0, 2.0, 0.0), std::sqrt(1.0 / 6.0), 1e-10);
  // Kernel rises from 0 to its peak 1/4 and decays, so the derivative has L1 norm 1/2.
  EXPECT_NEAR(continuous_lp_norm(k1, 1.0, 0.0), 0.5, 1e-10);
  const CascadeKernel ss({2.0, 1.0});
  EXPECT_NEAR(continuous_lp_norm(ss, 1, 1.0, 0.0), 0.5, 1e-9);
}

TEST(ContinuousNorm, ReferenceTableEntries) {
  EXPECT_NEAR(limit_kernel_norm(2.0, 1.0, 2, 2.0), 2.084, 0.01);
  EXPECT_NEAR(limit_kernel_norm(kSqrt2, 1.0, 2, 1.0), 1.555, 0.01);
  EXPECT_NEAR(limit_kernel_norm(kSqrt2, 1.0, 1, 2.0), 0.513, 0.01);
}

TEST(ContinuousNorm, GammaOneL1IsScaleInvariant) {
  for (int n : {1, 2}) {
    const double a = limit_kernel_norm(2.0, 1.0, n, 1.0, 1.0);
    const double b = limit_kernel_norm(2.0, 4.0, n, 1.0, 1.0);
    const double d = limit_kernel_norm(2.0, 9.0, n, 1.0, 1.0);
    EXPECT_NEAR(b / a, 1.0, 1e-8) << n;
    EXPECT_NEAR(d / a, 1.0, 1e-8) << n;
  }
}

TEST(ContinuousNorm, RecurrenceOverLevels) {
  // One level up multiplies the unnormalized Lp norm by c^{-(n+1) + 1/p}.
  for (int n : {1, 2}) {
    for (double p : {1.0, 2.0}) {
      const double a = limit_kernel_norm(2.0, 1.0, n, p, 0.0);
      const double b = limit_kernel_norm(2.0, 4.0, n, p, 0.0);
      EXPECT_NEAR(b, norm_at_level(a, 2.0, 1, n, p), 1e-8 * a) << n << ' ' << p;
    }
  }
}

TEST(ContinuousNorm, Moments) {
  const auto k = make_series_kernel(mu_truncated(2.0, 1.0, 8), 0);
  EXPECT_NEAR(series_moment(k, 0), 1.0, 1e-10);
  const auto mus = mu_truncated(2.0, 1.0, 8);
  EXPECT_NEAR(series_moment(k, 1), std::accumulate(mus.begin(), mus.end(), 0.0), 1e-10);
  // Mean of the infinite cascade is the sum of its time constants.
  const auto many = mu_limit_series(2.0, 1.0, 60);
  EXPECT_NEAR(std::accumulate(many.begin(), many.end(), 0.0), mean_delay_continuous(2.0, 1.0),
              1e-12);
}

TEST(Gaussian, KernelValues) {
  EXPECT_NEAR(gaussian_kernel(0.0, 1.0, 0), 1.0 / std::sqrt(2.0 * kPi), 1e-15);
  EXPECT_NEAR(gaussian_kernel(0.0, 1.0, 0), 0.39894, 1e-5);
  EXPECT_EQ(gaussian_kernel(0.0, 3.0, 1), 0.0);
  EXPECT_NEAR(gaussian_kernel(2.0, 4.0, 2), 0.0, 1e-16);
  EXPECT_NEAR(gaussian_kernel(-2.0, 4.0, 2), 0.0, 1e-16);
  EXPECT_THROW(gaussian_kernel(0.0, 0.0, 0), ConfigError);
}

TEST(Gaussian, NormsAgainstQuadrature) {
  for (double tau : {0.5, 1.0, 4.0}) {
    const double L = 12.0 * std::sqrt(tau);
    for (int n : {1, 2}) {
      for (double p : {1.0, 2.0}) {
        const double q = trapezoid(
            [&](double t) { return std::pow(std::abs(gaussian_kernel(t, tau, n)), p); }, -L, L,
            200000);
        EXPECT_NEAR(gaussian_derivative_norms(tau, n, p), std::pow(q, 1.0 / p),
                    1e-7 * std::pow(q, 1.0 / p))
            << tau << ' ' << n << ' ' << p;
      }
    }
  }
  EXPECT_NEAR(gaussian_derivative_norms(1.0, 1, 1.0), 0.79788, 1e-5);
  EXPECT_NEAR(gaussian_derivative_norms(1.0, 2, 1.0), 0.96788, 1e-5);
  EXPECT_NEAR(gaussian_derivative_norms(1.0, 1, 2.0), 0.37556, 1e-5);
  EXPECT_THROW(gaussian_derivative_norms(1.0, 3, 1.0), ConfigError);
}

long double bessel_series_oracle(long m, long double tau) {
  long double term = std::pow(tau / 2, static_cast<long double>(m));
  for (long i = 1; i <= m; ++i) term /= i;
  long double sum = 0;
  for (long k = 0; k < 400; ++k) {
    sum += term;
    term *= (tau / 2) * (tau / 2) / ((k + 1) * (k + 1 + m));
  }
  return std::exp(-tau) * sum;
}

TEST(DiscreteGaussian, Values) {
  EXPECT_EQ(discrete_gaussian(0, 0.0), 1.0);
  EXPECT_EQ(discrete_gaussian(3, 0.0), 0.0);
  EXPECT_EQ(discrete_gaussian(-2, 0.0), 0.0);
  EXPECT_NEAR(discrete_gaussian(0, 1.0), 0.46576, 1e-5);
  EXPECT_THROW(discrete_gaussian(0, -1.0), ConfigError);
}

TEST(DiscreteGaussian, AgreesWithSeriesAndBessel) {
  for (double tau : {0.3, 1.0, 5.0, 19.9, 20.0, 20.1, 35.0, 80.0, 300.0}) {
    for (long m : {0L, 1L, 2L, 5L, 17L}) {
      const double v = discrete_gaussian(m, tau);
      const double ref = std::exp(-tau) * boost::math::cyl_bessel_i(static_cast<double>(m), tau);
      EXPECT_NEAR(v, ref, 1e-12 * std::max(ref, 1e-300) + 1e-300) << tau << ' ' << m;
      if (tau < 40.0) {
        EXPECT_NEAR(v, static_cast<double>(bessel_series_oracle(m, tau)), 1e-13 * ref + 1e-300)
            << tau << ' ' << m;
      }
      EXPECT_EQ(v, discrete_gaussian(-m, tau));
    }
  }
}

TEST(DiscreteGaussian, KernelSumAndVariance) {
  for (double tau : {0.5, 4.0, 19.5, 20.0, 25.0, 100.0}) {
    const long r = static_cast<long>(std::ceil(12.0 * std::sqrt(tau))) + 20;
    const auto k = discrete_gaussian_kernel(tau, r);
    ASSERT_EQ(k.size(), static_cast<std::size_t>(2 * r + 1));
    double sum = 0.0, var = 0.0;
    for (long m = -r; m <= r; ++m) {
      const double v = k[static_cast<std::size_t>(m + r)];
      EXPECT_EQ(v, k[static_cast<std::size_t>(r - m)]);
      sum += v;
      var += static_cast<double>(m * m) * v;
    }
    EXPECT_NEAR(sum, 1.0, 1e-12) << tau;
    EXPECT_NEAR(var, tau, 1e-9 * std::max(1.0, tau)) << tau;
  }
}

TEST(DifferenceOfGaussians, ConvergesToSecondDerivative) {
  const double r1 = dog_vs_gtt_residual(1.0, 0.1);
  const double r2 = dog_vs_gtt_residual(1.0, 0.05);
  const double r3 = dog_vs_gtt_residual(1.0, 0.025);
  const double r4 = dog_vs_gtt_residual(1.0, 0.01);
  EXPECT_GT(r1, r2);
  EXPECT_GT(r2, r3);
  EXPECT_GT(r3, r4);
  // Leading error term is linear in dtau.
  EXPECT_NEAR(r1 / r2, 2.0, 0.2);
  const double dog_mass = trapezoid(
      [](double t) { return gaussian_kernel(t, 1.3, 0) - gaussian_kernel(t, 1.0, 0); }, -30, 30,
      60000);
  EXPECT_NEAR(dog_mass, 0.0, 1e-12);
}

TEST(Fourier, DcGainAndMonotone) {
  const auto spec = build_cascade(kSqrt2, 4.0, 8);
  std::vector<double> grid;
  for (int i = 0; i <= 200; ++i) grid.push_back(0.005 * i);
  const auto r = fourier_magnitude_check(spec, grid);
  EXPECT_EQ(r.continuous[0], 1.0);
  EXPECT_EQ(r.discrete[0], 1.0);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    EXPECT_LT(r.continuous[i], r.continuous[i - 1]);
    EXPECT_LT(r.discrete[i], r.discrete[i - 1]);
  }
}

TEST(Fourier, DiscreteApproachesContinuousAtLowFrequency) {
  const auto spec = build_cascade(kSqrt2, 4.0, 12);
  std::vector<double> low{0.001, 0.002, 0.004};
  std::vector<double> high{0.1, 0.2, 0.4};
  EXPECT_LT(fourier_magnitude_check(spec, low).max_deviation,
            fourier_magnitude_check(spec, high).max_deviation);
  EXPECT_LT(fourier_magnitude_check(spec, low).max_deviation, 1e-3);
}

TEST(Fourier, HalfPowerShiftsByInverseC) {
  for (double c : {kSqrt2, 2.0}) {
    const double a = half_power_frequency(mu_truncated(c, 1.0, 8));
    const double b = half_power_frequency(mu_truncated(c, c * c, 8));
    EXPECT_NEAR(b / a, 1.0 / c, 1e-12) << c;
    EXPECT_NEAR(continuous_magnitude(mu_truncated(c, 1.0, 8), a), 1.0 / kSqrt2, 1e-12);
  }
}

}  // namespace
