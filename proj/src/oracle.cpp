// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The tcwave Authors

#include "tcw/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/tools/roots.hpp>
#include <unsupported/Eigen/MatrixFunctions>

#include "tcw/error.hpp"

namespace tcw {
namespace {

constexpr double kPi = std::numbers::pi;

void check_mus(std::span<const double> mus) {
  if (mus.empty()) throw ConfigError("at least one time constant is required");
  for (double m : mus) {
    if (!std::isfinite(m) || !(m > 0.0)) throw ConfigError("time constants must be finite and > 0");
  }
}

void check_tau(double tau) {
  if (!std::isfinite(tau) || !(tau > 0.0)) throw ConfigError("tau must be > 0");
}

// Grid that resolves both the finest time constant near t = 0 and the slow
// decay of the coarsest one.
std::vector<double> quadrature_grid(double mu_min, double mu_max, double t_end) {
  std::vector<double> grid{0.0};
  const double lo = mu_min / 64.0;
  const double hi = std::min(mu_max, t_end);
  if (lo < hi) {
    const int n = static_cast<int>(std::ceil(16.0 * std::log2(hi / lo)));
    for (int i = 0; i <= n; ++i) grid.push_back(lo * std::pow(hi / lo, double(i) / n));
  }
  const double step = mu_max / 16.0;
  for (double t = step; t < t_end; t += step) grid.push_back(t);
  grid.push_back(t_end);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

// Doubles t from `start` until bound(t) < eps.
double find_cutoff(const std::function<double(double)>& bound, double start, double eps) {
  double t = start;
  for (int i = 0; i < 64; ++i, t *= 2.0) {
    if (bound(t) < eps) return t;
  }
  throw NumericError("kernel tail does not decay");
}

double bessel_series_scaled(long m, double tau) {
  // exp(-tau) sum_j (tau/2)^(2j+m) / (j! (j+m)!) summed in log space.
  const double lt = std::log(tau / 2.0);
  double sum = 0.0;
  for (long j = 0;; ++j) {
    const double lterm = (2.0 * j + m) * lt - std::lgamma(j + 1.0) - std::lgamma(j + m + 1.0) - tau;
    const double term = std::exp(lterm);
    sum += term;
    if (j > tau && term <= 1e-18 * sum) break;
    if (j > 100000) throw NumericError("discrete Gaussian series does not converge");
  }
  return sum;
}

// Miller backward recurrence I_{m-1} = (2m/tau) I_m + I_{m+1}, normalized by
// I_0 + 2 sum_{m>=1} I_m = exp(tau). Returns T(0..radius).
std::vector<double> bessel_backward_scaled(long radius, double tau) {
  const long start = radius + static_cast<long>(std::ceil(12.0 * std::sqrt(tau))) + 40;
  std::vector<double> v(static_cast<std::size_t>(start) + 2, 0.0);
  v[start] = 1e-280;
  for (long m = start; m >= 1; --m) {
    v[m - 1] = (2.0 * m / tau) * v[m] + v[m + 1];
    if (v[m - 1] > 1e250) {
      for (long i = m - 1; i <= start; ++i) v[i] *= 1e-250;
    }
  }
  double norm = v[0];
  for (long m = 1; m <= start; ++m) norm += 2.0 * v[m];
  std::vector<double> out(static_cast<std::size_t>(radius) + 1);
  for (long m = 0; m <= radius; ++m) out[m] = v[m] / norm;
  return out;
}

constexpr double kBesselSwitchTau = 20.0;

}  // namespace

double SeriesKernel::tau() const {
  return std::accumulate(mus.begin(), mus.end(), 0.0, [](double a, double m) { return a + m * m; });
}

std::vector<double> series_coefficients(std::span<const double> mus) {
  check_mus(mus);
  const std::size_t K = mus.size();
  for (std::size_t i = 0; i < K; ++i) {
    for (std::size_t j = i + 1; j < K; ++j) {
      if (std::abs(mus[i] - mus[j]) < 1e-9 * std::max(mus[i], mus[j])) {
        throw ConfigError("partial fractions need distinct time constants (layers " +
                          std::to_string(i + 1) + " and " + std::to_string(j + 1) + " coincide)");
      }
    }
  }
  std::vector<double> A(K, 1.0);
  for (std::size_t k = 0; k < K; ++k) {
    for (std::size_t i = 0; i < K; ++i) {
      if (i != k) A[k] /= 1.0 - mus[i] / mus[k];
    }
  }
  return A;
}

SeriesKernel make_series_kernel(std::vector<double> mus, int order) {
  if (order < 0) throw ConfigError("derivative order must be >= 0");
  SeriesKernel k;
  k.A = series_coefficients(mus);
  k.mus = std::move(mus);
  k.order = order;
  return k;
}

double eval_series(const SeriesKernel& kernel, double t) {
  if (t < 0.0) return 0.0;
  double sum = 0.0;
  for (std::size_t k = 0; k < kernel.mus.size(); ++k) {
    const double mu = kernel.mus[k];
    sum += std::pow(-1.0 / mu, kernel.order) * (kernel.A[k] / mu) * std::exp(-t / mu);
  }
  return sum;
}

CascadeKernel::CascadeKernel(std::vector<double> mus) : mus_(std::move(mus)) { check_mus(mus_); }

double CascadeKernel::tau() const {
  return std::accumulate(mus_.begin(), mus_.end(), 0.0, [](double a, double m) { return a + m * m; });
}

double CascadeKernel::eval(int order, double t) const {
  if (order < 0) throw ConfigError("derivative order must be >= 0");
  if (t < 0.0) return 0.0;
  const auto K = static_cast<Eigen::Index>(mus_.size());
  // mu_k x_k' = x_{k-1} - x_k with x_0 the input; an impulse leaves
  // x(0+) = e_1 / mu_1.
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(K, K);
  for (Eigen::Index k = 0; k < K; ++k) {
    M(k, k) = -1.0 / mus_[k];
    if (k > 0) M(k, k - 1) = 1.0 / mus_[k];
  }
  Eigen::VectorXd x0 = Eigen::VectorXd::Zero(K);
  x0(0) = 1.0 / mus_[0];
  Eigen::MatrixXd E = (M * t).exp();
  Eigen::VectorXd x = E * x0;
  for (int i = 0; i < order; ++i) x = M * x;
  return x(K - 1);
}

QuadratureResult integrate_abs_pow(const std::function<double(double)>& f, double p,
                                   std::span<const double> grid, double tol) {
  if (!(p > 0.0)) throw ConfigError("Lp exponent must be > 0");
  if (grid.size() < 2) throw ConfigError("quadrature grid needs at least two points");
  using boost::math::quadrature::gauss_kronrod;

  // Split points: the grid plus every sign change of f between grid points.
  std::vector<double> cuts{grid[0]};
  std::vector<bool> at_root{false};
  double f_prev = f(grid[0]);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double a = grid[i - 1];
    const double b = grid[i];
    const double fb = f(b);
    if ((f_prev < 0.0 && fb > 0.0) || (f_prev > 0.0 && fb < 0.0)) {
      boost::uintmax_t iters = 200;
      const auto bracket = boost::math::tools::toms748_solve(
          f, a, b, f_prev, fb, boost::math::tools::eps_tolerance<double>(52), iters);
      cuts.push_back(0.5 * (bracket.first + bracket.second));
      at_root.push_back(true);
    }
    cuts.push_back(b);
    at_root.push_back(false);
    f_prev = fb;
  }

  // |f|^p behaves like |t - root|^p next to a root; for non-integer p that
  // endpoint singularity needs a rule that clusters nodes at the ends.
  const bool singular_ends = p != std::floor(p);
  auto integrand = [&](double t) { return std::pow(std::abs(f(t)), p); };
  boost::math::quadrature::tanh_sinh<double> ts(10);
  QuadratureResult r;
  for (std::size_t i = 1; i < cuts.size(); ++i) {
    if (!(cuts[i] > cuts[i - 1])) continue;
    double err = 0.0;
    if (singular_ends && (at_root[i - 1] || at_root[i])) {
      r.value += ts.integrate(integrand, cuts[i - 1], cuts[i], 1e-12, &err);
    } else {
      // Pieces next to a root hold almost nothing, and rounding noise keeps a
      // relative criterion from ever converging there, so depth is capped and
      // the error is judged against the total below.
      r.value += gauss_kronrod<double, 31>::integrate(integrand, cuts[i - 1], cuts[i], 8, 1e-12,
                                                      &err);
    }
    // Both rules report the error of the piece mapped onto [-1, 1]; scale it
    // back to the piece width (conservative for nested Gauss-Kronrod levels).
    r.error += err * 0.5 * (cuts[i] - cuts[i - 1]);
  }
  if (!std::isfinite(r.value) || r.error > tol * std::max(std::abs(r.value), 1e-300)) {
    throw NumericError("quadrature did not converge: estimate " + std::to_string(r.value) +
                       ", error " + std::to_string(r.error));
  }
  return r;
}

double continuous_lp_norm(const SeriesKernel& kernel, double p, double gamma) {
  const auto [mn, mx] = std::minmax_element(kernel.mus.begin(), kernel.mus.end());
  const int n = kernel.order;
  auto tail = [&](double t) {
    double s = 0.0;
    for (std::size_t k = 0; k < kernel.mus.size(); ++k) {
      s += std::abs(kernel.A[k]) * std::pow(kernel.mus[k], -n) * std::exp(-t / kernel.mus[k]);
    }
    return s;
  };
  const double t_end = find_cutoff(tail, *mx, 1e-13);
  const auto grid = quadrature_grid(*mn, *mx, t_end);
  const auto q = integrate_abs_pow([&](double t) { return eval_series(kernel, t); }, p, grid);
  return std::pow(kernel.tau(), n * gamma / 2.0) * std::pow(q.value, 1.0 / p);
}

double continuous_lp_norm(const CascadeKernel& kernel, int order, double p, double gamma) {
  const auto& mus = kernel.mus();
  const auto [mn, mx] = std::minmax_element(mus.begin(), mus.end());
  const double total = std::accumulate(mus.begin(), mus.end(), 0.0);
  auto tail = [&](double t) {
    return *mx * (std::abs(kernel.eval(0, t)) + std::abs(kernel.eval(order, t)));
  };
  const double t_end = find_cutoff(tail, total + 20.0 * *mx, 1e-14);
  const auto grid = quadrature_grid(*mn, *mx, t_end);
  const auto q = integrate_abs_pow([&](double t) { return kernel.eval(order, t); }, p, grid);
  return std::pow(kernel.tau(), order * gamma / 2.0) * std::pow(q.value, 1.0 / p);
}

double limit_kernel_norm(double c, double tau, int order, double p, double gamma, int K) {
  auto mus = mu_truncated(c, tau, K);
  bool distinct = true;
  for (std::size_t i = 0; i < mus.size(); ++i) {
    for (std::size_t j = i + 1; j < mus.size(); ++j) {
      if (std::abs(mus[i] - mus[j]) < 1e-9 * std::max(mus[i], mus[j])) distinct = false;
    }
  }
  if (distinct) return continuous_lp_norm(make_series_kernel(std::move(mus), order), p, gamma);
  return continuous_lp_norm(CascadeKernel(std::move(mus)), order, p, gamma);
}

double series_moment(const SeriesKernel& kernel, int power) {
  if (power < 0) throw ConfigError("moment power must be >= 0");
  SeriesKernel smooth = kernel;
  smooth.order = 0;
  const auto [mn, mx] = std::minmax_element(smooth.mus.begin(), smooth.mus.end());
  auto tail = [&](double t) {
    double s = 0.0;
    for (std::size_t k = 0; k < smooth.mus.size(); ++k) {
      s += std::abs(smooth.A[k]) * std::pow(t, power) * std::exp(-t / smooth.mus[k]);
    }
    return s;
  };
  const double t_end = find_cutoff(tail, *mx, 1e-15);
  const auto grid = quadrature_grid(*mn, *mx, t_end);
  // The smoothing kernel is nonnegative, so |t^m Psi| = t^m Psi.
  const auto q = integrate_abs_pow(
      [&](double t) { return std::pow(t, power) * eval_series(smooth, t); }, 1.0, grid, 1e-10);
  return q.value;
}

double gaussian_kernel(double t, double tau, int order) {
  check_tau(tau);
  const double g = std::exp(-t * t / (2.0 * tau)) / std::sqrt(2.0 * kPi * tau);
  switch (order) {
    case 0: return g;
    case 1: return -(t / tau) * g;
    case 2: return ((t * t - tau) / (tau * tau)) * g;
    default: throw ConfigError("Gaussian derivative order must be 0, 1 or 2");
  }
}

double gaussian_derivative_norms(double tau, int order, double p) {
  check_tau(tau);
  const double pi_q = std::pow(kPi, 0.25);
  if (order == 1 && p == 1.0) return std::sqrt(2.0 / kPi) / std::sqrt(tau);
  if (order == 1 && p == 2.0) return 1.0 / (2.0 * pi_q * std::pow(tau, 0.75));
  if (order == 2 && p == 1.0) return std::sqrt(8.0 / (std::numbers::e * kPi)) / tau;
  if (order == 2 && p == 2.0) return std::sqrt(1.5) / (2.0 * pi_q * std::pow(tau, 1.25));
  throw ConfigError("closed-form Gaussian norms exist for order 1, 2 and p 1, 2 only");
}

double discrete_gaussian(long m, double tau) {
  if (!std::isfinite(tau) || tau < 0.0) throw ConfigError("tau must be >= 0");
  const long am = std::labs(m);
  if (tau == 0.0) return am == 0 ? 1.0 : 0.0;
  if (tau < kBesselSwitchTau) return bessel_series_scaled(am, tau);
  return bessel_backward_scaled(am, tau)[am];
}

std::vector<double> discrete_gaussian_kernel(double tau, long radius) {
  if (!std::isfinite(tau) || tau < 0.0) throw ConfigError("tau must be >= 0");
  if (radius < 0) throw ConfigError("radius must be >= 0");
  std::vector<double> half;
  if (tau == 0.0) {
    half.assign(static_cast<std::size_t>(radius) + 1, 0.0);
    half[0] = 1.0;
  } else if (tau < kBesselSwitchTau) {
    half.resize(static_cast<std::size_t>(radius) + 1);
    for (long m = 0; m <= radius; ++m) half[m] = bessel_series_scaled(m, tau);
  } else {
    half = bessel_backward_scaled(radius, tau);
  }
  std::vector<double> out(2 * static_cast<std::size_t>(radius) + 1);
  for (long m = -radius; m <= radius; ++m) out[m + radius] = half[std::labs(m)];
  return out;
}

double dog_vs_gtt_residual(double tau, double dtau) {
  check_tau(tau);
  if (!(dtau > 0.0)) throw ConfigError("dtau must be > 0");
  const double s = std::sqrt(tau + dtau);
  constexpr int kPoints = 4001;
  double max_err = 0.0;
  double max_ref = 0.0;
  for (int i = 0; i < kPoints; ++i) {
    const double t = -10.0 * s + 20.0 * s * i / (kPoints - 1);
    const double dog = gaussian_kernel(t, tau + dtau, 0) - gaussian_kernel(t, tau, 0);
    const double ref = 0.5 * dtau * gaussian_kernel(t, tau, 2);
    max_err = std::max(max_err, std::abs(dog - ref));
    max_ref = std::max(max_ref, std::abs(ref));
  }
  return max_err / max_ref;
}

double continuous_magnitude(std::span<const double> mus, double omega) {
  std::complex<double> h{1.0, 0.0};
  for (double m : mus) h /= std::complex<double>(1.0, m * omega);
  return std::abs(h);
}

double discrete_magnitude(std::span<const double> mus_samples, double omega_per_sample) {
  const std::complex<double> z_inv = std::polar(1.0, -omega_per_sample);
  std::complex<double> h{1.0, 0.0};
  for (double m : mus_samples) h /= 1.0 + m * (1.0 - z_inv);
  return std::abs(h);
}

double half_power_frequency(std::span<const double> mus) {
  check_mus(mus);
  const double target = 1.0 / std::sqrt(2.0);
  double lo = 0.0;
  double hi = 1.0 / *std::max_element(mus.begin(), mus.end());
  while (continuous_magnitude(mus, hi) > target) hi *= 2.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (continuous_magnitude(mus, mid) > target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

FourierCheck fourier_magnitude_check(const CascadeSpec& spec, std::span<const double> omega_grid) {
  FourierCheck r;
  r.omega.assign(omega_grid.begin(), omega_grid.end());
  for (double w : omega_grid) {
    const double hc = continuous_magnitude(spec.mu_cont, w);
    const double hd = discrete_magnitude(spec.mu_disc, w * spec.dt);
    r.continuous.push_back(hc);
    r.discrete.push_back(hd);
    r.max_deviation = std::max(r.max_deviation, std::abs(hc - hd));
  }
  return r;
}

}  // namespace tcw
