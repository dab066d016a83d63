#include "compresslab/schroeder.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "compresslab/errors.hpp"

namespace compresslab {

PowerSeries phi_taylor(std::size_t i_max) {
  if (i_max < 1) throw DomainError("phi_taylor: i_max must be >= 1");

  std::vector<double> log_fact(2 * i_max + 1, 0.0);
  for (std::size_t n = 1; n < log_fact.size(); ++n) {
    log_fact[n] = std::lgamma(static_cast<double>(n) + 1.0);
  }
  const double log4 = std::log(4.0);

  std::vector<double> phi(i_max + 1, 0.0);
  phi[1] = 1.0;
  for (std::size_t i = 1; i < i_max; ++i) {
    double sum = 0.0;
    for (std::size_t k = 0; k < i; ++k) {
      const std::size_t top = 2 * (i - k);
      const std::size_t bottom = k + 1;
      if (bottom > top) break;  // bottom grows and top shrinks with k
      const double log_coeff = (static_cast<double>(k) - static_cast<double>(i)) * log4 +
                               log_fact[top] - log_fact[bottom] - log_fact[top - bottom];
      sum += std::exp(log_coeff) * phi[i - k];
    }
    phi[i + 1] = 4.0 / (1.0 - std::pow(4.0, -static_cast<double>(i))) * sum;
  }
  return PowerSeries(std::move(phi));
}

Complex eval_phi(Complex z, std::size_t n_iter) {
  Complex u = z;
  double scale = 1.0;  // 4^n
  for (std::size_t n = 0; n < n_iter; ++n) {
    const Complex v = u / scale;
    u = u * (1.0 + v * (2.0 + v));
    if (!(std::abs(u) <= 1e12)) {
      throw DomainError("eval_phi: iteration diverged, argument outside the filled Julia set");
    }
    scale *= 4.0;
  }
  return u;
}

Complex eval_psi(Complex z, std::size_t n_iter) {
  if (on_negative_slit(z)) throw DomainError("eval_psi: argument on (-inf, 0]");
  Complex w = z;
  Complex psi = z - 1.0;
  for (std::size_t n = 0; n < n_iter; ++n) {
    w = eval_P_inverse(w);
    psi *= 8.0 / (4.0 + w * (3.0 + w));
  }
  return require_finite(psi, "eval_psi");
}

Complex eval_theta(Complex z) {
  const Complex psi = eval_psi(z);
  return eval_phi(z) * psi * psi;
}

namespace {

double theta_real(double x) { return eval_theta(Complex(x, 0.0)).real(); }

// Golden-section search for the extremum of f on [lo, hi]; sign = +1 for a
// minimum, -1 for a maximum. Returns the abscissa.
template <typename F>
double golden_section(F&& f, double lo, double hi, double sign, double width) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = sign * f(c);
  double fd = sign * f(d);
  while (hi - lo > width) {
    if (fc < fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = sign * f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = sign * f(d);
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

ThetaStats theta_extrema(double a, std::size_t grid_points) {
  if (!(a > 0.0 && a < 1.0)) throw DomainError("theta_extrema: anchor a must lie in (0, 1)");
  if (grid_points < 100) throw DomainError("theta_extrema: need at least 100 grid points");

  const double lo = eval_P(MergePolynomial(), Complex(a, 0.0)).real();
  const double hi = a;
  const double step = (hi - lo) / static_cast<double>(grid_points - 1);

  std::vector<double> xs(grid_points);
  std::vector<double> values(grid_points);
  for (std::size_t k = 0; k < grid_points; ++k) {
    xs[k] = k + 1 == grid_points ? hi : lo + step * static_cast<double>(k);
    values[k] = theta_real(xs[k]);
  }
  const auto kmin = static_cast<std::size_t>(std::min_element(values.begin(), values.end()) - values.begin());
  const auto kmax = static_cast<std::size_t>(std::max_element(values.begin(), values.end()) - values.begin());

  auto refine = [&](std::size_t k, double sign) {
    const double left = xs[k == 0 ? 0 : k - 1];
    const double right = xs[std::min(k + 1, grid_points - 1)];
    const double x = golden_section(theta_real, left, right, sign, 1e-12);
    const double fx = theta_real(x);
    // The grid value wins if the cell extremum sits on its boundary.
    if (sign * fx < sign * values[k]) return std::pair{x, fx};
    return std::pair{xs[k], values[k]};
  };

  ThetaStats stats;
  stats.a = a;
  stats.grid_points = grid_points;
  std::tie(stats.argmin, stats.theta_min) = refine(kmin, +1.0);
  std::tie(stats.argmax, stats.theta_max) = refine(kmax, -1.0);
  stats.theta0 = 0.5 * (stats.theta_min + stats.theta_max);
  return stats;
}

double phi_linear_approx(std::size_t i, double theta0) {
  if (i < 1) throw DomainError("phi_linear_approx: index must be >= 1");
  return (static_cast<double>(i) - 0.25) * theta0;
}

namespace {

constexpr double kSeriesTailTolerance = 1e-8;

double checked_derivative(const PowerSeries& phi, std::size_t m, double x) {
  double tail = 0.0;
  const double value = phi.scaled_derivative(m, x, &tail);
  if (!(tail < kSeriesTailTolerance)) {
    throw AccuracyError("inhom_ratio: Taylor series of Phi not converged for derivative order " +
                        std::to_string(m) + " at " + std::to_string(x) +
                        "; increase the truncation order");
  }
  return value;
}

void check_density(double p) {
  if (!(p > 0.0 && p <= 1.0)) throw DomainError("initial density p must lie in (0, 1]");
}

}  // namespace

double inhom_ratio(std::size_t i, double p, const PowerSeries& phi) {
  check_density(p);
  const double x = 1.0 - p;
  const double numer = checked_derivative(phi, i, x);
  const double denom = checked_derivative(phi, 1, x);
  return numer * std::pow(p, static_cast<double>(i) - 1.0) / denom;
}

double inhom_ratio(std::size_t i, double p, std::size_t i_max) {
  return inhom_ratio(i, p, phi_taylor(i_max));
}

double inhom_linear_approx(std::size_t i, double p, double theta0, const PowerSeries& phi) {
  check_density(p);
  const double slope_denom = p * p * p * checked_derivative(phi, 1, 1.0 - p);
  return (static_cast<double>(i) + 1.0 - 1.25 * p) * theta0 / slope_denom;
}

Complex eval_phi_inverse(Complex z, std::size_t n_iter) {
  Complex y = z;
  for (std::size_t n = n_iter; n >= 1; --n) {
    const Complex u = y * std::pow(4.0, -static_cast<double>(n));
    if (u.imag() == 0.0 && u.real() < 0.0) {
      throw DomainError("eval_phi_inverse: intermediate argument on the negative real axis");
    }
    y = inverse_branch_factor(u) * y;
  }
  return require_finite(y, "eval_phi_inverse");
}

double eval_K_raw(double x) {
  return eval_theta(eval_phi_inverse(Complex(std::pow(4.0, x), 0.0))).real();
}

double eval_K_periodic(double x) {
  if (!std::isfinite(x)) throw DomainError("eval_K_periodic: non-finite argument");
  const double shifted = x - std::ceil(x) - 3.0;
  return eval_K_raw(shifted);
}

PeriodNorms k_period_norms(std::size_t samples) {
  if (samples == 0) throw DomainError("k_period_norms: need at least one sample");
  PeriodNorms norms;
  norms.min = INFINITY;
  norms.max = -INFINITY;
  double sum = 0.0;
  for (std::size_t k = 0; k < samples; ++k) {
    const double v = eval_K_periodic(static_cast<double>(k) / static_cast<double>(samples));
    norms.sup_norm = std::max(norms.sup_norm, std::abs(v));
    norms.min = std::min(norms.min, v);
    norms.max = std::max(norms.max, v);
    sum += std::abs(v);
  }
  // Rectangle rule on a periodic integrand.
  norms.mean_abs = sum / static_cast<double>(samples);
  return norms;
}

}  // namespace compresslab
