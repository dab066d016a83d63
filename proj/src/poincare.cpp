#include "compresslab/poincare.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <string>
#include <utility>

#include "compresslab/errors.hpp"
#include "compresslab/parallel.hpp"
#include "compresslab/schroeder.hpp"

namespace compresslab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kLn2 = std::numbers::ln2;
constexpr Complex kI{0.0, 1.0};

// Largest step that still resolves e^{-itx}: step * frequency <= pi/4.
void check_nyquist(double frequency, double step, const char* where) {
  if (frequency > 0.0 && step > kPi / (4.0 * frequency)) {
    throw AliasingError(std::string(where) + ": grid step " + std::to_string(step) +
                        " too coarse for frequency " + std::to_string(frequency));
  }
}

Complex cubic_part(Complex pi) { return pi * pi * (2.0 + pi); }

}  // namespace

std::size_t FourierGrid::intervals() const {
  return static_cast<std::size_t>(std::llround(radius / step));
}

void FourierGrid::validate() const {
  if (!(radius > 0.0) || !(step > 0.0)) throw DomainError("FourierGrid: radius and step must be positive");
  if (step > 0.05) throw DomainError("FourierGrid: step must not exceed 0.05");
  const double n = radius / step;
  if (std::abs(n - std::round(n)) > 1e-9 * n) {
    throw DomainError("FourierGrid: radius must be an integer number of steps");
  }
}

SpectralTable::SpectralTable(const FourierGrid& grid) : grid_(grid) {
  grid_.validate();
  const std::size_t n = grid_.intervals() + 1;
  pi_.resize(n);
  g_.resize(n);
  constexpr std::size_t kBlock = 4096;
  const std::size_t blocks = (n + kBlock - 1) / kBlock;
  parallel_for(blocks, [&](std::size_t b) {
    const std::size_t end = std::min(n, (b + 1) * kBlock);
    for (std::size_t k = b * kBlock; k < end; ++k) {
      pi_[k] = eval_Pi(Complex(0.0, t(k)));
      g_[k] = cubic_part(pi_[k]);
    }
  });
  for (std::size_t k = 0; k < n; ++k) {
    const double tk = t(k);
    if (tk >= grid_.radius / 10.0) tail_constant_ = std::max(tail_constant_, std::abs(pi_[k]) * tk * tk);
  }
}

double SpectralTable::weight(std::size_t k) const noexcept {
  return (k == 0 || k == pi_.size() - 1) ? 0.5 * grid_.step : grid_.step;
}

std::shared_ptr<const SpectralTable> spectral_table(const FourierGrid& grid) {
  static std::mutex mutex;
  static std::map<std::pair<double, double>, std::shared_ptr<const SpectralTable>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[{grid.radius, grid.step}];
  if (!slot) slot = std::make_shared<const SpectralTable>(grid);
  return slot;
}

PiTaylor pi_taylor(std::size_t n_max) {
  if (n_max < 1) throw DomainError("pi_taylor: n_max must be >= 1");
  if (n_max > 64) throw CapacityError("pi_taylor: n_max above 64 is not supported");

  // u = Pi - 1 = sum_{n>=1} c_n z^n; P(1 + u) = 1 + 2u + 5/4 u^2 + 1/4 u^3.
  std::vector<double> c(n_max + 1, 0.0);
  std::vector<double> sq(n_max + 1, 0.0);    // coefficients of u^2
  c[0] = 1.0;
  c[1] = 1.0;
  for (std::size_t n = 2; n <= n_max; ++n) {
    // [u^2]_n and [u^3]_n only involve c_1..c_{n-1}.
    double s2 = 0.0;
    for (std::size_t k = 1; k < n; ++k) s2 += c[k] * c[n - k];
    sq[n] = s2;
    double s3 = 0.0;
    for (std::size_t k = 1; k + 1 < n; ++k) s3 += c[k] * sq[n - k];
    c[n] = (1.25 * s2 + 0.25 * s3) / (std::ldexp(1.0, static_cast<int>(n)) - 2.0);
  }

  PiTaylor out;
  out.moments.resize(n_max + 1);
  double factorial = 1.0;
  for (std::size_t n = 0; n <= n_max; ++n) {
    if (n > 0) factorial *= static_cast<double>(n);
    out.moments[n] = factorial * c[n];
  }
  out.series = PowerSeries(std::move(c));
  return out;
}

std::size_t pi_iterations_for(Complex z) noexcept {
  // Step n is the identity in double precision once 5|w| / 2^{n+3} < 2^-53.
  const double bits = std::log2(1.0 + 5.0 * std::abs(z));
  return std::max<std::size_t>(48, static_cast<std::size_t>(std::ceil(bits)) + 51);
}

Complex eval_Pi(Complex z, std::size_t n_iter) {
  Complex w = z;
  for (std::size_t n = n_iter; n >= 1; --n) {
    const double inv1 = std::ldexp(1.0, -static_cast<int>(n + 3));      // 2^{-(n+3)}
    const double inv2 = std::ldexp(1.0, -static_cast<int>(2 * n + 3));  // 2^{-(2n+3)}
    w = w + w * w * (5.0 * inv1 + w * inv2);
  }
  return require_finite(1.0 + w, "eval_Pi");
}

Complex eval_Pi(Complex z) { return eval_Pi(z, pi_iterations_for(z)); }

Complex char_function(double t) { return eval_Pi(Complex(0.0, t)); }

double rho_ordered(double x) {
  if (x < 0.0) throw DomainError("rho_ordered: x must be non-negative");
  if (x <= 1.0) return x;
  if (x <= 2.0) return 2.0 - x;
  return 0.0;
}

DensityValue rho_disordered_detail(double x, const FourierGrid& grid) {
  if (!(x >= 0.0)) throw DomainError("rho_disordered: x must be non-negative");
  grid.validate();
  check_nyquist(x, grid.step, "rho_disordered");
  const auto table = spectral_table(grid);
  const auto pi = table->pi();
  const std::size_t n = pi.size();

  // e^{-i t_k x} by rotation, re-anchored periodically to bound drift.
  const Complex rot = std::polar(1.0, -grid.step * x);
  Complex phase{1.0, 0.0};
  double sum = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    if (k % 512 == 0) phase = std::polar(1.0, -table->t(k) * x);
    sum += table->weight(k) * (phase * pi[k]).real();
    phase *= rot;
  }
  return {sum / kPi, table->tail_constant() / grid.radius};
}

double rho_disordered(double x, const FourierGrid& grid) { return rho_disordered_detail(x, grid).value; }

namespace {

Complex h_series(Complex z) {
  Complex sum{0.0, 0.0};
  Complex power = z;  // z^n / n!
  double denom = 1.0;  // 2^{n-1} - 1
  for (int n = 2; n < 200; ++n) {
    power *= z / static_cast<double>(n);
    denom = std::ldexp(1.0, n - 1) - 1.0;
    const Complex term = power / denom;
    const Complex next = sum + term;
    if (next == sum) break;
    sum = next;
  }
  return sum;
}

}  // namespace

Complex eval_H(Complex z) {
  const double mag = std::abs(z);
  if (mag <= 2.0) return h_series(z);
  const int halvings = static_cast<int>(std::ceil(std::log2(mag / 2.0)));
  Complex w = std::ldexp(1.0, -halvings) * z;
  Complex h = h_series(w);
  for (int j = 0; j < halvings; ++j) {
    h = 2.0 * h + 2.0 * (std::exp(w) - 1.0 - w);
    w *= 2.0;
  }
  return require_finite(h, "eval_H");
}

Complex eval_G(Complex z, std::size_t terms) {
  if (z.real() > 0.0) throw DomainError("eval_G: requires Re z <= 0");
  Complex sum{0.0, 0.0};
  const bool interior = z.real() < 0.0;
  for (std::size_t j = 0; j < terms; ++j) {
    const double scale = std::ldexp(1.0, static_cast<int>(j));
    const Complex term = std::exp(scale * z) / scale;
    sum += term;
    if (interior && std::abs(term) < 1e-16) break;
  }
  return sum;
}

double rho_via_G(double x, const FourierGrid& grid) {
  if (!(x > 0.0)) throw DomainError("rho_via_G: x must be positive");
  grid.validate();
  check_nyquist(2.0 * x, grid.step, "rho_via_G");
  std::size_t terms = 0;
  while (std::ldexp(2.0 * x, static_cast<int>(terms)) * grid.step <= kPi / 4.0) ++terms;

  const auto table = spectral_table(grid);
  const auto g = table->g();
  double sum = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k) {
    const Complex arg{0.0, -2.0 * x * table->t(k)};
    sum += table->weight(k) * (eval_G(arg, terms) * g[k]).real();
  }
  // Full line = twice the real part of the half line.
  return 2.0 * sum / (4.0 * kPi);
}

double sigma(double x, const FourierGrid& grid, const FourierGrid& rho_grid) {
  if (!std::isfinite(x)) throw DomainError("sigma: non-finite argument");
  grid.validate();
  const double y = std::exp2(x);
  check_nyquist(y, grid.step, "sigma");
  const double rho = rho_disordered(y, rho_grid);

  const auto table = spectral_table(grid);
  const auto g = table->g();
  double sum = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k) {
    const Complex arg{0.0, -2.0 * y * table->t(k)};
    sum += table->weight(k) * (eval_H(arg) * g[k]).real();
  }
  return rho / y + 2.0 * sum / (4.0 * kPi * y);
}

const char* to_string(AverageMethod method) noexcept {
  switch (method) {
    case AverageMethod::psi_integral: return "psi_integral";
    case AverageMethod::left_axis: return "left_axis";
    case AverageMethod::real_part: return "real_part";
    case AverageMethod::log_imag: return "log_imag";
  }
  return "unknown";
}

namespace {

// Trapezoid sums of f(k) over the table nodes with step h and with step 2h.
template <typename F>
std::pair<double, double> fine_and_coarse(std::size_t n_nodes, double h, F&& f) {
  double fine = 0.0;
  double coarse = 0.0;
  const std::size_t last = n_nodes - 1;
  for (std::size_t k = 0; k < n_nodes; ++k) {
    const double v = f(k);
    const bool end = k == 0 || k == last;
    fine += (end ? 0.5 * h : h) * v;
    if (k % 2 == 0) coarse += (end ? h : 2.0 * h) * v;
  }
  return {fine, coarse};
}

void check_refinement(double fine, double coarse, double tolerance, const char* method) {
  if (!(std::abs(fine - coarse) <= tolerance)) {
    throw AccuracyError(std::string("sigma_average(") + method + "): refinements differ by " +
                        std::to_string(std::abs(fine - coarse)));
  }
}

double psi_average(double tolerance) {
  // z = u^2 turns the 1/z growth of Psi^2 into a bounded integrand.
  auto f = [](double u) {
    if (u == 0.0) return 0.0;
    const double z = u * u;
    const Complex psi = eval_psi(Complex(z, 0.0));
    return (psi * psi).real() * (4.0 * z + 3.0 * z * z) * 2.0 * u;
  };
  std::size_t n = 64;
  double sum = 0.5 * (f(0.0) + f(1.0));
  for (std::size_t k = 1; k < n; ++k) sum += f(static_cast<double>(k) / static_cast<double>(n));
  double trap = sum / static_cast<double>(n);
  double simpson_prev = NAN;
  double diff = INFINITY;
  while (n < (std::size_t{1} << 16)) {
    for (std::size_t k = 1; k < 2 * n; k += 2) sum += f(static_cast<double>(k) / static_cast<double>(2 * n));
    n *= 2;
    const double trap_next = sum / static_cast<double>(n);
    const double simpson = (4.0 * trap_next - trap) / 3.0;
    trap = trap_next;
    if (!std::isnan(simpson_prev)) {
      diff = std::abs(simpson - simpson_prev);
      if (diff < 1e-10) return simpson / (2.0 * kLn2);
    }
    simpson_prev = simpson;
  }
  if (!(diff <= tolerance)) {
    throw AccuracyError("sigma_average(psi_integral): no convergence, last change " + std::to_string(diff));
  }
  return simpson_prev / (2.0 * kLn2);
}

}  // namespace

double sigma_average(AverageMethod method, const FourierGrid& grid, double tolerance) {
  if (method == AverageMethod::psi_integral) return psi_average(tolerance);

  grid.validate();
  const auto table = spectral_table(grid);
  const auto g = table->g();
  const double h = grid.step;
  const std::size_t nodes = g.size();

  std::pair<double, double> sums;
  double scale = 0.0;
  switch (method) {
    case AverageMethod::log_imag:
      sums = fine_and_coarse(nodes, h, [&](std::size_t k) {
        const double t = table->t(k);
        return k == 0 ? 0.0 : std::log(t) * t * g[k].imag();
      });
      scale = -2.0 / (kPi * kLn2);
      break;
    case AverageMethod::real_part:
      sums = fine_and_coarse(nodes, h, [&](std::size_t k) { return table->t(k) * g[k].real(); });
      scale = -1.0 / kLn2;
      break;
    case AverageMethod::left_axis: {
      std::vector<double> values(nodes);
      parallel_for(nodes, [&](std::size_t k) {
        const double t = -table->t(k);
        const double pi = eval_Pi(Complex(t, 0.0)).real();
        values[k] = t * pi * pi * (2.0 + pi);
      });
      sums = fine_and_coarse(nodes, h, [&](std::size_t k) { return values[k]; });
      scale = -1.0 / kLn2;
      break;
    }
    case AverageMethod::psi_integral:
      break;
  }
  const double fine = scale * sums.first;
  if (grid.intervals() % 2 == 0) check_refinement(fine, scale * sums.second, tolerance, to_string(method));
  return fine;
}

Complex b_integral(const FourierGrid& grid) {
  grid.validate();
  const auto table = spectral_table(grid);
  const auto g = table->g();
  const std::size_t nodes = g.size();
  std::vector<Complex> negative(nodes);
  parallel_for(nodes, [&](std::size_t k) { negative[k] = cubic_part(eval_Pi(Complex(0.0, -table->t(k)))); });
  Complex sum{0.0, 0.0};
  // Pair +t and -t so the odd real parts cancel node by node.
  for (std::size_t k = 0; k < nodes; ++k) {
    const double t = table->t(k);
    const double w = table->weight(k);
    sum += w * (t * g[k] + (-t) * negative[k]);
  }
  return sum;
}

double check_B_zero(const FourierGrid& grid) { return std::abs(b_integral(grid) / (2.0 * kPi * kI)); }

double rho_inhomogeneous(double x, double p, const FourierGrid& grid, CompressionMode mode) {
  if (!(p > 0.0 && p <= 1.0)) throw DomainError("rho_inhomogeneous: p must lie in (0, 1]");
  if (!(x >= 0.0)) throw DomainError("rho_inhomogeneous: x must be non-negative");
  const double scaled = x / p;
  const double rho = mode == CompressionMode::ordered ? rho_ordered(scaled) : rho_disordered(scaled, grid);
  return rho / p;
}

DensityCurve density_curve(std::span<const double> xs, CompressionMode mode, double p, const FourierGrid& grid) {
  DensityCurve curve;
  curve.xs.assign(xs.begin(), xs.end());
  curve.values.resize(xs.size());
  if (mode == CompressionMode::disordered) (void)spectral_table(grid);
  parallel_for(xs.size(), [&](std::size_t i) { curve.values[i] = rho_inhomogeneous(xs[i], p, grid, mode); });
  return curve;
}

double curve_moment(const DensityCurve& curve, unsigned order) {
  double sum = 0.0;
  for (std::size_t i = 1; i < curve.xs.size(); ++i) {
    const double x0 = curve.xs[i - 1];
    const double x1 = curve.xs[i];
    const double f0 = std::pow(x0, order) * curve.values[i - 1];
    const double f1 = std::pow(x1, order) * curve.values[i];
    sum += 0.5 * (x1 - x0) * (f0 + f1);
  }
  return sum;
}

}  // namespace compresslab
