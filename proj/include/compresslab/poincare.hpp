#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "compresslab/mode.hpp"
#include "compresslab/poly.hpp"
#include "compresslab/power_series.hpp"

namespace compresslab {

// The Poincare function Pi solves P(Pi(z)) = Pi(2z), Pi(0) = 1, Pi'(0) = 1.
// Pi(i t) is the characteristic function of the rescaled weight density rho(x)
// of the disordered compression, so rho is recovered by Fourier inversion.
//
// Throughout, g(t) = 2 Pi(it)^2 + Pi(it)^3, which decays like t^-4.

// Truncated trapezoid grid on [0, radius] (or [-radius, radius]) in the
// frequency variable t.
struct FourierGrid {
  double radius = 1e4;
  double step = 0.01;

  std::size_t intervals() const;
  // Throws DomainError unless radius > 0, 0 < step <= 0.05 and radius/step is
  // an integer.
  void validate() const;

  // t^-2 tail: truncation error near 1e-4.
  static FourierGrid density() { return {1e4, 0.01}; }
  // t^-4 integrands (sigma, averages, B, G-series).
  static FourierGrid spectral() { return {500.0, 0.005}; }
};

// Samples Pi(i t_k) and g(t_k) at t_k = k * step, k = 0..intervals.
class SpectralTable {
 public:
  explicit SpectralTable(const FourierGrid& grid);

  const FourierGrid& grid() const noexcept { return grid_; }
  std::span<const Complex> pi() const noexcept { return pi_; }
  std::span<const Complex> g() const noexcept { return g_; }
  double t(std::size_t k) const noexcept { return grid_.step * static_cast<double>(k); }
  // Trapezoid weight of node k.
  double weight(std::size_t k) const noexcept;
  // sup of |Pi(it)| t^2 over the last decade [radius/10, radius].
  double tail_constant() const noexcept { return tail_constant_; }

 private:
  FourierGrid grid_;
  std::vector<Complex> pi_;
  std::vector<Complex> g_;
  double tail_constant_ = 0.0;
};

// Process-wide memo of tables keyed by grid; thread-safe.
std::shared_ptr<const SpectralTable> spectral_table(const FourierGrid& grid);

struct PiTaylor {
  PowerSeries series;          // c_0 = c_1 = 1, c_2 = 5/8, c_3 = 87/288, ...
  std::vector<double> moments; // moments[n] = n! c_n = int x^n rho(x) dx
};

// Order-by-order solution of P(Pi(z)) = Pi(2z):
//   (2^n - 2) c_n = 5/4 [u^2]_n + 1/4 [u^3]_n,  u = Pi - 1.
PiTaylor pi_taylor(std::size_t n_max);

// Pi_n(z) = Pi_{n-1}(z + 5z^2/2^{n+3} + z^3/2^{2n+3}), Pi_0(z) = 1 + z:
// the inner corrections are applied from n = n_iter down to 1.
Complex eval_Pi(Complex z, std::size_t n_iter);
// Picks n_iter large enough that the first correction is below rounding.
Complex eval_Pi(Complex z);
std::size_t pi_iterations_for(Complex z) noexcept;

Complex char_function(double t);

// x on [0,1], 2 - x on [1,2], 0 beyond.
double rho_ordered(double x);

struct DensityValue {
  double value = 0.0;
  double tail_bound = 0.0;  // a / R with a = tail_constant()
};

// (1/pi) int_0^R Re(e^{-itx} Pi(it)) dt by the trapezoid rule.
// Throws AliasingError when step > pi / (4x).
double rho_disordered(double x, const FourierGrid& grid = FourierGrid::density());
DensityValue rho_disordered_detail(double x, const FourierGrid& grid = FourierGrid::density());

// sum_{n>=2} z^n / (n! (2^{n-1} - 1)); arguments with |z| > 2 are first halved
// and rebuilt through H(2w) = 2H(w) + 2(e^w - 1 - w).
Complex eval_H(Complex z);

// sum_{j>=0} e^{2^j z} / 2^j for Re z <= 0. Terms stop once below 1e-16 in
// the open half-plane; on Re z = 0 exactly `terms` terms are summed.
// Throws DomainError for Re z > 0.
Complex eval_G(Complex z, std::size_t terms = 60);

// Density through the lacunary G-series,
//   rho(x) = (1/4pi) int G(-2itx) g(t) dt.
// Terms of G whose frequency 2^{j+1} x exceeds the grid's Nyquist margin
// pi/(4 step) are dropped: their exact contribution is 2^-j (2 rho(2^j x) -
// rho(2^{j+1} x)), which is negligible that far out.
double rho_via_G(double x, const FourierGrid& grid = FourierGrid::spectral());

// 1-periodic correction in rho(x) = x sigma(log2 x) + o(x):
//   sigma(x) = 2^-x rho(2^x) + 2^-x/(4pi) int H(-i t 2^{x+1}) g(t) dt.
// The integral uses `grid`, the rho term uses `rho_grid`.
double sigma(double x, const FourierGrid& grid = FourierGrid::spectral(),
             const FourierGrid& rho_grid = FourierGrid::density());

enum class AverageMethod { psi_integral, left_axis, real_part, log_imag };

const char* to_string(AverageMethod method) noexcept;

// int_0^1 sigma(x) dx by one of four equivalent integrals:
//   psi_integral  1/(2 ln2) int_0^1 Psi(z)^2 (4z + 3z^2) dz   (z = u^2)
//   left_axis     -1/ln2 int_{-inf}^0 t (2 Pi(t)^2 + Pi(t)^3) dt
//   real_part     -1/ln2 int_0^inf t Re g(t) dt
//   log_imag      -2/(pi ln2) int_0^inf ln(t) t Im g(t) dt
// Throws AccuracyError when the step-h and step-2h trapezoid sums (or, for
// psi_integral, successive halvings) differ by more than `tolerance`.
double sigma_average(AverageMethod method = AverageMethod::log_imag,
                     const FourierGrid& grid = FourierGrid::spectral(),
                     double tolerance = 2e-4);

// int_{-R}^{R} t g(t) dt with both half-lines evaluated independently.
Complex b_integral(const FourierGrid& grid = FourierGrid::spectral());
// |b_integral / (2 pi i)|; vanishes analytically.
double check_B_zero(const FourierGrid& grid = FourierGrid::spectral());

// (1/p) rho(x/p) for a chain initially filled with density p.
double rho_inhomogeneous(double x, double p, const FourierGrid& grid, CompressionMode mode);

struct DensityCurve {
  std::vector<double> xs;
  std::vector<double> values;
};

DensityCurve density_curve(std::span<const double> xs, CompressionMode mode, double p = 1.0,
                           const FourierGrid& grid = FourierGrid::density());

// Trapezoid estimate of int x^order rho(x) dx over the curve's abscissae.
double curve_moment(const DensityCurve& curve, unsigned order = 0);

}  // namespace compresslab
