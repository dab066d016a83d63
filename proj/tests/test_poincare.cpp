#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "compresslab/errors.hpp"
#include "compresslab/poincare.hpp"
#include "compresslab/poly.hpp"
#include "compresslab/schroeder.hpp"

using namespace compresslab;

namespace {

const MergePolynomial P;

std::vector<double> grid(double lo, double hi, double dx) {
  std::vector<double> xs;
  for (int k = 0; lo + k * dx <= hi + 1e-12; ++k) xs.push_back(lo + k * dx);
  return xs;
}

const DensityCurve& disordered_curve() {
  static const DensityCurve c = [] {
    const auto xs = grid(0.0, 8.0, 0.02);
    return density_curve(xs, CompressionMode::disordered);
  }();
  return c;
}

}  // namespace

TEST_CASE("moments from the Taylor solve") {
  const PiTaylor t = pi_taylor(12);
  CHECK(t.series[0] == 1.0);
  CHECK(t.series[1] == 1.0);
  CHECK(std::abs(t.series[2] - 5.0 / 8) < 1e-15);
  CHECK(std::abs(t.series[3] - 87.0 / 288) < 1e-15);
  CHECK(std::abs(t.moments[1] - 1.0) < 1e-12);
  CHECK(std::abs(t.moments[2] - 1.25) < 1e-12);
  CHECK(std::abs(t.moments[3] - 87.0 / 48) < 1e-12);
  CHECK_THROWS_AS(pi_taylor(65), CapacityError);
}

TEST_CASE("Poincare function") {
  CHECK(std::abs(eval_Pi(0.0) - Complex(1.0)) < 1e-15);
  CHECK(std::abs(eval_P(P, eval_Pi(0.3)) - eval_Pi(0.6)) <= 1e-10);
  const PiTaylor t = pi_taylor(20);
  double partial = 0;
  for (std::size_t n = 0; n <= 20; ++n) partial += t.series[n] * std::pow(0.1, double(n));
  CHECK(std::abs(eval_Pi(0.1).real() - partial) < 1e-12);
  CHECK(std::abs(eval_Pi(0.1).real() - (1 + 0.1 + 0.625 * 0.01 + 87.0 / 288 * 0.001)) < 5e-5);

  double worst = 0;
  for (int a = 0; a < 24; ++a) {
    for (double rad : {0.25, 0.5, 0.75, 1.0}) {
      const Complex z = std::polar(rad, 2 * M_PI * a / 24);
      worst = std::max(worst, std::abs(eval_P(P, eval_Pi(z)) - eval_Pi(2.0 * z)));
    }
  }
  CHECK(worst <= 1e-10);
  CHECK_THROWS_AS(eval_Pi(Complex(5000.0, 0.0)), NonFiniteError);
}

TEST_CASE("Psi inverts Pi on the negative axis") {
  double worst = 0;
  for (int k = 0; k <= 50; ++k) {
    const double z = -2.0 + (2.0 - 0.05) * k / 50;
    worst = std::max(worst, std::abs(eval_psi(eval_Pi(z)) - Complex(z)));
  }
  CHECK(worst <= 1e-9);
}

TEST_CASE("characteristic function") {
  CHECK(std::abs(char_function(0.0) - Complex(1.0)) < 1e-15);
  const double h = 1e-5;
  const Complex d = (char_function(h) - char_function(-h)) / (2 * h);
  CHECK(std::abs(d - Complex(0.0, 1.0)) < 1e-8);
  CHECK(std::abs(char_function(-3.0) - std::conj(char_function(3.0))) < 1e-13);

  std::vector<double> scaled;
  for (double t = 50; t <= 5000; t *= 1.1) scaled.push_back(std::abs(char_function(t)) * t * t);
  const double mid = 0.5 * (*std::max_element(scaled.begin(), scaled.end()) +
                            *std::min_element(scaled.begin(), scaled.end()));
  for (double s : scaled) CHECK(std::abs(s / mid - 1.0) <= 0.2);
}

TEST_CASE("ordered density") {
  CHECK(rho_ordered(1.0) == 1.0);
  CHECK(rho_ordered(0.5) == 0.5);
  CHECK(rho_ordered(1.5) == 0.5);
  CHECK(rho_ordered(3.0) == 0.0);
  CHECK_THROWS_AS(rho_ordered(-0.1), DomainError);
}

TEST_CASE("disordered density by Fourier inversion") {
  CHECK(std::abs(rho_disordered(0.0)) <= 2e-3);
  const auto& c = disordered_curve();
  CHECK(std::abs(curve_moment(c, 0) - 1.0) <= 1e-2);
  CHECK(std::abs(curve_moment(c, 1) - 1.0) <= 1e-2);
  CHECK(std::abs(curve_moment(c, 2) - 1.25) <= 1e-2);
  CHECK(std::abs(curve_moment(c, 3) - 87.0 / 48) <= 1e-2);
  const DensityValue v = rho_disordered_detail(1.0);
  CHECK(v.tail_bound > 0.0);
  CHECK(v.tail_bound < 1e-3);
  CHECK_THROWS_AS(rho_disordered(100.0), AliasingError);
  CHECK_THROWS_AS(rho_disordered(1.0, FourierGrid{100.0, 0.03}), DomainError);
}

TEST_CASE("H and G series") {
  CHECK(eval_H(0.0) == Complex(0.0));
  double h1 = 0, fact = 1;
  for (int n = 2; n <= 30; ++n) {
    fact *= n;
    h1 += 1.0 / (fact * (std::ldexp(1.0, n - 1) - 1));
  }
  CHECK(std::abs(eval_H(1.0).real() - h1) < 1e-14);
  CHECK(std::abs(eval_H(1.0).real() - 0.562112) < 1e-6);
  CHECK(std::abs(eval_H(2.0) - 2.0 * eval_H(1.0) - Complex(2 * (M_E - 2))) < 1e-9);
  // beyond the direct-series radius
  const Complex w(0.4, 1.3);
  CHECK(std::abs(eval_H(8.0 * w) - 2.0 * eval_H(4.0 * w) - 2.0 * (std::exp(4.0 * w) - 1.0 - 4.0 * w)) < 1e-9);

  CHECK(std::abs(eval_G(0.0) - Complex(2.0)) < 1e-12);
  CHECK(std::abs(eval_G(-2.0) - 2.0 * eval_G(-1.0) + Complex(2 * std::exp(-1.0))) < 1e-10);
  for (double t = 0.1; t < 100; t *= 1.3) CHECK(std::abs(eval_G(Complex(0, t))) <= 2 + 1e-9);
  CHECK_THROWS_AS(eval_G(Complex(0.1, 0.0)), DomainError);
}

TEST_CASE("density through the G-series") {
  CHECK(std::abs(rho_via_G(1.0) - rho_disordered(1.0)) <= 1e-3);
  CHECK(std::abs(rho_via_G(6.0)) <= 1e-3);
  std::vector<double> xs = grid(0.02, 8.0, 0.02);
  std::vector<double> ys;
  for (double x : xs) ys.push_back(rho_via_G(x));
  double mass = 0.5 * 0.02 * ys[0];  // rho(0) ~ 0
  for (std::size_t k = 0; k + 1 < xs.size(); ++k) mass += 0.5 * 0.02 * (ys[k] + ys[k + 1]);
  CHECK(std::abs(mass - 1.0) <= 1e-2);
}

TEST_CASE("sigma") {
  CHECK(std::abs(sigma(0.3) - sigma(1.3)) <= 2e-4);
  const double fine = sigma(0.25, FourierGrid{1000.0, 0.0025});
  CHECK(std::abs(sigma(0.25) - fine) <= 2e-4);
  double worst = 0;
  for (int k = 0; k < 20; ++k) worst = std::max(worst, std::abs(sigma(k / 20.0) - sigma(1 + k / 20.0)));
  CHECK(worst <= 2e-4);
}

TEST_CASE("sigma at one half sits within 1e-3 of the average" * doctest::should_fail()) {
  CHECK(std::abs(sigma(0.5) - 1.464910) <= 1e-3);
}

TEST_CASE("averages of sigma") {
  const double log_imag = sigma_average(AverageMethod::log_imag);
  CHECK(std::abs(log_imag - 1.464910) <= 1e-5);
  const double theta0 = theta_extrema().theta0;
  CHECK(std::abs(log_imag - theta0) <= 1e-5);
  std::vector<double> all{log_imag};
  for (auto m : {AverageMethod::psi_integral, AverageMethod::left_axis, AverageMethod::real_part}) {
    const double v = sigma_average(m);
    CHECK(std::abs(v - 1.464910) <= 2e-4);
    all.push_back(v);
  }
  for (double a : all)
    for (double b : all) CHECK(std::abs(a - b) <= 2e-4);
  CHECK_THROWS_AS(sigma_average(AverageMethod::real_part, FourierGrid::spectral(), 1e-12), AccuracyError);
}

TEST_CASE("B vanishes") {
  CHECK(check_B_zero() < 1e-6);
  CHECK(check_B_zero(FourierGrid{500.0, 0.0025}) < 1e-6);
  CHECK(std::abs(b_integral().real()) < 1e-10);
}

TEST_CASE("inhomogeneous rescaling") {
  CHECK(rho_inhomogeneous(0.5, 0.5, FourierGrid::density(), CompressionMode::ordered) == doctest::Approx(2.0));
  CHECK(rho_inhomogeneous(1.3, 1.0, FourierGrid::density(), CompressionMode::disordered) ==
        doctest::Approx(rho_disordered(1.3)).epsilon(1e-14));
  const auto xs = grid(0.0, 8.0, 0.02);
  const DensityCurve c = density_curve(xs, CompressionMode::disordered, 0.5);
  CHECK(std::abs(curve_moment(c, 0) - 1.0) <= 1e-2);
  const DensityCurve o = density_curve(xs, CompressionMode::ordered, 0.5);
  CHECK(std::abs(curve_moment(o, 0) - 1.0) <= 1e-6);
}
