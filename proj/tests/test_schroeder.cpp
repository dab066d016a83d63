#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "compresslab/errors.hpp"
#include "compresslab/poly.hpp"
#include "compresslab/schroeder.hpp"

using namespace compresslab;

namespace {

const MergePolynomial P;
constexpr double kMin = 1.46491015;
constexpr double kMax = 1.46491046;

double Pr(double z) { return eval_P(P, z).real(); }

}  // namespace

TEST_CASE("phi coefficients against hand recurrence") {
  const PowerSeries phi = phi_taylor(8);
  CHECK(phi[0] == 0.0);
  CHECK(phi[1] == 1.0);
  CHECK(phi[2] == doctest::Approx(8.0 / 3).epsilon(1e-14));
  // phi_3 from the recurrence by hand: 4/(1 - 1/16) (C(4,1)/16 phi_2 + C(2,2)/4 phi_1)
  CHECK(phi[3] == doctest::Approx(64.0 / 15 * (4.0 / 16 * 8.0 / 3 + 1.0 / 4)).epsilon(1e-14));
  CHECK(std::round(phi[3] * 1e5) / 1e5 == doctest::Approx(3.91111));
  CHECK(std::round(phi[8] * 1e5) / 1e5 == doctest::Approx(11.41518));
}

TEST_CASE("phi coefficients grow and stay finite at high order") {
  const PowerSeries phi = phi_taylor(2000);
  for (std::size_t i = 1; i < 2000; ++i) {
    REQUIRE(std::isfinite(phi[i + 1]));
    CHECK(phi[i + 1] > phi[i]);
  }
}

TEST_CASE("Phi near the origin matches its Taylor polynomial") {
  const PowerSeries phi = phi_taylor(4);
  const double z = 0.01;
  double poly = 0;
  for (std::size_t i = 1; i <= 4; ++i) poly += phi[i] * std::pow(z, double(i));
  CHECK(std::abs(eval_phi(z).real() - poly) < 1e-9);
  CHECK(eval_phi(z).real() == doctest::Approx(0.0102707).epsilon(1e-4));
  CHECK(eval_phi(0.0) == Complex(0.0));
  CHECK_THROWS_AS(eval_phi(3.0), DomainError);
}

TEST_CASE("finite differences of Phi at 0 reproduce the coefficients") {
  const PowerSeries phi = phi_taylor(6);
  const double r = 0.05;
  const int m = 64;
  for (std::size_t n = 1; n <= 6; ++n) {
    Complex acc = 0;
    for (int k = 0; k < m; ++k) {
      const Complex w = std::polar(r, 2 * M_PI * k / m);
      acc += eval_phi(w) / std::pow(w, double(n));
    }
    CHECK(std::abs(acc.real() / m - phi[n]) < 1e-6);
  }
}

TEST_CASE("Psi near the repelling point") {
  CHECK(std::abs(eval_psi(1.0)) == 0.0);
  const double d = -0.01;
  CHECK(eval_psi(0.99).real() == doctest::Approx(d - 5.0 / 8 * d * d).epsilon(1e-3));
  CHECK(std::abs(eval_psi(0.99).real() + 0.0100625) < 1e-5);
  CHECK_THROWS_AS(eval_psi(-0.5), DomainError);
  for (double z = 1e-6; z <= 1e-2; z *= 3) {
    const double s = std::abs(eval_psi(z).real()) * std::sqrt(z);
    CHECK(s > 0.5);
    CHECK(s < 2.0);
  }
}

TEST_CASE("functional equations") {
  CHECK(std::abs(eval_phi(Pr(0.5)) - eval_phi(0.5) / 4.0) < 1e-10);
  CHECK(std::abs(eval_psi(Pr(0.5)) - 2.0 * eval_psi(0.5)) < 1e-10);
  double phi_res = 0, psi_res = 0, theta_res = 0;
  for (int k = 1; k <= 100; ++k) {
    const double z = 0.6 * k / 100;
    phi_res = std::max(phi_res, std::abs(eval_phi(Pr(z)) - eval_phi(z) / 4.0));
    const double w = 0.05 + 0.94 * (k - 1) / 99;
    psi_res = std::max(psi_res, std::abs(eval_psi(Pr(w)) - 2.0 * eval_psi(w)));
    const double t = 9.0 / 32 + (0.5 - 9.0 / 32) * (k - 1) / 99;
    theta_res = std::max(theta_res, std::abs(eval_theta(Pr(t)) - eval_theta(t)));
  }
  CHECK(phi_res <= 1e-10);
  CHECK(psi_res <= 1e-10);
  CHECK(theta_res <= 1e-9);
}

TEST_CASE("Theta is nearly constant") {
  const double t = eval_theta(0.4).real();
  CHECK(t >= kMin - 2e-8);
  CHECK(t <= kMax + 2e-8);
  CHECK(std::abs(eval_theta(Pr(0.4)) - eval_theta(0.4)) < 1e-9);
  CHECK(std::abs(eval_theta(9.0 / 32) - eval_theta(0.5)) < 1e-9);
  double lo = 10, hi = 0;
  for (int k = 1; k < 1000; ++k) {
    const double v = eval_theta(k / 1000.0).real();
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  CHECK(hi - lo < 1e-6);
}

TEST_CASE("theta extrema") {
  const ThetaStats s = theta_extrema(0.5, 10000);
  CHECK(std::abs(s.theta_max - kMax) <= 2e-8);
  CHECK(std::abs(s.theta_min - kMin) <= 2e-8);
  CHECK(s.theta_min <= s.theta0);
  CHECK(s.theta0 <= s.theta_max);
  CHECK(s.theta0 == doctest::Approx((s.theta_min + s.theta_max) / 2).epsilon(1e-15));
  const ThetaStats s3 = theta_extrema(0.3, 10000);
  CHECK(std::abs(s3.theta_max - s.theta_max) <= 3e-8);
  CHECK(std::abs(s3.theta_min - s.theta_min) <= 3e-8);
}

TEST_CASE("linear approximation of the coefficients") {
  CHECK(phi_linear_approx(1, 1.464910) == doctest::Approx(1.0986825).epsilon(1e-12));
  CHECK(phi_linear_approx(2, 1.464910) == doctest::Approx(2.5635925).epsilon(1e-12));
  CHECK(phi_linear_approx(8, 1.464910) == doctest::Approx(11.353053).epsilon(1e-7));
  const PowerSeries phi = phi_taylor(2);
  CHECK(std::abs(phi[2] - phi_linear_approx(2, 1.464910)) == doctest::Approx(0.103).epsilon(0.01));
}

TEST_CASE("inhomogeneous ratios") {
  CHECK(inhom_ratio(1, 0.5) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(inhom_ratio(0, 0.5) - 0.31495) <= 5e-5);
  CHECK(std::abs(inhom_ratio(7, 0.5) - 5.38002) <= 5e-5);
  // p = 1 collapses to the plain coefficients
  const PowerSeries phi = phi_taylor(8);
  CHECK(inhom_ratio(5, 1.0) == doctest::Approx(phi[5]).epsilon(1e-12));
  CHECK_THROWS_AS(inhom_ratio(3, 0.5, 10), AccuracyError);
}

TEST_CASE("Phi inverse") {
  CHECK(eval_phi_inverse(0.0) == Complex(0.0));
  CHECK(std::abs(eval_phi(eval_phi_inverse(0.2)) - Complex(0.2)) < 1e-9);
  CHECK(std::abs(eval_phi_inverse(eval_phi(0.2)) - Complex(0.2)) < 1e-9);
  CHECK(std::abs(eval_phi_inverse(1e-6) / 1e-6 - Complex(1.0)) < 1e-5);
}

TEST_CASE("K is periodic and bounded") {
  CHECK(std::abs(eval_K_periodic(-3.3) - eval_K_periodic(-2.3)) < 1e-9);
  CHECK(std::abs(eval_K_periodic(0.7) - eval_K_raw(-3.3)) < 1e-9);
  for (int k = 0; k <= 100; ++k) {
    const double x = -4.0 + k / 100.0;
    const double v = eval_K_periodic(x);
    CHECK(v >= kMin - 2e-8);
    CHECK(v <= kMax + 2e-8);
    CHECK(std::abs(v) < 2.0);
  }
  const PeriodNorms n = k_period_norms(64);
  CHECK(n.min <= n.mean_abs);
  CHECK(n.mean_abs <= n.sup_norm);
  CHECK(n.sup_norm <= n.max);
}
