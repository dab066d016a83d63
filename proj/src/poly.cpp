#include "compresslab/poly.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "compresslab/errors.hpp"

namespace compresslab {

Complex require_finite(Complex z, const char* where) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw NonFiniteError(std::string(where) + ": non-finite result");
  }
  return z;
}

MergePolynomial::MergePolynomial(double r) : r_(r) {
  if (!(r > 0.0 && r < 1.0)) {
    throw DomainError("merge probability r must lie in (0, 1), got " + std::to_string(r));
  }
  a1_ = r * (1.0 - r);
  a3_ = a1_;
  a2_ = r * r + (1.0 - r) * (1.0 - r);
}

double MergePolynomial::escape_radius() const noexcept {
  // |P(z)| >= a3|z|^3 - a2|z|^2 - a1|z| > |z| once a3 R^2 - a2 R - (a1 + 1) > 0.
  const double disc = a2_ * a2_ + 4.0 * a3_ * (a1_ + 1.0);
  const double root = (a2_ + std::sqrt(disc)) / (2.0 * a3_);
  return std::max(4.0, std::ceil(root));
}

Complex eval_P(const MergePolynomial& poly, Complex z) {
  return require_finite(merge_horner(poly.a1(), poly.a2(), poly.a3(), z), "eval_P");
}

Complex iterate_P(const MergePolynomial& poly, Complex z, std::size_t n) {
  const double radius = poly.escape_radius();
  for (std::size_t step = 1; step <= n; ++step) {
    z = merge_horner(poly.a1(), poly.a2(), poly.a3(), z);
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) || std::abs(z) > radius) {
      throw EscapeError(step, "iterate_P: orbit escaped at step " + std::to_string(step));
    }
  }
  return z;
}

bool on_negative_slit(Complex z) noexcept { return z.imag() == 0.0 && z.real() <= 0.0; }

namespace {

Complex principal_cbrt(Complex w) {
  return std::polar(std::cbrt(std::abs(w)), std::arg(w) / 3.0);
}

}  // namespace

Complex inverse_branch_factor(Complex u) {
  // A2(A1(u)) written as 1 + 54u + sqrt(54u) sqrt(54u + 2): the product of
  // principal roots is the Joukowski inverse analytic off (-inf, 1], whereas
  // sqrt((54u+1)^2 - 1) would cut along the imaginary axis.
  const Complex s = 54.0 * u;
  const Complex joukowski = 1.0 + s + std::sqrt(s) * std::sqrt(s + 2.0);
  const Complex t = principal_cbrt(joukowski);
  const Complex q = 3.0 / (t + 1.0 / t + 1.0);
  return q * q;
}

Complex eval_P_inverse(Complex z) {
  if (z.imag() == 0.0 && z.real() < 0.0) {
    throw DomainError("eval_P_inverse: argument on the negative real slit");
  }
  return require_finite(4.0 * z * inverse_branch_factor(z), "eval_P_inverse");
}

Complex inverse_iterates(Complex z, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) z = eval_P_inverse(z);
  return z;
}

}  // namespace compresslab
