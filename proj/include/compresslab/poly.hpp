#pragma once

#include <complex>
#include <cstddef>

namespace compresslab {

using Complex = std::complex<double>;

// Throws NonFiniteError if either component is NaN or infinite.
Complex require_finite(Complex z, const char* where);

// The cubic merge map P_r(z) = a1 z + a2 z^2 + a3 z^3 with
// (a1, a2, a3) = (r(1-r), r^2 + (1-r)^2, r(1-r)).
//
// Its z^i coefficients are the probabilities that a surviving cell absorbs
// i - 1 of its two donor neighbours; P_r(0) = 0 and P_r(1) = 1 are fixed points.
class MergePolynomial {
 public:
  // Symmetric merging, P(z) = (z + 2z^2 + z^3) / 4.
  MergePolynomial() : MergePolynomial(0.5) {}
  explicit MergePolynomial(double r);

  double r() const noexcept { return r_; }
  double a1() const noexcept { return a1_; }
  double a2() const noexcept { return a2_; }
  double a3() const noexcept { return a3_; }

  // Derivative at the fixed points.
  double multiplier_at_zero() const noexcept { return a1_; }
  double multiplier_at_one() const noexcept { return a1_ + 2 * a2_ + 3 * a3_; }

  // The second finite fixed point (-3 for r = 1/2).
  double negative_fixed_point() const noexcept { return (a1_ - 1.0) / a3_; }

  // Radius beyond which every orbit grows monotonically to infinity.
  // Equals 4 for r = 1/2 and grows as r approaches 0 or 1.
  double escape_radius() const noexcept;

  bool is_symmetric() const noexcept { return r_ == 0.5; }

 private:
  double r_;
  double a1_;
  double a2_;
  double a3_;
};

// Horner evaluation of a1 z + a2 z^2 + a3 z^3 for any field-like type.
template <typename T, typename C>
constexpr T merge_horner(const C& a1, const C& a2, const C& a3, const T& z) {
  return z * (T(a1) + z * (T(a2) + z * T(a3)));
}

Complex eval_P(const MergePolynomial& poly, Complex z);

// n-fold composition. Throws EscapeError carrying the 1-based step index at
// which |z| first exceeds poly.escape_radius().
Complex iterate_P(const MergePolynomial& poly, Complex z, std::size_t n);

// The branch of P^{-1} (r = 1/2) with P^{-1}(1) = 1, analytic on the plane
// cut along the negative real axis. z = 0 is allowed (P^{-1}(0) = 0);
// strictly negative reals throw DomainError.
Complex eval_P_inverse(Complex z);

// (3 / (T + 1/T + 1))^2 with T = (54u + 1 + sqrt((54u+1)^2 - 1))^{1/3}.
// P^{-1}(u) = 4u * inverse_branch_factor(u); the factor tends to 1 as u -> 0.
Complex inverse_branch_factor(Complex u);

// n-fold application of eval_P_inverse.
Complex inverse_iterates(Complex z, std::size_t n);

// True when z lies on (-inf, 0].
bool on_negative_slit(Complex z) noexcept;

}  // namespace compresslab
