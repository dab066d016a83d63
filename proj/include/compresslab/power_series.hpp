#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace compresslab {

// Truncated Taylor expansion sum_{n=0}^{order} c_n z^n. Immutable once built.
class PowerSeries {
 public:
  PowerSeries() = default;
  explicit PowerSeries(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {}

  std::size_t order() const noexcept { return coeffs_.empty() ? 0 : coeffs_.size() - 1; }
  double operator[](std::size_t n) const { return coeffs_.at(n); }
  std::span<const double> coeffs() const noexcept { return coeffs_; }

  // Partial sum at real x.
  double eval(double x) const;

  // f^{(m)}(x) / m! from termwise differentiation,
  //   sum_{n>=m} C(n, m) c_n x^{n-m},
  // accumulated in the log domain so large orders do not overflow. The last
  // retained term relative to the sum is written to last_term_ratio.
  double scaled_derivative(std::size_t m, double x, double* last_term_ratio = nullptr) const;

 private:
  std::vector<double> coeffs_;
};

// log C(n, k); -inf when k > n.
double log_binomial(std::size_t n, std::size_t k);

}  // namespace compresslab
