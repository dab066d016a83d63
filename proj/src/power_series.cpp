#include "compresslab/power_series.hpp"

#include <cmath>
#include <limits>

namespace compresslab {

double log_binomial(std::size_t n, std::size_t k) {
  if (k > n) return -std::numeric_limits<double>::infinity();
  const double dn = static_cast<double>(n);
  const double dk = static_cast<double>(k);
  return std::lgamma(dn + 1.0) - std::lgamma(dk + 1.0) - std::lgamma(dn - dk + 1.0);
}

double PowerSeries::eval(double x) const {
  double acc = 0.0;
  for (std::size_t n = coeffs_.size(); n-- > 0;) acc = acc * x + coeffs_[n];
  return acc;
}

double PowerSeries::scaled_derivative(std::size_t m, double x, double* last_term_ratio) const {
  double sum = 0.0;
  double last = 0.0;
  if (x == 0.0) {
    sum = m < coeffs_.size() ? coeffs_[m] : 0.0;
  } else {
    const double log_abs_x = std::log(std::abs(x));
    for (std::size_t n = m; n < coeffs_.size(); ++n) {
      const double c = coeffs_[n];
      if (c == 0.0) continue;
      const std::size_t power = n - m;
      double mag = std::exp(log_binomial(n, m) + static_cast<double>(power) * log_abs_x);
      if (x < 0.0 && power % 2 == 1) mag = -mag;
      last = c * mag;
      sum += last;
    }
  }
  if (last_term_ratio != nullptr) {
    *last_term_ratio = sum == 0.0 ? std::abs(last) : std::abs(last / sum);
  }
  return sum;
}

}  // namespace compresslab
