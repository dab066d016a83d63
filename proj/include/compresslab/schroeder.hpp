#pragma once

#include <cstddef>

#include "compresslab/poly.hpp"
#include "compresslab/power_series.hpp"

namespace compresslab {

// Linearizers of P(z) = (z + 2z^2 + z^3)/4 at its two real fixed points.
//
//   Phi  : Phi(P(z)) = Phi(z)/4,  Phi'(0) = 1   (attracting point 0)
//   Psi  : Psi(P(z)) = 2 Psi(z),  Psi'(1) = 1   (repelling point 1)
//   Theta = Phi * Psi^2 is P-invariant and nearly constant on (0, 1).
//
// Phi's Taylor coefficients phi_i are the limits of rho_i / rho_1 for the
// disordered compression; (i - 1/4) * theta0 approximates them.

inline constexpr std::size_t kDefaultLinearizerIterations = 48;

// phi_0 = 0, phi_1 = 1 and
//   phi_{i+1} = 4 / (1 - 4^{-i}) sum_{k=0}^{i-1} 4^{k-i} C(2(i-k), k+1) phi_{i-k}.
// Binomial factors are formed as exp(log ...), so i_max in the thousands is fine.
PowerSeries phi_taylor(std::size_t i_max);

// Phi_n(z) with Phi_0 = z, Phi_{n+1} = Phi_n (1 + 2 Phi_n / 4^n + Phi_n^2 / 16^n).
// Throws DomainError once |Phi_n| > 1e12 (z outside the filled Julia set).
Complex eval_phi(Complex z, std::size_t n_iter = kDefaultLinearizerIterations);

// Psi_n(z) with Psi_0 = z - 1, Psi_n = Psi_{n-1} * 8 / (4 + 3 w_n + w_n^2),
// w_n = P^{-n}(z). Throws DomainError for z on (-inf, 0].
Complex eval_psi(Complex z, std::size_t n_iter = kDefaultLinearizerIterations);

Complex eval_theta(Complex z);

struct ThetaStats {
  double a = 0.5;
  std::size_t grid_points = 0;
  double theta_min = 0.0;
  double theta_max = 0.0;
  double theta0 = 0.0;
  double argmin = 0.0;
  double argmax = 0.0;
};

// Extrema of Theta over one fundamental interval [P(a), a]: a dense grid
// followed by golden-section refinement of the extremal cells down to 1e-12.
ThetaStats theta_extrema(double a = 0.5, std::size_t grid_points = 10000);

// (i - 1/4) * theta0.
double phi_linear_approx(std::size_t i, double theta0);

// Limit of rho_i / rho_1 for disordered compression of a chain whose cells
// start non-empty with probability p:
//   Phi^{(i)}(1-p) p^{i-1} / (Phi'(1-p) i!).
// Throws AccuracyError if the last retained term of either differentiated
// series exceeds 1e-8 of its partial sum.
double inhom_ratio(std::size_t i, double p, std::size_t i_max = 400);
double inhom_ratio(std::size_t i, double p, const PowerSeries& phi);

// Linear-in-i approximation (i + 1 - 5p/4) theta0 / (p^3 Phi'(1-p)).
double inhom_linear_approx(std::size_t i, double p, double theta0, const PowerSeries& phi);

// Phi^{-1} via  Phi~_N(z) = Phi~_{N-1}(f(4^{-N} z) z),  f = inverse_branch_factor.
// Throws DomainError if an intermediate argument lands on the negative axis.
Complex eval_phi_inverse(Complex z, std::size_t n_iter = kDefaultLinearizerIterations);

// K(x) = Theta(Phi^{-1}(4^x)), a 1-periodic function. eval_K_raw evaluates the
// composition at x as given; eval_K_periodic first shifts x by an integer
// into (-4, -3] so Phi^{-1} is only ever used near the origin.
double eval_K_raw(double x);
double eval_K_periodic(double x);

struct PeriodNorms {
  double sup_norm = 0.0;   // max |K| over one period
  double mean_abs = 0.0;   // integral of |K| over one period
  double min = 0.0;
  double max = 0.0;
};

PeriodNorms k_period_norms(std::size_t samples = 256);

}  // namespace compresslab
