#pragma once

// Special functions and closed-form integrals behind every matrix element.
// Nothing here does generic high-dimensional quadrature: sphere and radial
// integrals of monomials are evaluated exactly.

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <vector>

#include "chargedef/multi_index.hpp"

namespace chargedef::specfun {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// |m| above which multi_factorial refuses (20! is the largest factorial in uint64).
inline constexpr int kFactorialCap = 20;

/// ∏ m_i!, exact. Throws CapacityExceeded when |m| > kFactorialCap.
std::uint64_t multi_factorial(const MultiIndex& m);

/// Exact ∏ m_i! without a cap.
BigInt multi_factorial_exact(const MultiIndex& m);

/// ln Γ(x) for x > 0; throws DomainError otherwise.
double log_gamma(double x);

/// Γ(x+a)/Γ(x) − x^a. Requires x > |a| + 1.
double gamma_ratio_deviation(double x, double a);

/// Laguerre polynomial L_k(x) by the three-term recurrence.
double laguerre(unsigned k, double x);

/// A value of the form coefficient · π^pi_power.
struct PiMultiple {
  Rational coefficient;
  int pi_power = 0;

  double value() const;
};

/// ∫_{S^{2n−1}} z^alpha z̄^beta dS; zero unless alpha == beta, otherwise
/// 2π^n·alpha!/(n−1+|alpha|)!.
PiMultiple sphere_monomial_integral(const MultiIndex& alpha, const MultiIndex& beta);

/// Floating-point fast path of sphere_monomial_integral for alpha == beta
/// (long double; used inside matrix assembly).
long double sphere_moment(const MultiIndex& alpha);

/// ∫_0^∞ r^p e^{−r²/2} dr = 2^{(p−1)/2} Γ((p+1)/2).
double radial_gaussian_moment(unsigned p);
long double radial_gaussian_moment_ld(unsigned p);

/// ∫_a^∞ r^p e^{−r²/2} dr (upper incomplete gamma), a >= 0.
long double radial_gaussian_tail(unsigned p, long double a);

/// ∫_0^1 r^p dr = 1/(p+1).
Rational radial_ball_moment(unsigned p);

/// Gauss–Legendre nodes and weights on [lo, hi].
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
QuadratureRule gauss_legendre(int count, double lo = -1.0, double hi = 1.0);

/// Pairwise (tree) summation; deterministic for a given input order.
double pairwise_sum(const std::vector<double>& values);

}  // namespace chargedef::specfun
