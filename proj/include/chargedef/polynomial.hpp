#pragma once

#include <complex>
#include <map>
#include <span>

#include "chargedef/multi_index.hpp"

namespace chargedef {

using cd = std::complex<double>;

/// z^z_exp · z̄^zbar_exp
struct Monomial {
  MultiIndex z_exp;
  MultiIndex zbar_exp;

  int degree() const { return z_exp.total() + zbar_exp.total(); }
  int dim() const { return z_exp.dim(); }
  /// Monomial of the complex conjugate function.
  Monomial conjugate() const { return {zbar_exp, z_exp}; }
  Monomial operator*(const Monomial& other) const {
    return {z_exp + other.z_exp, zbar_exp + other.zbar_exp};
  }
  /// Net charge under z ↦ e^{iθ}z per coordinate (z_exp − zbar_exp).
  MultiIndex charge() const { return z_exp - zbar_exp; }

  auto operator<=>(const Monomial&) const = default;
  bool operator==(const Monomial&) const = default;
};

/// Finite sum of complex multiples of monomials in (z, z̄); canonical by
/// construction (one coefficient per monomial, zeros pruned).
using Polynomial = std::map<Monomial, cd>;

void add_term(Polynomial& p, const Monomial& m, cd c);
Polynomial multiply(const Polynomial& a, const Polynomial& b);
Polynomial conjugate(const Polynomial& p);
cd evaluate(const Polynomial& p, std::span<const cd> z);
int max_degree(const Polynomial& p);
/// Drop coefficients with |c| <= tol.
void prune(Polynomial& p, double tol = 0.0);
bool approx_equal(const Polynomial& a, const Polynomial& b, double tol);

}  // namespace chargedef
