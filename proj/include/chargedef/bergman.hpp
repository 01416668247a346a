#pragma once

// Bergman space A²(B_n) on the unit ball and the Landau/Bergman weight comparison.

#include <span>
#include <vector>

#include "chargedef/polynomial.hpp"
#include "chargedef/specfun.hpp"

namespace chargedef::bergman {

/// μ_m(z) = π^{−n/2} √((n+|m|)!/m!) z^m
struct BallMonomial {
  MultiIndex m;

  /// (n+|m|)!/m!, so that normalization² = squared_normalization()/π^n.
  specfun::Rational squared_normalization() const;
  double normalization() const;
  cd operator()(std::span<const cd> z) const;
};

/// ∫_{B_n} z^α z̄^β |z|^{−k} dV, exact; zero unless α == β.
specfun::PiMultiple ball_monomial_integral(const MultiIndex& alpha, const MultiIndex& beta,
                                           int abs_power);

/// ⟨μ_a, z^α z̄^β |z|^{−|α|−|β|} μ_b⟩, formed from exact rationals and one sqrt.
double ball_matrix_element(const BallMonomial& a, const Monomial& symbol, const BallMonomial& b);
/// ⟨μ_a, μ_b⟩
double ball_inner_product(const BallMonomial& a, const BallMonomial& b);

/// ⟨μ_{m+e_i}, (z_i/|z|) μ_m⟩ from the ball integrals.
double bergman_coordinate_element(int n, int i, const MultiIndex& m);
/// 2√(m_i+1)√(n+|m|+1)/(2|m|+2n+1)
double bergman_closed_form(int n, int i, const MultiIndex& m);
/// √(m_i+1)/√(n+|m|+1), the asymptotic weight from the weighted-shift estimate. It coincides with
/// ⟨μ_{m+e_i}, z_i μ_m⟩ for the unhomogenized coordinate z_i.
double bergman_asymptotic_weight(int n, int i, const MultiIndex& m);

/// ⟨η_{m+e_i}, (z_i/|z|) η_m⟩ = Γ(|m|+n+½)√(m_i+1)/(|m|+n)!
double landau_coordinate_element(int n, int i, const MultiIndex& m);

enum class Space { Landau, Bergman };

struct Shift {
  MultiIndex target;
  double weight = 0.0;
};

/// P Z_i P maps the m-th basis vector to weight·(basis vector m+e_i).
Shift shift_structure(Space space, int n, int i, const MultiIndex& m);

struct WeightComparison {
  MultiIndex m;
  double lambda_eta = 0.0;
  double lambda_mu_exact = 0.0;
  double lambda_mu_asymptotic = 0.0;
  double diff = 0.0;  // |lambda_eta − lambda_mu_exact|
};

/// All m with |m| <= degree_cap in graded order.
std::vector<WeightComparison> compare_weights(int n, int i, int degree_cap);

}  // namespace chargedef::bergman
