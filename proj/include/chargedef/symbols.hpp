#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "chargedef/polynomial.hpp"

namespace chargedef::symbols {

using MatrixXcd = Eigen::MatrixXcd;

/// Matrix-valued symbol on S^{2n−1}. Entry (p,q) is a sum of terms
/// c·z^α z̄^β |z|^{−(|α|+|β|)}; the |z| power is implicit and always equal
/// to minus the monomial degree, so every term is homogeneous of degree 0.
///
/// Entries are kept in sphere normal form: no monomial contains both z_n
/// and z̄_n (z_n z̄_n is rewritten as |z|² − Σ_{i<n} z_i z̄_i and the |z|²
/// cancels). Two symbols that agree as functions on the sphere therefore
/// have identical term lists up to rounding in the coefficients.
class BoundarySymbol {
 public:
  BoundarySymbol() = default;
  BoundarySymbol(int dim, int size);

  static BoundarySymbol identity(int dim, int size);
  static BoundarySymbol scalar(int dim, const Polynomial& entry);
  static BoundarySymbol constant(int dim, cd value);

  int dim() const noexcept { return dim_; }
  int size() const noexcept { return size_; }
  /// max(|α|+|β|) over all terms.
  int degree() const;

  const Polynomial& entry(int row, int col) const;
  void set_entry(int row, int col, const Polynomial& entry);
  void add(int row, int col, const Monomial& m, cd c);

  /// Evaluate at a unit vector (|v| = 1 within 1e−12, else NotOnSphere).
  MatrixXcd eval(std::span<const cd> v) const;
  /// Evaluate at any nonzero z (uses z/|z|).
  MatrixXcd eval_ray(std::span<const cd> z) const;

  bool approx_equal(const BoundarySymbol& other, double tol = 1e-12) const;
  bool is_constant() const { return degree() == 0; }

  /// Literal in the plain-text symbol format accepted by parse_symbol.
  std::string to_string() const;

 private:
  void normalize(Polynomial& p) const;

  int dim_ = 0;
  int size_ = 0;
  std::vector<Polynomial> entries_;  // row-major
};

BoundarySymbol su2_symbol();
/// z_i/|z| with a 1-based coordinate index.
BoundarySymbol coordinate_symbol(int n, int i);
/// z_1^d/|z|^d for d >= 0 and z̄_1^{−d}/|z|^{−d} for d < 0.
BoundarySymbol zpow_symbol(int n, int d);

BoundarySymbol symbol_sum(const BoundarySymbol& a, const BoundarySymbol& b);
BoundarySymbol symbol_scale(const BoundarySymbol& a, cd factor);
BoundarySymbol symbol_product(const BoundarySymbol& a, const BoundarySymbol& b);
BoundarySymbol symbol_adjoint(const BoundarySymbol& a);
/// Determinant as a scalar symbol; N <= 3.
BoundarySymbol symbol_det(const BoundarySymbol& a);
/// Conjugation g·a·g* by a constant matrix.
BoundarySymbol symbol_conjugate_by(const BoundarySymbol& a, const MatrixXcd& g);

/// Parses `c * z1^a1 * zbar1^b1 * ... * |z|^-k` terms joined by `+`/`-`, or a
/// row-major matrix `[[e11, e12], [e21, e22]]` of such expressions. The
/// |z| factor is optional; when present it must equal minus the degree.
BoundarySymbol parse_symbol(std::string_view text, int dim);

/// Named symbols: coordinate:i, su2, zpow:d, constant, constant:c.
BoundarySymbol builtin_symbol(std::string_view name, int dim);

// ---------------------------------------------------------------------------
// Full symbols on ℂⁿ and the Lipschitz split.

/// weight · χ_R(|z|) with χ_R the radial ramp: 0 on |z| <= R, 1 on |z| >= 2R,
/// linear in between (Lipschitz constant 1/R).
struct RadialRamp {
  double radius = 1.0;
  double weight = 1.0;
};

double ramp_value(double radius, double r);

/// Entry (row,col) gains c·z^α z̄^β e^{−rate·|z|²}.
struct DecayTerm {
  int row = 0;
  int col = 0;
  Monomial monomial;
  cd coefficient;
  double rate = 1.0;
};

/// z ↦ (Σ_j w_j χ_{R_j}(|z|))·boundary(z/|z|) + Σ decay terms.
/// A symbol in the algebra with boundary value `boundary` has Σ w_j = 1;
/// Σ w_j = 0 means it vanishes at infinity.
class FullSymbol {
 public:
  FullSymbol(BoundarySymbol boundary, double cutoff_radius, std::vector<DecayTerm> decay = {});
  FullSymbol(BoundarySymbol boundary, std::vector<RadialRamp> ramps, std::vector<DecayTerm> decay);

  const BoundarySymbol& boundary() const { return boundary_; }
  const std::vector<RadialRamp>& ramps() const { return ramps_; }
  const std::vector<DecayTerm>& decay() const { return decay_; }

  /// Radial limit π_∂(a) = (Σ w_j)·boundary.
  BoundarySymbol boundary_limit() const;
  double ramp_weight_sum() const;
  MatrixXcd eval(std::span<const cd> z) const;

  /// Term-level identity after collecting ramps by radius and decay terms
  /// by (entry, monomial, rate).
  bool approx_equal(const FullSymbol& other, double tol = 1e-12) const;

  friend FullSymbol operator+(const FullSymbol& a, const FullSymbol& b);
  friend FullSymbol operator-(const FullSymbol& a, const FullSymbol& b);

 private:
  void collect();

  BoundarySymbol boundary_;
  std::vector<RadialRamp> ramps_;
  std::vector<DecayTerm> decay_;
};

/// 1.5 × the largest sampled quotient ‖a(v)−a(w)‖_F/|v−w| over random
/// near and far pairs on the sphere (fixed seed).
double estimate_lipschitz(const BoundarySymbol& a, int samples = 20000, std::uint64_t seed = 7);

struct LipschitzSplit {
  FullSymbol g;  // χ_ε(z)·a_∂(z/|z|), globally ε-Lipschitz
  FullSymbol h;  // a − g, vanishes at infinity
  double radius;
};

/// R = 1.1·max(2C, sup‖a_∂‖)/ε (1 when both vanish); throws InvalidEpsilon
/// for ε <= 0.
LipschitzSplit lipschitz_split(const FullSymbol& a, double eps, double lipschitz_constant);
/// Same with C from estimate_lipschitz.
LipschitzSplit lipschitz_split(const FullSymbol& a, double eps);

/// max ‖g(z)−g(w)‖_F/|z−w| over random pairs with |z|,|w| <= max_radius.
double sampled_lipschitz_quotient(const FullSymbol& g, double max_radius, int pairs,
                                  std::uint64_t seed = 11);

}  // namespace chargedef::symbols
