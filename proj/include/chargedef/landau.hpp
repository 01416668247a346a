#pragma once

// Landau-level calculus on polynomial × Gaussian functions.
//
// Operator convention: q_j = 2∂_{z̄_j} + z_j/2 and q_j* = −2∂_{z_j} + z̄_j/2.
// These annihilate e^{−|z|²/4}, satisfy [q_i, q_j*] = 2δ_ij and give
// H = Σ q_j* q_j + n the spectrum 2ℓ + n. On p·e^{−|z|²/4} they act as
// q_j : p ↦ 2∂_{z̄_j} p  and  q_j* : p ↦ z̄_j p − 2∂_{z_j} p.

#include <complex>
#include <span>
#include <string>
#include <vector>

#include "chargedef/polynomial.hpp"

namespace chargedef::landau {

/// Largest basis degree |m| any routine will generate.
inline constexpr int kMaxBasisDegree = 120;

/// poly(z, z̄)·e^{−|z|²/4}
struct PolyGaussian {
  int dim = 0;
  Polynomial poly;

  static PolyGaussian vacuum(int n);
  /// Value at z (poly(z) times the Gaussian).
  cd operator()(std::span<const cd> z) const;
};

PolyGaussian annihilate(int j, const PolyGaussian& f);
PolyGaussian create(int j, const PolyGaussian& f);
/// Σ_j q_j* q_j f + n f
PolyGaussian hamiltonian_apply(const PolyGaussian& f);

PolyGaussian operator+(const PolyGaussian& a, const PolyGaussian& b);
PolyGaussian operator-(const PolyGaussian& a, const PolyGaussian& b);
PolyGaussian operator*(cd c, const PolyGaussian& f);
bool approx_equal(const PolyGaussian& a, const PolyGaussian& b, double tol = 0.0);

/// A particular level 𝓛_𝕜 or a full level 𝓛^ℓ = ⊕_{|𝕜|=ℓ} 𝓛_𝕜.
class LevelSpec {
 public:
  static LevelSpec particular(const MultiIndex& k);
  static LevelSpec full(int n, int ell);

  int dim() const noexcept { return dim_; }
  bool is_particular() const noexcept { return particular_; }
  /// The level multi-index; only meaningful for particular levels.
  const MultiIndex& k() const;
  int ell() const noexcept { return ell_; }
  /// Particular levels making up this level, lexicographic.
  std::vector<MultiIndex> levels() const;
  std::string to_string() const;

 private:
  int dim_ = 0;
  bool particular_ = true;
  MultiIndex k_;
  int ell_ = 0;
};

/// ‖q*^k (z^m e^{−|z|²/4})‖² = π^n 2^{|m|+|k|+n} m! k!
long double norm_squared(const MultiIndex& m, const MultiIndex& k);

/// ξ_{m,k} = q*^k(z^m e^{−|z|²/4}) kept as its raw polynomial (integer
/// coefficients) together with the factor 1/‖ξ_{m,k}‖.
struct BasisVector {
  MultiIndex m;
  MultiIndex k;
  Polynomial raw;
  long double scale = 1.0L;

  PolyGaussian normalized() const;
  int degree() const { return m.total(); }
};

/// ξ̂_{m,k}; throws CapacityExceeded past kMaxBasisDegree.
BasisVector basis_vector(const MultiIndex& m, const MultiIndex& k);
PolyGaussian raw_particular_vector(const MultiIndex& m, const MultiIndex& k);

/// ξ̂_{m,k} for |m| <= max_degree in graded order; particular levels only.
std::vector<BasisVector> particular_basis(const LevelSpec& spec, int max_degree);

/// Radial factor multiplying a symbol monomial z^α z̄^β inside a matrix element.
///   Homogeneous: |z|^{−|α|−|β|} (boundary symbols)
///   Ramp:        |z|^{−|α|−|β|} χ_R(|z|)
///   Decay:       e^{−s|z|²}
struct RadialProfile {
  enum class Kind { Homogeneous, Ramp, Decay };
  Kind kind = Kind::Homogeneous;
  double parameter = 0.0;

  static RadialProfile homogeneous() { return {}; }
  static RadialProfile ramp(double radius) { return {Kind::Ramp, radius}; }
  static RadialProfile decay(double rate) { return {Kind::Decay, rate}; }
};

/// ∫_0^∞ r^p e^{−r²/2} ρ(r) dr with ρ the profile's radial factor (the |z|
/// power already folded into p).
long double radial_profile_moment(const RadialProfile& profile, int p);

using cld = std::complex<long double>;

/// ⟨f, z^α z̄^β ρ(|z|) g⟩ assembled from the closed forms, long double accumulation.
cld matrix_element(const BasisVector& f, const Monomial& symbol, const RadialProfile& profile,
                   const BasisVector& g);

/// Exact L² inner product, conjugate-linear in f.
cd inner_product(const PolyGaussian& f, const PolyGaussian& g);
/// ⟨f, (z^α z̄^β |z|^{−|α|−|β|})·g⟩ summed over the terms of `symbol`.
cd inner_product(const PolyGaussian& f, const Polynomial& symbol, const PolyGaussian& g);

// ---------------------------------------------------------------------------
// Reproducing kernels.

/// e^{z·w̄/2 − (|z|²+|w|²)/4} ∏_j L_{k_j}(|z_j − w_j|²/2), before rescaling.
cd kernel_shape(const MultiIndex& k, std::span<const cd> z, std::span<const cd> w);

/// Σ_{|m| <= max_degree} ξ̂_{m,k}(z)·conj(ξ̂_{m,k}(w)).
cd kernel_basis_sum(const MultiIndex& k, std::span<const cd> z, std::span<const cd> w,
                    int max_degree);

/// kernel_shape times one global constant fitted by least squares against the
/// basis sum at 20 deterministic point pairs with |z|, |w| <= 2.
class KernelEvaluator {
 public:
  explicit KernelEvaluator(const MultiIndex& k, int basis_degree = 60);

  cd operator()(std::span<const cd> z, std::span<const cd> w) const;
  double constant() const { return constant_; }
  /// Largest |shape·constant − basis sum| over the fit pairs.
  double fit_residual() const { return residual_; }

 private:
  MultiIndex k_;
  double constant_ = 1.0;
  double residual_ = 0.0;
};

}  // namespace chargedef::landau
