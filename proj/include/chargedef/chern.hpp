#pragma once

// Topological side: winding numbers on the circle and the odd Chern
// character integral on S^{2n−1}.
//
// Charts: n = 1 uses z = e^{iφ}; n = 2 uses z₁ = cos θ e^{iφ₁},
// z₂ = sin θ e^{iφ₂} with θ ∈ [0, π/2]. The (θ, φ₁, φ₂) order carries
// orientation sign −1 relative to the sphere's boundary orientation.

#include <complex>
#include <string>
#include <vector>

#include "chargedef/symbols.hpp"

namespace chargedef::chern {

inline constexpr int kDefaultThetaNodes = 64;
inline constexpr int kDefaultPhiNodes = 128;
inline constexpr int kDefaultCircleNodes = 1024;
/// Sign relating the chart orientation to the one used by the index formula.
inline constexpr int kOrientationSign = -1;

/// 2π^n/(n−1)!
double sphere_volume(int n);

struct SphereNode {
  std::vector<double> params;  // (φ) or (θ, φ₁, φ₂)
  double param_weight = 0.0;   // weight for ∫ … dθ dφ₁ dφ₂
  double volume_weight = 0.0;  // weight for ∫ … dS
};

class SphereQuadrature {
 public:
  /// Gauss–Legendre in θ times the trapezoid rule in each φ; n ∈ {1, 2}.
  SphereQuadrature(int n, int theta_nodes = kDefaultThetaNodes, int phi_nodes = kDefaultPhiNodes);

  int dim() const { return dim_; }
  const std::vector<SphereNode>& nodes() const { return nodes_; }
  double total_volume() const;
  std::string descriptor() const;
  /// Point of the sphere for a parameter tuple.
  static std::vector<cd> point(int n, const std::vector<double>& params);

 private:
  int dim_;
  int theta_nodes_;
  int phi_nodes_;
  std::vector<SphereNode> nodes_;
};

struct WindingResult {
  int winding = 0;
  double raw = 0.0;
  double distance = 0.0;
};

/// (1/2πi)∮ a⁻¹ a′ dφ along z₁ = e^{iφ} (other coordinates 0), using det(a)
/// for matrix symbols. Throws NotInvertibleOnCircle or NotConverged.
WindingResult winding_number(const symbols::BoundarySymbol& a, int nodes = kDefaultCircleNodes);

enum class Derivative { Analytic, FiniteDifference };

struct ChernResult {
  cd value;
  int nearest = 0;
  double distance = 0.0;
  long quadrature_nodes = 0;
  bool converged = false;
  double doubling_change = 0.0;  // |value(2× nodes) − value|
};

/// −(n−1)!/((2n−1)!(2πi)^n) ∫ tr((u⁻¹du)^{2n−1}) for n ∈ {1, 2}. Throws
/// NotUnitarySymbol when u u* deviates from 1 by more than 1e−8 at a node and,
/// if throw_on_unconverged, QuadratureNotConverged when doubling the nodes
/// moves the value by more than 1e−6.
ChernResult odd_chern_integral(const symbols::BoundarySymbol& u,
                               int theta_nodes = kDefaultThetaNodes,
                               int phi_nodes = kDefaultPhiNodes,
                               Derivative derivative = Derivative::Analytic,
                               bool throw_on_unconverged = true);

/// −(n−1)!/((2n−1)!(2πi)^n)
cd chern_prefactor(int n);

/// Σ_σ sgn σ tr(A_σ1 A_σ2 A_σ3), A_i = u⁻¹ ∂_i u, at chart point (θ, φ₁, φ₂).
cd chern_form_coefficient(const symbols::BoundarySymbol& u, double theta, double phi1, double phi2,
                          Derivative derivative = Derivative::Analytic);

/// dθ∧dφ₁∧dφ₂ coefficient of 3(z₁dz̄₁ − z̄₁dz₁)∧dz₂∧dz̄₂ + 3(z₂dz̄₂ − z̄₂dz₂)∧dz₁∧dz̄₁.
cd su2_closed_form_coefficient(double theta, double phi1, double phi2);

struct FormComparison {
  double max_abs_diff = 0.0;
  long nodes = 0;
};

/// Node-wise comparison of chern_form_coefficient against the closed form over
/// a quadrature grid (n = 2); throws MismatchExceedsTolerance beyond `tol`.
FormComparison chern_form_trace(const symbols::BoundarySymbol& u, int theta_nodes = 16,
                                int phi_nodes = 16, double tol = 1e-9);

/// (ℓ+n−1)!/(ℓ!(n−1)!)
long multiplicity(int ell, int n);

/// multiplicity(ℓ, n) × the rounded odd Chern integral.
int landau_prediction(int ell, const symbols::BoundarySymbol& u);

}  // namespace chargedef::chern
