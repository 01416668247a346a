#pragma once

// Truncated Toeplitz operators, commutators and level direct sums in the
// graded bases ξ̂_{m,k} ⊗ e_p.
//
// A homogeneous symbol term z^α z̄^β |z|^{−|α|−|β|} shifts the charge m − k of
// a basis vector by α − β, so column (m, k, p) meets row level k' only at
// m' = m − k + k' + α − β. Every matrix is assembled column by column from
// that rule; there is no search over row/column pairs.

#include <Eigen/Dense>
#include <iosfwd>
#include <string>
#include <vector>

#include "chargedef/landau.hpp"
#include "chargedef/symbols.hpp"

namespace chargedef::toeplitz {

using Eigen::MatrixXcd;
using Eigen::VectorXd;

struct BasisLabel {
  MultiIndex m;
  MultiIndex level;
  int component = 0;  // 0-based vector component p

  int degree() const { return m.total(); }
  std::string to_string() const;
  bool operator==(const BasisLabel&) const = default;
};

/// Labels ordered (level, |m|, lexicographic m, component) for every level in
/// `levels` and every m with min_degree < |m| <= max_degree.
std::vector<BasisLabel> graded_labels(const std::vector<MultiIndex>& levels, int components,
                                      int max_degree, int min_degree_exclusive = -1);

class GradedMatrix {
 public:
  std::vector<BasisLabel> rows;
  std::vector<BasisLabel> cols;
  int row_window = 0;  // rows have |m| <= row_window
  int col_window = 0;  // cols have |m| <= col_window
  int symbol_degree = 0;
  std::string description;
  MatrixXcd data;

  /// Entries whose charge degree |m| − |level| differs between row and column
  /// by more than symbol_degree are exactly zero.
  bool check_banded() const;

  /// Positions of labels with |m| <= max_degree (and > min_degree_exclusive).
  std::vector<int> col_positions(int max_degree, int min_degree_exclusive = -1) const;
  std::vector<int> row_positions(int max_degree, int min_degree_exclusive = -1) const;

  /// Rectangular truncation: columns |m| <= col_max, rows |m| <= row_max.
  GradedMatrix truncate(int col_max, int row_max) const;

  /// Nonzero entries as CSV lines "row,col,re,im" (header included).
  void write_csv(std::ostream& os) const;
};

/// The symbol of an entry as a list of monomials with radial profiles.
struct SymbolTerm {
  Monomial monomial;
  cd coefficient;
  landau::RadialProfile profile;
};

class SymbolTerms {
 public:
  explicit SymbolTerms(const symbols::BoundarySymbol& a);
  explicit SymbolTerms(const symbols::FullSymbol& a);

  int dim() const { return dim_; }
  int size() const { return size_; }
  int degree() const { return degree_; }
  const std::vector<SymbolTerm>& entry(int row, int col) const {
    return entries_[static_cast<std::size_t>(row * size_ + col)];
  }
  const std::string& description() const { return description_; }

 private:
  int dim_ = 0;
  int size_ = 0;
  int degree_ = 0;
  std::vector<std::vector<SymbolTerm>> entries_;
  std::string description_;
};

/// P_k λ(a) P_k on columns |m| <= D, rows |m| <= D + deg(a). For a full level
/// the result is block diagonal over {k : |k| = ℓ}.
GradedMatrix assemble_toeplitz(const landau::LevelSpec& spec, const symbols::BoundarySymbol& a,
                               int D);
GradedMatrix assemble_toeplitz(const landau::LevelSpec& spec, const SymbolTerms& a, int D);

/// Direct sum over the particular levels of ℓ; off-diagonal level blocks
/// P_k λ(a) P_k' are filled in when include_offdiagonal is set.
GradedMatrix direct_sum_level(int n, int ell, const symbols::BoundarySymbol& a, int D,
                              bool include_offdiagonal = false);

/// P_{k_row} λ(a) P_{k_col} on columns min_degree < |m| <= max_degree with all
/// rows the image reaches.
GradedMatrix assemble_cross_block(const MultiIndex& k_row, const MultiIndex& k_col,
                                  const symbols::BoundarySymbol& a, int max_degree,
                                  int min_degree_exclusive = -1);

/// [P_k, π(a)] on span{ξ̂_{m,k'} : min_degree < |m| <= max_degree, |k'| <= K},
/// rows over the same levels with every reachable |m|.
GradedMatrix assemble_commutator(const MultiIndex& k, const SymbolTerms& a, int max_degree, int K,
                                 int min_degree_exclusive = -1);
GradedMatrix assemble_commutator(const MultiIndex& k, const symbols::BoundarySymbol& a,
                                 int max_degree, int K, int min_degree_exclusive = -1);
GradedMatrix assemble_commutator(const MultiIndex& k, const symbols::FullSymbol& a,
                                 int max_degree, int K, int min_degree_exclusive = -1);

/// Bergman-space compression P_B λ(a) P_B in the basis μ_m.
GradedMatrix assemble_bergman_toeplitz(const symbols::BoundarySymbol& a, int D);

/// Descending singular values.
VectorXd singular_values(const MatrixXcd& a);
double operator_norm(const MatrixXcd& a);

/// Largest singular value of the commutator on the tail window D < |m| <= 2D.
double commutator_tail_norm(const MultiIndex& k, const symbols::BoundarySymbol& a, int D, int K);

/// ‖T(ab) − T(a)T(b)‖ on columns D/2 < |m| <= D of level k.
double multiplicativity_defect(const MultiIndex& k, const symbols::BoundarySymbol& a,
                               const symbols::BoundarySymbol& b, int D);

/// Singular values of T(a) restricted to columns D/2 < |m| <= D.
VectorXd tail_singular_values(const landau::LevelSpec& spec, const symbols::BoundarySymbol& a,
                              int D);

}  // namespace chargedef::toeplitz
