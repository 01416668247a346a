#pragma once

// Fredholm indices from graded truncations.

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "chargedef/landau.hpp"
#include "chargedef/symbols.hpp"
#include "chargedef/toeplitz.hpp"

namespace chargedef::index {

/// Singular values below this fraction of the largest count as zero.
inline constexpr double kRankTolerance = 1e-8;
/// |det a(v)| below this marks the symbol as not invertible.
inline constexpr double kFredholmThreshold = 1e-6;

struct FredholmCheck {
  bool fredholm = false;
  double min_abs_det = 0.0;
  std::vector<cd> witness;  // unit vector attaining min_abs_det
  int samples = 0;
};

/// Minimum of |det a(v)| over a tensor grid of at least `min_samples` unit
/// vectors (the coordinate subspheres are grid faces), refined by pattern
/// search from the best grid points.
FredholmCheck check_fredholm(const symbols::BoundarySymbol& a, int min_samples = 10000);

/// Columns minus numerical rank at relative tolerance `rel_tol`.
int nullity(const Eigen::MatrixXcd& a, double rel_tol = kRankTolerance);

struct HistoryEntry {
  int D = 0;
  int kernel_dim = 0;
  int cokernel_dim = 0;
};

struct IndexReport {
  int kernel_dim = 0;
  int cokernel_dim = 0;
  int index = 0;
  bool stabilized = false;
  std::vector<HistoryEntry> history;
  double rank_tolerance = kRankTolerance;
};

/// Degree caps sampled by graded_index: D_max/2 .. D_max, ascending, step
/// max(1, (D_max − D_max/2)/3), always containing D_max.
std::vector<int> degree_samples(int D_max);

/// Kernel and cokernel dimensions of rectangular truncations (columns |m| <= D,
/// rows |m| <= D + deg a) of T(a) and T(a*). Throws NotFredholm when
/// check_fredholm fails. A report that did not stabilize is returned with
/// stabilized = false.
IndexReport graded_index(const landau::LevelSpec& spec, const symbols::BoundarySymbol& a,
                         int D_max, double rank_tol = kRankTolerance);

/// Orthonormal null vectors of the truncated T(a*) at cap D (one per column),
/// expressed in the column labels of `labels`.
Eigen::MatrixXcd cokernel_vectors(const landau::LevelSpec& spec, const symbols::BoundarySymbol& a,
                                  int D, std::vector<toeplitz::BasisLabel>* labels = nullptr,
                                  double rank_tol = kRankTolerance);

struct FedosovResult {
  double value = 0.0;
  int nearest = 0;
  double distance = 0.0;  // |value − nearest|
  int power = 0;
  int D = 0;
  int window = 0;
};

/// Σ_{|m| <= D} diag[(1 − A*A)^p − (1 − AA*)^p] with A = T(a) and A* = T(a*)
/// truncated square at W = D + 2·deg(a)·p. Requires a·a* = 1 on the sphere
/// (NotUnitarySymbol) and p >= n + 1; throws NotConverged when the value is
/// more than 0.1 from an integer.
FedosovResult fedosov_index(const landau::LevelSpec& spec, const symbols::BoundarySymbol& a,
                            int p, int D);

struct LevelIndex {
  landau::LevelSpec spec;
  IndexReport report;
};

std::vector<LevelIndex> index_vs_level(const symbols::BoundarySymbol& a,
                                       const std::vector<landau::LevelSpec>& levels, int D_max);
/// True when every entry is stabilized and all indices agree.
bool indices_agree(const std::vector<LevelIndex>& table);

}  // namespace chargedef::index
