#include "chargedef/toeplitz.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <functional>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>

#include "chargedef/bergman.hpp"
#include "chargedef/error.hpp"
#include "chargedef/parallel.hpp"

namespace chargedef::toeplitz {

namespace {

using landau::BasisVector;

struct LabelKey {
  MultiIndex level;
  MultiIndex m;
  int component;
  auto operator<=>(const LabelKey&) const = default;
};

LabelKey key_of(const BasisLabel& l) { return {l.level, l.m, l.component}; }

using BasisCache = std::map<std::pair<MultiIndex, MultiIndex>, BasisVector>;

void cache_labels(BasisCache& cache, const std::vector<BasisLabel>& labels) {
  for (const auto& l : labels) {
    const auto key = std::make_pair(l.m, l.level);
    if (!cache.contains(key)) cache.emplace(key, landau::basis_vector(l.m, l.level));
  }
}

// sign(row level, col level): +1/−1 to include the pair, 0 to skip it.
using LevelSign = std::function<int(const MultiIndex&, const MultiIndex&)>;

// Fills data(row, col) = sign·⟨row, a·col⟩ using the charge rule. Rows not in
// `rows` are dropped, so callers pick row windows that hold the full image.
MatrixXcd fill_landau(const std::vector<BasisLabel>& rows, const std::vector<BasisLabel>& cols,
                      const std::vector<MultiIndex>& row_levels, const SymbolTerms& a,
                      const LevelSign& sign) {
  std::map<LabelKey, int> row_index;
  for (std::size_t i = 0; i < rows.size(); ++i) row_index.emplace(key_of(rows[i]), static_cast<int>(i));
  BasisCache cache;
  cache_labels(cache, rows);
  cache_labels(cache, cols);

  MatrixXcd out = MatrixXcd::Zero(static_cast<Eigen::Index>(rows.size()),
                                  static_cast<Eigen::Index>(cols.size()));
  parallel_for(cols.size(), [&](std::size_t j) {
    const BasisLabel& c = cols[j];
    const BasisVector& g = cache.at({c.m, c.level});
    for (const auto& kr : row_levels) {
      const int s = sign(kr, c.level);
      if (s == 0) continue;
      for (int p = 0; p < a.size(); ++p) {
        for (const auto& term : a.entry(p, c.component)) {
          const MultiIndex target = c.m - c.level + kr + term.monomial.charge();
          if (!target.nonnegative()) continue;
          const auto it = row_index.find({kr, target, p});
          if (it == row_index.end()) continue;
          const BasisVector& f = cache.at({target, kr});
          const landau::cld v = landau::matrix_element(f, term.monomial, term.profile, g);
          out(it->second, static_cast<Eigen::Index>(j)) +=
              static_cast<double>(s) * term.coefficient *
              cd(static_cast<double>(v.real()), static_cast<double>(v.imag()));
        }
      }
    }
  });
  return out;
}

int max_level_total(const std::vector<MultiIndex>& levels) {
  int v = 0;
  for (const auto& k : levels) v = std::max(v, k.total());
  return v;
}

int min_level_total(const std::vector<MultiIndex>& levels) {
  int v = levels.empty() ? 0 : levels.front().total();
  for (const auto& k : levels) v = std::min(v, k.total());
  return v;
}

}  // namespace

std::string BasisLabel::to_string() const {
  return "m=" + m.to_string() + " k=" + level.to_string() + " p=" + std::to_string(component);
}

std::vector<BasisLabel> graded_labels(const std::vector<MultiIndex>& levels, int components,
                                      int max_degree, int min_degree_exclusive) {
  std::vector<BasisLabel> out;
  for (const auto& k : levels) {
    for (const auto& m : graded_multi_indices(k.dim(), std::max(max_degree, -1))) {
      if (m.total() <= min_degree_exclusive) continue;
      for (int p = 0; p < components; ++p) out.push_back({m, k, p});
    }
  }
  return out;
}

bool GradedMatrix::check_banded() const {
  for (Eigen::Index j = 0; j < data.cols(); ++j) {
    const auto& c = cols[static_cast<std::size_t>(j)];
    const int cd_ = c.m.total() - c.level.total();
    for (Eigen::Index i = 0; i < data.rows(); ++i) {
      const auto& r = rows[static_cast<std::size_t>(i)];
      const int rd = r.m.total() - r.level.total();
      if (std::abs(rd - cd_) > symbol_degree && data(i, j) != cd(0.0)) return false;
    }
  }
  return true;
}

namespace {

std::vector<int> positions(const std::vector<BasisLabel>& labels, int max_degree, int min_excl) {
  std::vector<int> out;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const int d = labels[i].degree();
    if (d <= max_degree && d > min_excl) out.push_back(static_cast<int>(i));
  }
  return out;
}

}  // namespace

std::vector<int> GradedMatrix::col_positions(int max_degree, int min_degree_exclusive) const {
  return positions(cols, max_degree, min_degree_exclusive);
}

std::vector<int> GradedMatrix::row_positions(int max_degree, int min_degree_exclusive) const {
  return positions(rows, max_degree, min_degree_exclusive);
}

GradedMatrix GradedMatrix::truncate(int col_max, int row_max) const {
  const auto ci = col_positions(col_max);
  const auto ri = row_positions(row_max);
  GradedMatrix out;
  out.row_window = std::min(row_max, row_window);
  out.col_window = std::min(col_max, col_window);
  out.symbol_degree = symbol_degree;
  out.description = description;
  for (int i : ri) out.rows.push_back(rows[static_cast<std::size_t>(i)]);
  for (int j : ci) out.cols.push_back(cols[static_cast<std::size_t>(j)]);
  out.data = data(ri, ci);
  return out;
}

void GradedMatrix::write_csv(std::ostream& os) const {
  os << "row,col,re,im\n";
  os << std::setprecision(17);
  for (Eigen::Index j = 0; j < data.cols(); ++j) {
    for (Eigen::Index i = 0; i < data.rows(); ++i) {
      const cd v = data(i, j);
      if (v == cd(0.0)) continue;
      os << i << ',' << j << ',' << v.real() << ',' << v.imag() << '\n';
    }
  }
}

// ---------------------------------------------------------------------------

SymbolTerms::SymbolTerms(const symbols::BoundarySymbol& a)
    : dim_(a.dim()), size_(a.size()), degree_(a.degree()),
      entries_(static_cast<std::size_t>(a.size() * a.size())), description_(a.to_string()) {
  for (int p = 0; p < size_; ++p) {
    for (int q = 0; q < size_; ++q) {
      auto& e = entries_[static_cast<std::size_t>(p * size_ + q)];
      for (const auto& [m, c] : a.entry(p, q)) e.push_back({m, c, landau::RadialProfile::homogeneous()});
    }
  }
}

SymbolTerms::SymbolTerms(const symbols::FullSymbol& a)
    : dim_(a.boundary().dim()), size_(a.boundary().size()), degree_(a.boundary().degree()),
      entries_(static_cast<std::size_t>(size_ * size_)) {
  std::ostringstream desc;
  desc << "ramps[";
  for (const auto& r : a.ramps()) desc << '(' << r.radius << ',' << r.weight << ')';
  desc << "]*(" << a.boundary().to_string() << ")";
  for (int p = 0; p < size_; ++p) {
    for (int q = 0; q < size_; ++q) {
      auto& e = entries_[static_cast<std::size_t>(p * size_ + q)];
      for (const auto& ramp : a.ramps()) {
        for (const auto& [m, c] : a.boundary().entry(p, q)) {
          e.push_back({m, c * ramp.weight, landau::RadialProfile::ramp(ramp.radius)});
        }
      }
    }
  }
  for (const auto& d : a.decay()) {
    entries_[static_cast<std::size_t>(d.row * size_ + d.col)].push_back(
        {d.monomial, d.coefficient, landau::RadialProfile::decay(d.rate)});
    degree_ = std::max(degree_, d.monomial.degree());
    desc << " + decay(" << d.row << ',' << d.col << ',' << d.rate << ')';
  }
  description_ = desc.str();
}

// ---------------------------------------------------------------------------

namespace {

void check_spec(const landau::LevelSpec& spec, const SymbolTerms& a) {
  if (spec.dim() != a.dim()) fail(ErrorKind::DimensionMismatch, "level and symbol dimensions differ");
}

GradedMatrix level_block(const std::vector<MultiIndex>& levels, const SymbolTerms& a, int D,
                         bool include_offdiagonal) {
  if (D < 0) fail(ErrorKind::DomainError, "degree cap must be >= 0");
  GradedMatrix g;
  g.symbol_degree = a.degree();
  g.col_window = D;
  g.row_window = D + a.degree();
  g.cols = graded_labels(levels, a.size(), D);
  g.rows = graded_labels(levels, a.size(), g.row_window);
  g.description = a.description();
  const LevelSign sign = [include_offdiagonal](const MultiIndex& r, const MultiIndex& c) {
    return (include_offdiagonal || r == c) ? 1 : 0;
  };
  g.data = fill_landau(g.rows, g.cols, levels, a, sign);
  return g;
}

}  // namespace

GradedMatrix assemble_toeplitz(const landau::LevelSpec& spec, const SymbolTerms& a, int D) {
  check_spec(spec, a);
  return level_block(spec.levels(), a, D, false);
}

GradedMatrix assemble_toeplitz(const landau::LevelSpec& spec, const symbols::BoundarySymbol& a,
                               int D) {
  return assemble_toeplitz(spec, SymbolTerms(a), D);
}

GradedMatrix direct_sum_level(int n, int ell, const symbols::BoundarySymbol& a, int D,
                              bool include_offdiagonal) {
  const auto spec = landau::LevelSpec::full(n, ell);
  const SymbolTerms terms(a);
  check_spec(spec, terms);
  return level_block(spec.levels(), terms, D, include_offdiagonal);
}

GradedMatrix assemble_cross_block(const MultiIndex& k_row, const MultiIndex& k_col,
                                  const symbols::BoundarySymbol& a, int max_degree,
                                  int min_degree_exclusive) {
  const SymbolTerms terms(a);
  if (k_row.dim() != terms.dim() || k_col.dim() != terms.dim()) {
    fail(ErrorKind::DimensionMismatch, "level and symbol dimensions differ");
  }
  GradedMatrix g;
  g.symbol_degree = terms.degree();
  g.col_window = max_degree;
  g.row_window = max_degree + terms.degree() + std::max(0, k_row.total() - k_col.total());
  g.cols = graded_labels({k_col}, terms.size(), max_degree, min_degree_exclusive);
  g.rows = graded_labels({k_row}, terms.size(), g.row_window);
  g.description = terms.description();
  g.data = fill_landau(g.rows, g.cols, {k_row}, terms,
                       [](const MultiIndex&, const MultiIndex&) { return 1; });
  return g;
}

GradedMatrix assemble_commutator(const MultiIndex& k, const SymbolTerms& a, int max_degree, int K,
                                 int min_degree_exclusive) {
  if (k.dim() != a.dim()) fail(ErrorKind::DimensionMismatch, "level and symbol dimensions differ");
  if (K < k.total()) fail(ErrorKind::DomainError, "energy cutoff K must include the level k");
  const auto levels = graded_multi_indices(k.dim(), K);
  GradedMatrix g;
  g.symbol_degree = a.degree();
  g.col_window = max_degree;
  g.row_window = max_degree + a.degree() + max_level_total(levels) - min_level_total(levels);
  g.cols = graded_labels(levels, a.size(), max_degree, min_degree_exclusive);
  g.rows = graded_labels(levels, a.size(), g.row_window);
  g.description = "[P_k, " + a.description() + "]";
  // [P, A] = P A (1−P) − (1−P) A P
  const LevelSign sign = [&k](const MultiIndex& r, const MultiIndex& c) {
    if (r == k && c != k) return 1;
    if (r != k && c == k) return -1;
    return 0;
  };
  g.data = fill_landau(g.rows, g.cols, levels, a, sign);
  return g;
}

GradedMatrix assemble_commutator(const MultiIndex& k, const symbols::BoundarySymbol& a,
                                 int max_degree, int K, int min_degree_exclusive) {
  return assemble_commutator(k, SymbolTerms(a), max_degree, K, min_degree_exclusive);
}

GradedMatrix assemble_commutator(const MultiIndex& k, const symbols::FullSymbol& a,
                                 int max_degree, int K, int min_degree_exclusive) {
  return assemble_commutator(k, SymbolTerms(a), max_degree, K, min_degree_exclusive);
}

GradedMatrix assemble_bergman_toeplitz(const symbols::BoundarySymbol& a, int D) {
  if (D < 0) fail(ErrorKind::DomainError, "degree cap must be >= 0");
  const int n = a.dim();
  const std::vector<MultiIndex> levels{MultiIndex(n)};
  GradedMatrix g;
  g.symbol_degree = a.degree();
  g.col_window = D;
  g.row_window = D + a.degree();
  g.cols = graded_labels(levels, a.size(), D);
  g.rows = graded_labels(levels, a.size(), g.row_window);
  g.description = "bergman:" + a.to_string();
  std::map<LabelKey, int> row_index;
  for (std::size_t i = 0; i < g.rows.size(); ++i) row_index.emplace(key_of(g.rows[i]), static_cast<int>(i));
  g.data = MatrixXcd::Zero(static_cast<Eigen::Index>(g.rows.size()),
                           static_cast<Eigen::Index>(g.cols.size()));
  parallel_for(g.cols.size(), [&](std::size_t j) {
    const auto& c = g.cols[j];
    for (int p = 0; p < a.size(); ++p) {
      for (const auto& [mono, coeff] : a.entry(p, c.component)) {
        const MultiIndex target = c.m + mono.charge();
        if (!target.nonnegative()) continue;
        const auto it = row_index.find({levels[0], target, p});
        if (it == row_index.end()) continue;
        g.data(it->second, static_cast<Eigen::Index>(j)) +=
            coeff * bergman::ball_matrix_element({target}, mono, {c.m});
      }
    }
  });
  return g;
}

// ---------------------------------------------------------------------------

VectorXd singular_values(const MatrixXcd& a) {
  if (a.size() == 0) return VectorXd();
  Eigen::BDCSVD<MatrixXcd> svd(a);
  return svd.singularValues();
}

double operator_norm(const MatrixXcd& a) {
  const VectorXd s = singular_values(a);
  return s.size() ? s(0) : 0.0;
}

double commutator_tail_norm(const MultiIndex& k, const symbols::BoundarySymbol& a, int D, int K) {
  return operator_norm(assemble_commutator(k, a, 2 * D, K, D).data);
}

double multiplicativity_defect(const MultiIndex& k, const symbols::BoundarySymbol& a,
                               const symbols::BoundarySymbol& b, int D) {
  const SymbolTerms ta(a);
  const SymbolTerms tb(b);
  const SymbolTerms tab(symbols::symbol_product(a, b));
  const std::vector<MultiIndex> levels{k};
  const int mid = D / 2;
  const int row_max = D + ta.degree() + tb.degree();
  const LevelSign same = [](const MultiIndex&, const MultiIndex&) { return 1; };

  const auto cols = graded_labels(levels, ta.size(), D, mid);
  const auto inner = graded_labels(levels, ta.size(), D + tb.degree());
  const auto outer = graded_labels(levels, ta.size(), row_max);

  const MatrixXcd b_block = fill_landau(inner, cols, levels, tb, same);
  const MatrixXcd a_block = fill_landau(outer, inner, levels, ta, same);
  const MatrixXcd ab_block = fill_landau(outer, cols, levels, tab, same);
  return operator_norm(ab_block - a_block * b_block);
}

VectorXd tail_singular_values(const landau::LevelSpec& spec, const symbols::BoundarySymbol& a,
                              int D) {
  const GradedMatrix full = assemble_toeplitz(spec, a, D);
  const auto ci = full.col_positions(D, D / 2);
  const MatrixXcd block = full.data(Eigen::all, ci);
  return singular_values(block);
}

}  // namespace chargedef::toeplitz
