#include "chargedef/index.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "chargedef/error.hpp"

namespace chargedef::index {

namespace {

using Eigen::MatrixXcd;
using symbols::BoundarySymbol;

constexpr double kHalfPi = std::numbers::pi / 2.0;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Angles (θ_1..θ_{n−1}, φ_1..φ_n) ↦ z_j = r_j e^{iφ_j} with
// r_1 = cos θ_1, r_2 = sin θ_1 cos θ_2, ..., r_n = sin θ_1 ⋯ sin θ_{n−1}.
std::vector<cd> sphere_point(int n, const std::vector<double>& angles) {
  std::vector<cd> z(static_cast<std::size_t>(n));
  double tail = 1.0;
  for (int j = 0; j < n; ++j) {
    double r = tail;
    if (j < n - 1) {
      r = tail * std::cos(angles[static_cast<std::size_t>(j)]);
      tail *= std::sin(angles[static_cast<std::size_t>(j)]);
    }
    z[static_cast<std::size_t>(j)] = std::polar(r, angles[static_cast<std::size_t>(n - 1 + j)]);
  }
  return z;
}

double abs_det(const BoundarySymbol& a, const std::vector<double>& angles) {
  return std::abs(a.eval(sphere_point(a.dim(), angles)).determinant());
}

// Compass search: shrink the step until no coordinate move improves |det|.
std::vector<double> refine(const BoundarySymbol& a, std::vector<double> x, double step) {
  const int n = a.dim();
  double best = abs_det(a, x);
  while (step > 1e-10 && best > 0.0) {
    bool improved = false;
    for (std::size_t c = 0; c < x.size(); ++c) {
      for (const double dir : {1.0, -1.0}) {
        std::vector<double> y = x;
        y[c] += dir * step;
        if (static_cast<int>(c) < n - 1) y[c] = std::clamp(y[c], 0.0, kHalfPi);
        const double v = abs_det(a, y);
        if (v < best) {
          best = v;
          x = std::move(y);
          improved = true;
        }
      }
    }
    if (!improved) step *= 0.5;
  }
  return x;
}

int rank_of(const Eigen::VectorXd& s, double rel_tol) {
  if (s.size() == 0 || s(0) == 0.0) return 0;
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > rel_tol * s(0)) ++r;
  }
  return r;
}

}  // namespace

FredholmCheck check_fredholm(const BoundarySymbol& a, int min_samples) {
  const int n = a.dim();
  const int axes = 2 * n - 1;
  int per_axis = 2;
  while (std::pow(per_axis, axes) < min_samples) ++per_axis;

  // θ axes include both endpoints so the coordinate subspheres are sampled;
  // φ axes are periodic.
  std::vector<std::vector<double>> axis_values(static_cast<std::size_t>(axes));
  for (int c = 0; c < axes; ++c) {
    auto& vals = axis_values[static_cast<std::size_t>(c)];
    for (int t = 0; t < per_axis; ++t) {
      vals.push_back(c < n - 1 ? kHalfPi * t / (per_axis - 1) : kTwoPi * t / per_axis);
    }
  }

  struct Candidate {
    double value;
    std::vector<double> angles;
  };
  std::vector<Candidate> best;
  constexpr std::size_t kKeep = 5;
  std::vector<int> counter(static_cast<std::size_t>(axes), 0);
  int samples = 0;
  while (true) {
    std::vector<double> angles(static_cast<std::size_t>(axes));
    for (int c = 0; c < axes; ++c) {
      angles[static_cast<std::size_t>(c)] =
          axis_values[static_cast<std::size_t>(c)][static_cast<std::size_t>(counter[static_cast<std::size_t>(c)])];
    }
    const double v = abs_det(a, angles);
    ++samples;
    if (best.size() < kKeep || v < best.back().value) {
      best.push_back({v, angles});
      std::sort(best.begin(), best.end(),
                [](const Candidate& x, const Candidate& y) { return x.value < y.value; });
      if (best.size() > kKeep) best.pop_back();
    }
    int c = 0;
    while (c < axes && ++counter[static_cast<std::size_t>(c)] == per_axis) {
      counter[static_cast<std::size_t>(c)] = 0;
      ++c;
    }
    if (c == axes) break;
  }

  const double step = kHalfPi / (per_axis - 1);
  Candidate winner = best.front();
  for (const auto& cand : best) {
    if (winner.value < kFredholmThreshold) break;
    auto x = refine(a, cand.angles, step);
    const double v = abs_det(a, x);
    if (v < winner.value) winner = {v, std::move(x)};
  }

  FredholmCheck out;
  out.min_abs_det = winner.value;
  out.witness = sphere_point(n, winner.angles);
  out.fredholm = winner.value >= kFredholmThreshold;
  out.samples = samples;
  return out;
}

int nullity(const MatrixXcd& a, double rel_tol) {
  return static_cast<int>(a.cols()) - rank_of(toeplitz::singular_values(a), rel_tol);
}

std::vector<int> degree_samples(int D_max) {
  if (D_max < 0) fail(ErrorKind::DomainError, "degree cap must be >= 0");
  const int lo = D_max / 2;
  const int step = std::max(1, (D_max - lo) / 3);
  std::vector<int> out;
  for (int D = D_max; D >= lo; D -= step) out.push_back(D);
  std::reverse(out.begin(), out.end());
  return out;
}

IndexReport graded_index(const landau::LevelSpec& spec, const BoundarySymbol& a, int D_max,
                         double rank_tol) {
  const auto check = check_fredholm(a);
  if (!check.fredholm) {
    fail(ErrorKind::NotFredholm,
         "symbol is not invertible on the sphere (min |det| = " + std::to_string(check.min_abs_det) + ")");
  }
  const BoundarySymbol adj = symbols::symbol_adjoint(a);
  const int d = a.degree();
  const auto t = toeplitz::assemble_toeplitz(spec, a, D_max);
  const auto t_adj = toeplitz::assemble_toeplitz(spec, adj, D_max);

  IndexReport report;
  report.rank_tolerance = rank_tol;
  for (const int D : degree_samples(D_max)) {
    const int ker = nullity(t.truncate(D, D + d).data, rank_tol);
    const int coker = nullity(t_adj.truncate(D, D + d).data, rank_tol);
    report.history.push_back({D, ker, coker});
  }
  const auto& last = report.history.back();
  report.kernel_dim = last.kernel_dim;
  report.cokernel_dim = last.cokernel_dim;
  report.index = last.kernel_dim - last.cokernel_dim;
  const std::size_t h = report.history.size();
  report.stabilized = h >= 3;
  for (std::size_t i = h >= 3 ? h - 3 : 0; i + 1 < h && report.stabilized; ++i) {
    report.stabilized = report.history[i].kernel_dim == last.kernel_dim &&
                        report.history[i].cokernel_dim == last.cokernel_dim;
  }
  return report;
}

MatrixXcd cokernel_vectors(const landau::LevelSpec& spec, const BoundarySymbol& a, int D,
                           std::vector<toeplitz::BasisLabel>* labels, double rank_tol) {
  const auto t_adj = toeplitz::assemble_toeplitz(spec, symbols::symbol_adjoint(a), D);
  if (labels) *labels = t_adj.cols;
  Eigen::BDCSVD<MatrixXcd> svd(t_adj.data, Eigen::ComputeFullV);
  const int r = rank_of(svd.singularValues(), rank_tol);
  const MatrixXcd& v = svd.matrixV();
  return v.rightCols(v.cols() - r);
}

FedosovResult fedosov_index(const landau::LevelSpec& spec, const BoundarySymbol& a, int p, int D) {
  if (p < spec.dim() + 1) fail(ErrorKind::DomainError, "Fedosov power must be >= n + 1");
  const BoundarySymbol adj = symbols::symbol_adjoint(a);
  const BoundarySymbol id = BoundarySymbol::identity(a.dim(), a.size());
  if (!symbols::symbol_product(a, adj).approx_equal(id, 1e-12) ||
      !symbols::symbol_product(adj, a).approx_equal(id, 1e-12)) {
    fail(ErrorKind::NotUnitarySymbol, "Fedosov trace needs a unitary symbol");
  }
  const int window = D + 2 * a.degree() * p;
  const MatrixXcd A = toeplitz::assemble_toeplitz(spec, a, window).truncate(window, window).data;
  const auto t_adj = toeplitz::assemble_toeplitz(spec, adj, window).truncate(window, window);
  const MatrixXcd& B = t_adj.data;

  const auto I = MatrixXcd::Identity(A.rows(), A.cols());
  const MatrixXcd E1 = I - B * A;
  const MatrixXcd E2 = I - A * B;
  MatrixXcd P1 = E1;
  MatrixXcd P2 = E2;
  for (int k = 1; k < p; ++k) {
    P1 = P1 * E1;
    P2 = P2 * E2;
  }
  double value = 0.0;
  for (const int i : t_adj.col_positions(D)) value += (P1(i, i) - P2(i, i)).real();

  FedosovResult out;
  out.value = value;
  out.nearest = static_cast<int>(std::lround(value));
  out.distance = std::abs(value - out.nearest);
  out.power = p;
  out.D = D;
  out.window = window;
  if (out.distance > 0.1) {
    fail(ErrorKind::NotConverged, "Fedosov trace " + std::to_string(value) +
                                      " is more than 0.1 from an integer");
  }
  return out;
}

std::vector<LevelIndex> index_vs_level(const BoundarySymbol& a,
                                       const std::vector<landau::LevelSpec>& levels, int D_max) {
  std::vector<LevelIndex> out;
  for (const auto& spec : levels) out.push_back({spec, graded_index(spec, a, D_max)});
  return out;
}

bool indices_agree(const std::vector<LevelIndex>& table) {
  for (const auto& row : table) {
    if (!row.report.stabilized || row.report.index != table.front().report.index) return false;
  }
  return true;
}

}  // namespace chargedef::index
