#include "chargedef/symbols.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <random>
#include <sstream>
#include <tuple>

#include "chargedef/error.hpp"

namespace chargedef::symbols {

namespace {

constexpr double kSphereTolerance = 1e-12;

std::string format_coefficient(cd c) {
  std::ostringstream os;
  os << std::setprecision(17);
  if (c.imag() == 0.0) {
    os << c.real();
  } else if (c.real() == 0.0) {
    os << c.imag() << 'i';
  } else {
    os << '(' << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i)";
  }
  return os.str();
}

std::string format_polynomial(const Polynomial& p) {
  if (p.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : p) {
    if (!first) os << " + ";
    first = false;
    os << format_coefficient(c);
    for (int i = 0; i < m.dim(); ++i) {
      if (m.z_exp[i]) os << " * z" << (i + 1) << '^' << m.z_exp[i];
      if (m.zbar_exp[i]) os << " * zbar" << (i + 1) << '^' << m.zbar_exp[i];
    }
    if (m.degree()) os << " * |z|^-" << m.degree();
  }
  return os.str();
}

void check_same_shape(const BoundarySymbol& a, const BoundarySymbol& b) {
  if (a.dim() != b.dim() || a.size() != b.size()) {
    fail(ErrorKind::DimensionMismatch, "symbols differ in dimension or matrix size");
  }
}

std::vector<cd> random_unit_vector(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<cd> v(static_cast<std::size_t>(n));
  double norm2 = 0.0;
  for (auto& x : v) {
    x = cd(gauss(rng), gauss(rng));
    norm2 += std::norm(x);
  }
  const double inv = 1.0 / std::sqrt(norm2);
  for (auto& x : v) x *= inv;
  return v;
}

double distance(std::span<const cd> a, std::span<const cd> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::norm(a[i] - b[i]);
  return std::sqrt(s);
}

}  // namespace

// ---------------------------------------------------------------------------

BoundarySymbol::BoundarySymbol(int dim, int size)
    : dim_(dim), size_(size), entries_(static_cast<std::size_t>(size * size)) {
  if (dim < 1 || dim > kMaxDimension) fail(ErrorKind::DimensionMismatch, "bad symbol dimension");
  if (size < 1) fail(ErrorKind::DimensionMismatch, "symbol matrix size must be positive");
}

BoundarySymbol BoundarySymbol::identity(int dim, int size) {
  BoundarySymbol s(dim, size);
  const Monomial one{MultiIndex(dim), MultiIndex(dim)};
  for (int p = 0; p < size; ++p) s.add(p, p, one, 1.0);
  return s;
}

BoundarySymbol BoundarySymbol::scalar(int dim, const Polynomial& entry) {
  BoundarySymbol s(dim, 1);
  s.set_entry(0, 0, entry);
  return s;
}

BoundarySymbol BoundarySymbol::constant(int dim, cd value) {
  BoundarySymbol s(dim, 1);
  s.add(0, 0, Monomial{MultiIndex(dim), MultiIndex(dim)}, value);
  return s;
}

int BoundarySymbol::degree() const {
  int d = 0;
  for (const auto& e : entries_) d = std::max(d, max_degree(e));
  return d;
}

const Polynomial& BoundarySymbol::entry(int row, int col) const {
  if (row < 0 || row >= size_ || col < 0 || col >= size_) {
    fail(ErrorKind::IndexOutOfRange, "symbol entry out of range");
  }
  return entries_[static_cast<std::size_t>(row * size_ + col)];
}

void BoundarySymbol::set_entry(int row, int col, const Polynomial& entry) {
  if (row < 0 || row >= size_ || col < 0 || col >= size_) {
    fail(ErrorKind::IndexOutOfRange, "symbol entry out of range");
  }
  Polynomial p;
  for (const auto& [m, c] : entry) {
    if (m.dim() != dim_) fail(ErrorKind::DimensionMismatch, "monomial dimension differs from symbol");
    add_term(p, m, c);
  }
  normalize(p);
  entries_[static_cast<std::size_t>(row * size_ + col)] = std::move(p);
}

void BoundarySymbol::add(int row, int col, const Monomial& m, cd c) {
  Polynomial p = entry(row, col);
  if (m.dim() != dim_) fail(ErrorKind::DimensionMismatch, "monomial dimension differs from symbol");
  add_term(p, m, c);
  normalize(p);
  entries_[static_cast<std::size_t>(row * size_ + col)] = std::move(p);
}

void BoundarySymbol::normalize(Polynomial& p) const {
  // Rewrite z_n z̄_n = |z|² − Σ_{i<n} z_i z̄_i until no monomial holds both.
  const int last = dim_ - 1;
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto it = p.begin(); it != p.end(); ++it) {
      const Monomial& m = it->first;
      if (m.z_exp[last] > 0 && m.zbar_exp[last] > 0) {
        const cd c = it->second;
        Monomial base = m;
        base.z_exp[last] -= 1;
        base.zbar_exp[last] -= 1;
        p.erase(it);
        add_term(p, base, c);
        for (int i = 0; i < last; ++i) {
          Monomial t = base;
          t.z_exp[i] += 1;
          t.zbar_exp[i] += 1;
          add_term(p, t, -c);
        }
        changed = true;
        break;
      }
    }
  }
}

MatrixXcd BoundarySymbol::eval(std::span<const cd> v) const {
  if (static_cast<int>(v.size()) != dim_) {
    fail(ErrorKind::DimensionMismatch, "evaluation point has wrong dimension");
  }
  double norm2 = 0.0;
  for (const auto& x : v) norm2 += std::norm(x);
  if (std::abs(std::sqrt(norm2) - 1.0) > kSphereTolerance) {
    fail(ErrorKind::NotOnSphere, "evaluation point is not a unit vector");
  }
  MatrixXcd out(size_, size_);
  for (int p = 0; p < size_; ++p) {
    for (int q = 0; q < size_; ++q) out(p, q) = evaluate(entry(p, q), v);
  }
  return out;
}

MatrixXcd BoundarySymbol::eval_ray(std::span<const cd> z) const {
  double norm2 = 0.0;
  for (const auto& x : z) norm2 += std::norm(x);
  const double r = std::sqrt(norm2);
  if (r == 0.0) fail(ErrorKind::DomainError, "boundary symbol evaluated at the origin");
  std::vector<cd> v(z.begin(), z.end());
  for (auto& x : v) x /= r;
  // Re-normalise to absorb rounding before the sphere check.
  double n2 = 0.0;
  for (const auto& x : v) n2 += std::norm(x);
  for (auto& x : v) x /= std::sqrt(n2);
  return eval(v);
}

bool BoundarySymbol::approx_equal(const BoundarySymbol& other, double tol) const {
  if (dim_ != other.dim_ || size_ != other.size_) return false;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (!chargedef::approx_equal(entries_[i], other.entries_[i], tol)) return false;
  }
  return true;
}

std::string BoundarySymbol::to_string() const {
  if (size_ == 1) return format_polynomial(entries_[0]);
  std::ostringstream os;
  os << '[';
  for (int p = 0; p < size_; ++p) {
    if (p) os << ", ";
    os << '[';
    for (int q = 0; q < size_; ++q) {
      if (q) os << ", ";
      os << format_polynomial(entry(p, q));
    }
    os << ']';
  }
  os << ']';
  return os.str();
}

// ---------------------------------------------------------------------------

BoundarySymbol su2_symbol() {
  BoundarySymbol u(2, 2);
  const MultiIndex zero(2);
  const MultiIndex e1 = MultiIndex::unit(2, 1);
  const MultiIndex e2 = MultiIndex::unit(2, 2);
  u.add(0, 0, {e1, zero}, 1.0);
  u.add(0, 1, {e2, zero}, 1.0);
  u.add(1, 0, {zero, e2}, -1.0);
  u.add(1, 1, {zero, e1}, 1.0);
  return u;
}

BoundarySymbol coordinate_symbol(int n, int i) {
  if (i < 1 || i > n) {
    fail(ErrorKind::IndexOutOfRange, "coordinate index " + std::to_string(i) + " outside [1, " +
                                         std::to_string(n) + "]");
  }
  BoundarySymbol s(n, 1);
  s.add(0, 0, {MultiIndex::unit(n, i), MultiIndex(n)}, 1.0);
  return s;
}

BoundarySymbol zpow_symbol(int n, int d) {
  BoundarySymbol s(n, 1);
  MultiIndex e(n);
  e[0] = std::abs(d);
  if (d >= 0) {
    s.add(0, 0, {e, MultiIndex(n)}, 1.0);
  } else {
    s.add(0, 0, {MultiIndex(n), e}, 1.0);
  }
  return s;
}

BoundarySymbol symbol_sum(const BoundarySymbol& a, const BoundarySymbol& b) {
  check_same_shape(a, b);
  BoundarySymbol out(a.dim(), a.size());
  for (int p = 0; p < a.size(); ++p) {
    for (int q = 0; q < a.size(); ++q) {
      Polynomial e = a.entry(p, q);
      for (const auto& [m, c] : b.entry(p, q)) add_term(e, m, c);
      out.set_entry(p, q, e);
    }
  }
  return out;
}

BoundarySymbol symbol_scale(const BoundarySymbol& a, cd factor) {
  BoundarySymbol out(a.dim(), a.size());
  for (int p = 0; p < a.size(); ++p) {
    for (int q = 0; q < a.size(); ++q) {
      Polynomial e;
      for (const auto& [m, c] : a.entry(p, q)) add_term(e, m, c * factor);
      out.set_entry(p, q, e);
    }
  }
  return out;
}

BoundarySymbol symbol_product(const BoundarySymbol& a, const BoundarySymbol& b) {
  check_same_shape(a, b);
  const int n = a.size();
  BoundarySymbol out(a.dim(), n);
  for (int p = 0; p < n; ++p) {
    for (int q = 0; q < n; ++q) {
      Polynomial e;
      for (int r = 0; r < n; ++r) {
        for (const auto& [m, c] : multiply(a.entry(p, r), b.entry(r, q))) add_term(e, m, c);
      }
      out.set_entry(p, q, e);
    }
  }
  return out;
}

BoundarySymbol symbol_adjoint(const BoundarySymbol& a) {
  BoundarySymbol out(a.dim(), a.size());
  for (int p = 0; p < a.size(); ++p) {
    for (int q = 0; q < a.size(); ++q) out.set_entry(q, p, conjugate(a.entry(p, q)));
  }
  return out;
}

BoundarySymbol symbol_det(const BoundarySymbol& a) {
  const int n = a.size();
  if (n > 3) fail(ErrorKind::DimensionMismatch, "symbol_det supports N <= 3");
  auto e = [&](int p, int q) { return BoundarySymbol::scalar(a.dim(), a.entry(p, q)); };
  if (n == 1) return e(0, 0);
  if (n == 2) {
    return symbol_sum(symbol_product(e(0, 0), e(1, 1)),
                      symbol_scale(symbol_product(e(0, 1), e(1, 0)), -1.0));
  }
  // Laplace expansion along the first row.
  BoundarySymbol total(a.dim(), 1);
  for (int q = 0; q < 3; ++q) {
    const int c1 = (q == 0) ? 1 : 0;
    const int c2 = (q == 2) ? 1 : 2;
    BoundarySymbol minor = symbol_sum(symbol_product(e(1, c1), e(2, c2)),
                                      symbol_scale(symbol_product(e(1, c2), e(2, c1)), -1.0));
    BoundarySymbol term = symbol_product(e(0, q), minor);
    total = symbol_sum(total, symbol_scale(term, q == 1 ? -1.0 : 1.0));
  }
  return total;
}

BoundarySymbol symbol_conjugate_by(const BoundarySymbol& a, const MatrixXcd& g) {
  const int n = a.size();
  if (g.rows() != n || g.cols() != n) fail(ErrorKind::DimensionMismatch, "conjugator size mismatch");
  BoundarySymbol out(a.dim(), n);
  for (int p = 0; p < n; ++p) {
    for (int q = 0; q < n; ++q) {
      Polynomial e;
      for (int r = 0; r < n; ++r) {
        for (int s = 0; s < n; ++s) {
          const cd factor = g(p, r) * std::conj(g(q, s));
          if (factor == cd(0.0)) continue;
          for (const auto& [m, c] : a.entry(r, s)) add_term(e, m, c * factor);
        }
      }
      prune(e, 1e-15);
      out.set_entry(p, q, e);
    }
  }
  return out;
}

BoundarySymbol builtin_symbol(std::string_view name, int dim) {
  auto arg = [&](std::string_view prefix) -> std::string {
    return std::string(name.substr(prefix.size()));
  };
  try {
    if (name == "su2") {
      if (dim != 2) fail(ErrorKind::DimensionMismatch, "su2 symbol requires n = 2");
      return su2_symbol();
    }
    if (name == "constant") return BoundarySymbol::constant(dim, 1.0);
    if (name.starts_with("constant:")) {
      return BoundarySymbol::constant(dim, std::stod(arg("constant:")));
    }
    if (name.starts_with("coordinate:")) return coordinate_symbol(dim, std::stoi(arg("coordinate:")));
    if (name.starts_with("zpow:")) return zpow_symbol(dim, std::stoi(arg("zpow:")));
  } catch (const std::logic_error&) {
    fail(ErrorKind::ParseError, "malformed builtin symbol '" + std::string(name) + "'");
  }
  return parse_symbol(name, dim);
}

// ---------------------------------------------------------------------------

double ramp_value(double radius, double r) {
  if (r <= radius) return 0.0;
  if (r >= 2.0 * radius) return 1.0;
  return (r - radius) / radius;
}

FullSymbol::FullSymbol(BoundarySymbol boundary, double cutoff_radius, std::vector<DecayTerm> decay)
    : FullSymbol(std::move(boundary), std::vector<RadialRamp>{{cutoff_radius, 1.0}}, std::move(decay)) {}

FullSymbol::FullSymbol(BoundarySymbol boundary, std::vector<RadialRamp> ramps,
                       std::vector<DecayTerm> decay)
    : boundary_(std::move(boundary)), ramps_(std::move(ramps)), decay_(std::move(decay)) {
  for (const auto& r : ramps_) {
    if (!(r.radius > 0.0)) fail(ErrorKind::DomainError, "cutoff radius must be positive");
  }
  for (const auto& d : decay_) {
    if (!(d.rate > 0.0)) fail(ErrorKind::DomainError, "decay rate must be positive");
    if (d.row < 0 || d.row >= boundary_.size() || d.col < 0 || d.col >= boundary_.size()) {
      fail(ErrorKind::IndexOutOfRange, "decay term entry out of range");
    }
    if (d.monomial.dim() != boundary_.dim()) {
      fail(ErrorKind::DimensionMismatch, "decay monomial dimension differs from symbol");
    }
  }
  collect();
}

void FullSymbol::collect() {
  std::sort(ramps_.begin(), ramps_.end(),
            [](const RadialRamp& a, const RadialRamp& b) { return a.radius < b.radius; });
  std::vector<RadialRamp> merged;
  for (const auto& r : ramps_) {
    if (!merged.empty() && merged.back().radius == r.radius) {
      merged.back().weight += r.weight;
    } else {
      merged.push_back(r);
    }
  }
  std::erase_if(merged, [](const RadialRamp& r) { return r.weight == 0.0; });
  ramps_ = std::move(merged);

  auto key_less = [](const DecayTerm& a, const DecayTerm& b) {
    return std::tie(a.row, a.col, a.monomial, a.rate) < std::tie(b.row, b.col, b.monomial, b.rate);
  };
  std::sort(decay_.begin(), decay_.end(), key_less);
  std::vector<DecayTerm> dmerged;
  for (const auto& d : decay_) {
    if (!dmerged.empty() && !key_less(dmerged.back(), d) && !key_less(d, dmerged.back())) {
      dmerged.back().coefficient += d.coefficient;
    } else {
      dmerged.push_back(d);
    }
  }
  std::erase_if(dmerged, [](const DecayTerm& d) { return d.coefficient == cd(0.0); });
  decay_ = std::move(dmerged);
}

double FullSymbol::ramp_weight_sum() const {
  double s = 0.0;
  for (const auto& r : ramps_) s += r.weight;
  return s;
}

BoundarySymbol FullSymbol::boundary_limit() const { return symbol_scale(boundary_, ramp_weight_sum()); }

MatrixXcd FullSymbol::eval(std::span<const cd> z) const {
  double norm2 = 0.0;
  for (const auto& x : z) norm2 += std::norm(x);
  const double r = std::sqrt(norm2);
  MatrixXcd out = MatrixXcd::Zero(boundary_.size(), boundary_.size());
  double chi = 0.0;
  for (const auto& ramp : ramps_) chi += ramp.weight * ramp_value(ramp.radius, r);
  if (chi != 0.0) out += chi * boundary_.eval_ray(z);
  for (const auto& d : decay_) {
    Polynomial p;
    add_term(p, d.monomial, d.coefficient);
    out(d.row, d.col) += evaluate(p, z) * std::exp(-d.rate * norm2);
  }
  return out;
}

bool FullSymbol::approx_equal(const FullSymbol& other, double tol) const {
  if (!boundary_.approx_equal(other.boundary_, tol)) return false;
  if (ramps_.size() != other.ramps_.size() || decay_.size() != other.decay_.size()) return false;
  for (std::size_t i = 0; i < ramps_.size(); ++i) {
    if (std::abs(ramps_[i].radius - other.ramps_[i].radius) > tol) return false;
    if (std::abs(ramps_[i].weight - other.ramps_[i].weight) > tol) return false;
  }
  for (std::size_t i = 0; i < decay_.size(); ++i) {
    const auto& a = decay_[i];
    const auto& b = other.decay_[i];
    if (a.row != b.row || a.col != b.col || a.monomial != b.monomial) return false;
    if (std::abs(a.rate - b.rate) > tol || std::abs(a.coefficient - b.coefficient) > tol) return false;
  }
  return true;
}

FullSymbol operator+(const FullSymbol& a, const FullSymbol& b) {
  if (!a.boundary_.approx_equal(b.boundary_)) {
    fail(ErrorKind::DimensionMismatch, "full symbols with different boundary parts");
  }
  auto ramps = a.ramps_;
  ramps.insert(ramps.end(), b.ramps_.begin(), b.ramps_.end());
  auto decay = a.decay_;
  decay.insert(decay.end(), b.decay_.begin(), b.decay_.end());
  return FullSymbol(a.boundary_, std::move(ramps), std::move(decay));
}

FullSymbol operator-(const FullSymbol& a, const FullSymbol& b) {
  auto neg_ramps = b.ramps_;
  for (auto& r : neg_ramps) r.weight = -r.weight;
  auto neg_decay = b.decay_;
  for (auto& d : neg_decay) d.coefficient = -d.coefficient;
  return a + FullSymbol(b.boundary_, std::move(neg_ramps), std::move(neg_decay));
}

double estimate_lipschitz(const BoundarySymbol& a, int samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  double best = 0.0;
  const int n = a.dim();
  for (int s = 0; s < samples; ++s) {
    const auto v = random_unit_vector(n, rng);
    std::vector<cd> w;
    if (s % 2 == 0) {
      // Nearby pair probes the local slope.
      w = v;
      double n2 = 0.0;
      for (auto& x : w) {
        x += 1e-3 * cd(gauss(rng), gauss(rng));
        n2 += std::norm(x);
      }
      for (auto& x : w) x /= std::sqrt(n2);
    } else {
      w = random_unit_vector(n, rng);
    }
    const double d = distance(v, w);
    if (d < 1e-12) continue;
    best = std::max(best, (a.eval(v) - a.eval(w)).norm() / d);
  }
  return 1.5 * best;
}

LipschitzSplit lipschitz_split(const FullSymbol& a, double eps, double lipschitz_constant) {
  if (!(eps > 0.0)) fail(ErrorKind::InvalidEpsilon, "lipschitz_split requires eps > 0");
  if (lipschitz_constant < 0.0) fail(ErrorKind::DomainError, "Lipschitz constant must be >= 0");
  const BoundarySymbol boundary = a.boundary_limit();
  // The ramp itself contributes sup|a_∂|/R to the Lipschitz quotient, so the
  // radius also covers that term when it dominates 2C.
  double sup = 0.0;
  {
    std::mt19937_64 rng(3);
    for (int s = 0; s < 2000; ++s) {
      sup = std::max(sup, boundary.eval(random_unit_vector(boundary.dim(), rng)).norm());
    }
  }
  double radius = 1.1 * std::max(2.0 * lipschitz_constant, sup) / eps;
  if (radius == 0.0) radius = 1.0;
  FullSymbol g(boundary, radius);
  FullSymbol h = a - g;
  return {std::move(g), std::move(h), radius};
}

LipschitzSplit lipschitz_split(const FullSymbol& a, double eps) {
  if (!(eps > 0.0)) fail(ErrorKind::InvalidEpsilon, "lipschitz_split requires eps > 0");
  return lipschitz_split(a, eps, estimate_lipschitz(a.boundary_limit()));
}

double sampled_lipschitz_quotient(const FullSymbol& g, double max_radius, int pairs,
                                  std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const int n = g.boundary().dim();
  auto random_point = [&]() {
    auto v = random_unit_vector(n, rng);
    const double r = max_radius * std::pow(unif(rng), 1.0 / (2.0 * n));
    for (auto& x : v) x *= r;
    return v;
  };
  double best = 0.0;
  for (int s = 0; s < pairs; ++s) {
    const auto z = random_point();
    std::vector<cd> w;
    if (s % 2 == 0) {
      w = random_point();
    } else {
      const double step = std::pow(10.0, -3.0 + 4.0 * unif(rng));
      auto dir = random_unit_vector(n, rng);
      w = z;
      for (std::size_t i = 0; i < w.size(); ++i) w[i] += step * dir[i];
    }
    const double d = distance(z, w);
    if (d < 1e-12) continue;
    best = std::max(best, (g.eval(z) - g.eval(w)).norm() / d);
  }
  return best;
}

}  // namespace chargedef::symbols
