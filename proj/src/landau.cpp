#include "chargedef/landau.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "chargedef/error.hpp"
#include "chargedef/specfun.hpp"

namespace chargedef::landau {

namespace {

void check_coordinate(int j, int n) {
  if (j < 1 || j > n) {
    fail(ErrorKind::IndexOutOfRange,
         "coordinate index " + std::to_string(j) + " outside [1, " + std::to_string(n) + "]");
  }
}

void check_same_dim(const PolyGaussian& a, const PolyGaussian& b) {
  if (a.dim != b.dim) fail(ErrorKind::DimensionMismatch, "PolyGaussians differ in dimension");
}

double gaussian(std::span<const cd> z) {
  double r2 = 0.0;
  for (const auto& x : z) r2 += std::norm(x);
  return std::exp(-0.25 * r2);
}

}  // namespace

PolyGaussian PolyGaussian::vacuum(int n) {
  PolyGaussian f{n, {}};
  add_term(f.poly, {MultiIndex(n), MultiIndex(n)}, 1.0);
  return f;
}

cd PolyGaussian::operator()(std::span<const cd> z) const {
  if (static_cast<int>(z.size()) != dim) fail(ErrorKind::DimensionMismatch, "point dimension");
  return evaluate(poly, z) * gaussian(z);
}

PolyGaussian annihilate(int j, const PolyGaussian& f) {
  check_coordinate(j, f.dim);
  const int i = j - 1;
  PolyGaussian out{f.dim, {}};
  for (const auto& [m, c] : f.poly) {
    if (m.zbar_exp[i] == 0) continue;
    Monomial t = m;
    t.zbar_exp[i] -= 1;
    add_term(out.poly, t, 2.0 * m.zbar_exp[i] * c);
  }
  return out;
}

PolyGaussian create(int j, const PolyGaussian& f) {
  check_coordinate(j, f.dim);
  const int i = j - 1;
  PolyGaussian out{f.dim, {}};
  for (const auto& [m, c] : f.poly) {
    Monomial up = m;
    up.zbar_exp[i] += 1;
    add_term(out.poly, up, c);
    if (m.z_exp[i] > 0) {
      Monomial down = m;
      down.z_exp[i] -= 1;
      add_term(out.poly, down, -2.0 * m.z_exp[i] * c);
    }
  }
  return out;
}

PolyGaussian hamiltonian_apply(const PolyGaussian& f) {
  PolyGaussian out = static_cast<double>(f.dim) * f;
  for (int j = 1; j <= f.dim; ++j) out = out + create(j, annihilate(j, f));
  return out;
}

PolyGaussian operator+(const PolyGaussian& a, const PolyGaussian& b) {
  check_same_dim(a, b);
  PolyGaussian out = a;
  for (const auto& [m, c] : b.poly) add_term(out.poly, m, c);
  return out;
}

PolyGaussian operator-(const PolyGaussian& a, const PolyGaussian& b) { return a + (-1.0) * b; }

PolyGaussian operator*(cd c, const PolyGaussian& f) {
  PolyGaussian out{f.dim, {}};
  for (const auto& [m, v] : f.poly) add_term(out.poly, m, c * v);
  return out;
}

bool approx_equal(const PolyGaussian& a, const PolyGaussian& b, double tol) {
  return a.dim == b.dim && chargedef::approx_equal(a.poly, b.poly, tol);
}

// ---------------------------------------------------------------------------

LevelSpec LevelSpec::particular(const MultiIndex& k) {
  if (k.dim() < 1 || !k.nonnegative()) fail(ErrorKind::DomainError, "invalid level multi-index");
  LevelSpec s;
  s.dim_ = k.dim();
  s.particular_ = true;
  s.k_ = k;
  s.ell_ = k.total();
  return s;
}

LevelSpec LevelSpec::full(int n, int ell) {
  if (n < 1 || n > kMaxDimension) fail(ErrorKind::DimensionMismatch, "bad dimension");
  if (ell < 0) fail(ErrorKind::DomainError, "level must be >= 0");
  LevelSpec s;
  s.dim_ = n;
  s.particular_ = false;
  s.k_ = MultiIndex(n);
  s.ell_ = ell;
  return s;
}

const MultiIndex& LevelSpec::k() const {
  if (!particular_) fail(ErrorKind::DomainError, "full level has no single multi-index");
  return k_;
}

std::vector<MultiIndex> LevelSpec::levels() const {
  if (particular_) return {k_};
  return multi_indices_of_degree(dim_, ell_);
}

std::string LevelSpec::to_string() const {
  if (particular_) return k_.to_string();
  return "full:" + std::to_string(ell_);
}

// ---------------------------------------------------------------------------

long double norm_squared(const MultiIndex& m, const MultiIndex& k) {
  const int n = m.dim();
  long double v = std::pow(std::numbers::pi_v<long double>, n) *
                  std::exp2(static_cast<long double>(m.total() + k.total() + n));
  for (int i = 0; i < n; ++i) {
    for (int t = 2; t <= m[i]; ++t) v *= t;
    for (int t = 2; t <= k[i]; ++t) v *= t;
  }
  return v;
}

PolyGaussian BasisVector::normalized() const {
  PolyGaussian f{m.dim(), {}};
  for (const auto& [mono, c] : raw) add_term(f.poly, mono, c * static_cast<double>(scale));
  return f;
}

PolyGaussian raw_particular_vector(const MultiIndex& m, const MultiIndex& k) {
  if (m.dim() != k.dim()) fail(ErrorKind::DimensionMismatch, "m and k differ in dimension");
  if (!m.nonnegative() || !k.nonnegative()) fail(ErrorKind::DomainError, "negative multi-index");
  PolyGaussian f{m.dim(), {}};
  add_term(f.poly, {m, MultiIndex(m.dim())}, 1.0);
  for (int j = 0; j < k.dim(); ++j) {
    for (int t = 0; t < k[j]; ++t) f = create(j + 1, f);
  }
  return f;
}

BasisVector basis_vector(const MultiIndex& m, const MultiIndex& k) {
  if (m.total() > kMaxBasisDegree || k.total() > kMaxBasisDegree) {
    fail(ErrorKind::CapacityExceeded,
         "basis degree " + std::to_string(m.total()) + " exceeds cap " +
             std::to_string(kMaxBasisDegree));
  }
  BasisVector v{m, k, raw_particular_vector(m, k).poly, 0.0L};
  v.scale = 1.0L / std::sqrt(norm_squared(m, k));
  return v;
}

std::vector<BasisVector> particular_basis(const LevelSpec& spec, int max_degree) {
  if (!spec.is_particular()) fail(ErrorKind::DomainError, "particular_basis needs a particular level");
  if (max_degree > kMaxBasisDegree) {
    fail(ErrorKind::CapacityExceeded, "max_degree " + std::to_string(max_degree) +
                                          " exceeds cap " + std::to_string(kMaxBasisDegree));
  }
  std::vector<BasisVector> out;
  for (const auto& m : graded_multi_indices(spec.dim(), max_degree)) {
    out.push_back(basis_vector(m, spec.k()));
  }
  return out;
}

// ---------------------------------------------------------------------------

long double radial_profile_moment(const RadialProfile& profile, int p) {
  if (p < 0) fail(ErrorKind::DomainError, "negative radial power");
  const auto up = static_cast<unsigned>(p);
  switch (profile.kind) {
    case RadialProfile::Kind::Homogeneous:
      return specfun::radial_gaussian_moment_ld(up);
    case RadialProfile::Kind::Decay: {
      const long double s = profile.parameter;
      return std::pow(1.0L + 2.0L * s, -0.5L * (p + 1)) * specfun::radial_gaussian_moment_ld(up);
    }
    case RadialProfile::Kind::Ramp: {
      // χ_R = 0 on [0,R], (r−R)/R on [R,2R], 1 beyond.
      const long double r = profile.parameter;
      auto g = [](unsigned q, long double a) { return specfun::radial_gaussian_tail(q, a); };
      return (g(up + 1, r) - g(up + 1, 2 * r)) / r - g(up, r) + 2.0L * g(up, 2 * r);
    }
  }
  return 0.0L;
}

cld matrix_element(const BasisVector& f, const Monomial& symbol, const RadialProfile& profile,
                   const BasisVector& g) {
  const int n = f.m.dim();
  if (g.m.dim() != n || symbol.dim() != n) {
    fail(ErrorKind::DimensionMismatch, "matrix_element: dimensions differ");
  }
  const bool homogeneous_power = profile.kind != RadialProfile::Kind::Decay;
  const int symbol_degree = homogeneous_power ? symbol.degree() : 0;
  cld total = 0.0L;
  for (const auto& [a, c] : f.raw) {
    for (const auto& [b, c2] : g.raw) {
      // conj(z^a.z z̄^a.zbar) · z^s.z z̄^s.zbar · z^b.z z̄^b.zbar
      const MultiIndex zp = a.zbar_exp + symbol.z_exp + b.z_exp;
      const MultiIndex zbp = a.z_exp + symbol.zbar_exp + b.zbar_exp;
      if (zp != zbp) continue;
      const int p = zp.total() + zbp.total() - symbol_degree + 2 * n - 1;
      const long double w = radial_profile_moment(profile, p) * specfun::sphere_moment(zp);
      total += cld(std::conj(c)) * cld(c2) * w;
    }
  }
  return total * f.scale * g.scale;
}

namespace {

cd inner_product_impl(const PolyGaussian& f, const Monomial& symbol, cd coefficient,
                      const PolyGaussian& g) {
  BasisVector bf{MultiIndex(f.dim), MultiIndex(f.dim), f.poly, 1.0L};
  BasisVector bg{MultiIndex(g.dim), MultiIndex(g.dim), g.poly, 1.0L};
  const cld v = matrix_element(bf, symbol, RadialProfile::homogeneous(), bg);
  return cd(static_cast<double>(v.real()), static_cast<double>(v.imag())) * coefficient;
}

}  // namespace

cd inner_product(const PolyGaussian& f, const PolyGaussian& g) {
  check_same_dim(f, g);
  return inner_product_impl(f, {MultiIndex(f.dim), MultiIndex(f.dim)}, 1.0, g);
}

cd inner_product(const PolyGaussian& f, const Polynomial& symbol, const PolyGaussian& g) {
  check_same_dim(f, g);
  cd total = 0.0;
  for (const auto& [m, c] : symbol) total += inner_product_impl(f, m, c, g);
  return total;
}

// ---------------------------------------------------------------------------

cd kernel_shape(const MultiIndex& k, std::span<const cd> z, std::span<const cd> w) {
  const int n = k.dim();
  if (static_cast<int>(z.size()) != n || static_cast<int>(w.size()) != n) {
    fail(ErrorKind::DimensionMismatch, "kernel point dimension");
  }
  cd cross = 0.0;
  double z2 = 0.0;
  double w2 = 0.0;
  double lag = 1.0;
  for (int j = 0; j < n; ++j) {
    cross += z[j] * std::conj(w[j]);
    z2 += std::norm(z[j]);
    w2 += std::norm(w[j]);
    lag *= specfun::laguerre(static_cast<unsigned>(k[j]), 0.5 * std::norm(z[j] - w[j]));
  }
  return std::exp(0.5 * cross - 0.25 * (z2 + w2)) * lag;
}

cd kernel_basis_sum(const MultiIndex& k, std::span<const cd> z, std::span<const cd> w,
                    int max_degree) {
  cd total = 0.0;
  for (const auto& v : particular_basis(LevelSpec::particular(k), max_degree)) {
    const PolyGaussian f = v.normalized();
    total += f(z) * std::conj(f(w));
  }
  return total;
}

KernelEvaluator::KernelEvaluator(const MultiIndex& k, int basis_degree) : k_(k) {
  const int n = k.dim();
  const auto basis = particular_basis(LevelSpec::particular(k), basis_degree);
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  auto point = [&]() {
    std::vector<cd> p(static_cast<std::size_t>(n));
    double r2 = 0.0;
    for (auto& x : p) {
      x = cd(coord(rng), coord(rng));
      r2 += std::norm(x);
    }
    // Radius at most 2.
    const double scale = std::sqrt(r2) > 2.0 ? 2.0 / std::sqrt(r2) : 1.0;
    for (auto& x : p) x *= scale;
    return p;
  };
  std::vector<std::pair<cd, cd>> samples;  // (shape, basis sum)
  for (int s = 0; s < 20; ++s) {
    const auto z = point();
    const auto w = point();
    cd sum = 0.0;
    for (const auto& v : basis) {
      const PolyGaussian f = v.normalized();
      sum += f(z) * std::conj(f(w));
    }
    samples.emplace_back(kernel_shape(k, z, w), sum);
  }
  double num = 0.0;
  double den = 0.0;
  for (const auto& [shape, sum] : samples) {
    num += (std::conj(shape) * sum).real();
    den += std::norm(shape);
  }
  constant_ = den > 0.0 ? num / den : 0.0;
  for (const auto& [shape, sum] : samples) {
    residual_ = std::max(residual_, std::abs(constant_ * shape - sum));
  }
}

cd KernelEvaluator::operator()(std::span<const cd> z, std::span<const cd> w) const {
  return constant_ * kernel_shape(k_, z, w);
}

}  // namespace chargedef::landau
