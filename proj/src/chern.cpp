#include "chargedef/chern.hpp"

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "chargedef/error.hpp"
#include "chargedef/parallel.hpp"
#include "chargedef/specfun.hpp"

namespace chargedef::chern {

namespace {

using symbols::BoundarySymbol;
using SmallMat = Eigen::Matrix<cd, Eigen::Dynamic, Eigen::Dynamic, 0, 4, 4>;

constexpr double kPi = std::numbers::pi;
constexpr int kMaxParams = 3;
constexpr int kMaxPower = 32;

// Chart point and its partial derivatives ∂z_j/∂x_c.
struct ChartPoint {
  std::array<cd, kMaxDimension> z{};
  std::array<std::array<cd, kMaxDimension>, kMaxParams> dz{};
  int params = 0;
};

ChartPoint chart(int n, const double* x) {
  ChartPoint p;
  if (n == 1) {
    p.params = 1;
    p.z[0] = std::polar(1.0, x[0]);
    p.dz[0][0] = cd(0.0, 1.0) * p.z[0];
    return p;
  }
  if (n == 2) {
    const double t = x[0];
    const cd e1 = std::polar(1.0, x[1]);
    const cd e2 = std::polar(1.0, x[2]);
    p.params = 3;
    p.z[0] = std::cos(t) * e1;
    p.z[1] = std::sin(t) * e2;
    p.dz[0][0] = -std::sin(t) * e1;
    p.dz[0][1] = std::cos(t) * e2;
    p.dz[1][0] = cd(0.0, 1.0) * p.z[0];
    p.dz[2][1] = cd(0.0, 1.0) * p.z[1];
    return p;
  }
  fail(ErrorKind::DimensionMismatch, "sphere charts exist for n = 1 and n = 2 only");
}

// Flattened symbol for fast evaluation of values and chart derivatives.
class CompiledSymbol {
 public:
  explicit CompiledSymbol(const BoundarySymbol& s) : n_(s.dim()), size_(s.size()) {
    if (size_ > 4) fail(ErrorKind::DimensionMismatch, "matrix symbols larger than 4x4");
    for (int p = 0; p < size_; ++p) {
      for (int q = 0; q < size_; ++q) {
        for (const auto& [m, c] : s.entry(p, q)) {
          Term t{p, q, c, {}, {}};
          for (int j = 0; j < n_; ++j) {
            t.a[static_cast<std::size_t>(j)] = m.z_exp[j];
            t.b[static_cast<std::size_t>(j)] = m.zbar_exp[j];
            max_power_ = std::max({max_power_, m.z_exp[j], m.zbar_exp[j]});
          }
          terms_.push_back(t);
          if (max_power_ > kMaxPower) {
            fail(ErrorKind::CapacityExceeded, "symbol exponent too large for the sphere evaluator");
          }
        }
      }
    }
  }

  int size() const { return size_; }

  // value and (optionally) derivatives along each chart parameter
  void eval(const ChartPoint& pt, SmallMat& value, std::array<SmallMat, kMaxParams>* ders) const {
    const int P = max_power_ + 1;
    std::array<std::array<cd, kMaxPower + 1>, kMaxDimension> pz;
    std::array<std::array<cd, kMaxPower + 1>, kMaxDimension> pzb;
    for (int j = 0; j < n_; ++j) {
      auto& a = pz[static_cast<std::size_t>(j)];
      auto& b = pzb[static_cast<std::size_t>(j)];
      a[0] = 1.0;
      b[0] = 1.0;
      for (int e = 1; e < P; ++e) {
        a[static_cast<std::size_t>(e)] = a[static_cast<std::size_t>(e - 1)] * pt.z[static_cast<std::size_t>(j)];
        b[static_cast<std::size_t>(e)] = b[static_cast<std::size_t>(e - 1)] * std::conj(pt.z[static_cast<std::size_t>(j)]);
      }
    }
    value = SmallMat::Zero(size_, size_);
    if (ders) {
      for (int c = 0; c < pt.params; ++c) (*ders)[static_cast<std::size_t>(c)] = SmallMat::Zero(size_, size_);
    }
    for (const auto& t : terms_) {
      std::array<cd, kMaxDimension> f{};
      cd prod = t.c;
      for (int j = 0; j < n_; ++j) {
        const auto uj = static_cast<std::size_t>(j);
        f[uj] = pz[uj][static_cast<std::size_t>(t.a[uj])] * pzb[uj][static_cast<std::size_t>(t.b[uj])];
        prod *= f[uj];
      }
      value(t.row, t.col) += prod;
      if (!ders) continue;
      for (int j = 0; j < n_; ++j) {
        const auto uj = static_cast<std::size_t>(j);
        const int a = t.a[uj];
        const int b = t.b[uj];
        if (a == 0 && b == 0) continue;
        cd others = t.c;
        for (int i = 0; i < n_; ++i) {
          if (i != j) others *= f[static_cast<std::size_t>(i)];
        }
        const cd dfa = a > 0 ? static_cast<double>(a) * pz[uj][static_cast<std::size_t>(a - 1)] * pzb[uj][static_cast<std::size_t>(b)] : cd(0.0);
        const cd dfb = b > 0 ? static_cast<double>(b) * pz[uj][static_cast<std::size_t>(a)] * pzb[uj][static_cast<std::size_t>(b - 1)] : cd(0.0);
        for (int c = 0; c < pt.params; ++c) {
          const cd dzc = pt.dz[static_cast<std::size_t>(c)][uj];
          (*ders)[static_cast<std::size_t>(c)](t.row, t.col) += others * (dfa * dzc + dfb * std::conj(dzc));
        }
      }
    }
  }

 private:
  struct Term {
    int row;
    int col;
    cd c;
    std::array<int, kMaxDimension> a;
    std::array<int, kMaxDimension> b;
  };
  int n_;
  int size_;
  int max_power_ = 0;
  std::vector<Term> terms_;
};

// u and ∂_c u at chart parameters x, analytic or by Richardson-extrapolated
// central differences.
void eval_with_derivatives(const CompiledSymbol& u, int n, const double* x, Derivative mode,
                           SmallMat& value, std::array<SmallMat, kMaxParams>& ders) {
  const ChartPoint pt = chart(n, x);
  if (mode == Derivative::Analytic) {
    u.eval(pt, value, &ders);
    return;
  }
  u.eval(pt, value, nullptr);
  constexpr double h = 1e-5;
  auto central = [&](int c, double step) {
    std::array<double, kMaxParams> xp{};
    std::array<double, kMaxParams> xm{};
    for (int i = 0; i < pt.params; ++i) xp[static_cast<std::size_t>(i)] = xm[static_cast<std::size_t>(i)] = x[i];
    xp[static_cast<std::size_t>(c)] += step;
    xm[static_cast<std::size_t>(c)] -= step;
    SmallMat up;
    SmallMat um;
    u.eval(chart(n, xp.data()), up, nullptr);
    u.eval(chart(n, xm.data()), um, nullptr);
    return SmallMat((up - um) / (2.0 * step));
  };
  for (int c = 0; c < pt.params; ++c) {
    const SmallMat d1 = central(c, h);
    const SmallMat d2 = central(c, 0.5 * h);
    ders[static_cast<std::size_t>(c)] = (4.0 * d2 - d1) / 3.0;
  }
}

void check_unitary(const SmallMat& u) {
  const SmallMat defect = u * u.adjoint() - SmallMat::Identity(u.rows(), u.cols());
  if (defect.cwiseAbs().maxCoeff() > 1e-8) {
    fail(ErrorKind::NotUnitarySymbol, "symbol is not unitary at a quadrature node");
  }
}

cd form_coefficient(const CompiledSymbol& u, int n, const double* x, Derivative mode) {
  SmallMat value;
  std::array<SmallMat, kMaxParams> ders;
  eval_with_derivatives(u, n, x, mode, value, ders);
  check_unitary(value);
  const SmallMat inv = value.adjoint();
  if (n == 1) return (inv * ders[0]).trace();
  const SmallMat a0 = inv * ders[0];
  const SmallMat a1 = inv * ders[1];
  const SmallMat a2 = inv * ders[2];
  // Even permutations are cyclic, so the alternating sum is 3(tr A0A1A2 − tr A0A2A1).
  return 3.0 * ((a0 * a1 * a2).trace() - (a0 * a2 * a1).trace());
}

cd pairwise_sum(const std::vector<cd>& v) {
  std::vector<double> re(v.size());
  std::vector<double> im(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    re[i] = v[i].real();
    im[i] = v[i].imag();
  }
  return {specfun::pairwise_sum(re), specfun::pairwise_sum(im)};
}

cd chern_quadrature(const CompiledSymbol& u, int n, int theta_nodes, int phi_nodes, Derivative mode) {
  const double h = 2.0 * kPi / phi_nodes;
  if (n == 1) {
    std::vector<cd> vals(static_cast<std::size_t>(phi_nodes));
    for (int j = 0; j < phi_nodes; ++j) {
      const double x[1] = {h * j};
      vals[static_cast<std::size_t>(j)] = form_coefficient(u, 1, x, mode) * h;
    }
    return pairwise_sum(vals);
  }
  const auto rule = specfun::gauss_legendre(theta_nodes, 0.0, kPi / 2.0);
  std::vector<cd> rows(static_cast<std::size_t>(theta_nodes));
  parallel_for(rows.size(), [&](std::size_t i) {
    std::vector<cd> vals(static_cast<std::size_t>(phi_nodes) * static_cast<std::size_t>(phi_nodes));
    std::size_t idx = 0;
    for (int a = 0; a < phi_nodes; ++a) {
      for (int b = 0; b < phi_nodes; ++b) {
        const double x[3] = {rule.nodes[i], h * a, h * b};
        vals[idx++] = form_coefficient(u, 2, x, mode);
      }
    }
    rows[i] = pairwise_sum(vals) * (rule.weights[i] * h * h);
  });
  return pairwise_sum(rows);
}

}  // namespace

double sphere_volume(int n) {
  if (n < 1) fail(ErrorKind::DomainError, "sphere dimension must be >= 1");
  double f = 1.0;
  for (int v = 2; v <= n - 1; ++v) f *= v;
  return 2.0 * std::pow(kPi, n) / f;
}

SphereQuadrature::SphereQuadrature(int n, int theta_nodes, int phi_nodes)
    : dim_(n), theta_nodes_(theta_nodes), phi_nodes_(phi_nodes) {
  if (n != 1 && n != 2) fail(ErrorKind::DimensionMismatch, "sphere quadrature for n = 1, 2 only");
  if (theta_nodes < 1 || phi_nodes < 1) fail(ErrorKind::DomainError, "node counts must be positive");
  const double h = 2.0 * kPi / phi_nodes;
  if (n == 1) {
    for (int j = 0; j < phi_nodes; ++j) nodes_.push_back({{h * j}, h, h});
    return;
  }
  const auto rule = specfun::gauss_legendre(theta_nodes, 0.0, kPi / 2.0);
  for (int i = 0; i < theta_nodes; ++i) {
    const double t = rule.nodes[static_cast<std::size_t>(i)];
    const double w = rule.weights[static_cast<std::size_t>(i)] * h * h;
    for (int a = 0; a < phi_nodes; ++a) {
      for (int b = 0; b < phi_nodes; ++b) {
        nodes_.push_back({{t, h * a, h * b}, w, w * std::cos(t) * std::sin(t)});
      }
    }
  }
}

double SphereQuadrature::total_volume() const {
  std::vector<double> w;
  w.reserve(nodes_.size());
  for (const auto& node : nodes_) w.push_back(node.volume_weight);
  return specfun::pairwise_sum(w);
}

std::string SphereQuadrature::descriptor() const {
  std::ostringstream os;
  if (dim_ == 1) {
    os << "z = e^{i phi}; trapezoid phi x " << phi_nodes_;
  } else {
    os << "z1 = cos(theta) e^{i phi1}, z2 = sin(theta) e^{i phi2}; Gauss-Legendre theta x "
       << theta_nodes_ << ", trapezoid phi1 x " << phi_nodes_ << ", phi2 x " << phi_nodes_;
  }
  return os.str();
}

std::vector<cd> SphereQuadrature::point(int n, const std::vector<double>& params) {
  const ChartPoint p = chart(n, params.data());
  return std::vector<cd>(p.z.begin(), p.z.begin() + n);
}

WindingResult winding_number(const BoundarySymbol& a, int nodes) {
  const BoundarySymbol s = a.size() == 1 ? a : symbols::symbol_det(a);
  const CompiledSymbol cs(s);
  const int n = s.dim();
  const double h = 2.0 * kPi / nodes;
  std::vector<cd> vals(static_cast<std::size_t>(nodes));
  for (int j = 0; j < nodes; ++j) {
    ChartPoint pt;
    pt.params = 1;
    pt.z[0] = std::polar(1.0, h * j);
    pt.dz[0][0] = cd(0.0, 1.0) * pt.z[0];
    for (int i = 1; i < n; ++i) pt.z[static_cast<std::size_t>(i)] = 0.0;
    SmallMat value;
    std::array<SmallMat, kMaxParams> ders;
    cs.eval(pt, value, &ders);
    if (std::abs(value(0, 0)) < 1e-8) {
      fail(ErrorKind::NotInvertibleOnCircle, "symbol vanishes on the circle");
    }
    vals[static_cast<std::size_t>(j)] = ders[0](0, 0) / value(0, 0) * h;
  }
  const cd total = pairwise_sum(vals) / (2.0 * kPi * cd(0.0, 1.0));
  WindingResult out;
  out.raw = total.real();
  out.winding = static_cast<int>(std::lround(out.raw));
  out.distance = std::abs(total - cd(out.winding, 0.0));
  if (out.distance > 1e-6) {
    fail(ErrorKind::NotConverged, "winding number quadrature is not near an integer");
  }
  return out;
}

cd chern_prefactor(int n) {
  double num = 1.0;
  for (int v = 2; v <= n - 1; ++v) num *= v;
  double den = 1.0;
  for (int v = 2; v <= 2 * n - 1; ++v) den *= v;
  return -num / (den * std::pow(cd(0.0, 2.0 * kPi), n));
}

ChernResult odd_chern_integral(const BoundarySymbol& u, int theta_nodes, int phi_nodes,
                               Derivative derivative, bool throw_on_unconverged) {
  const int n = u.dim();
  if (n != 1 && n != 2) fail(ErrorKind::DimensionMismatch, "odd Chern integral for n = 1, 2 only");
  const CompiledSymbol cs(u);
  const double orientation = n == 2 ? kOrientationSign : 1.0;
  const cd scale = chern_prefactor(n) * orientation;
  const cd base = scale * chern_quadrature(cs, n, theta_nodes, phi_nodes, derivative);
  const cd doubled = scale * chern_quadrature(cs, n, 2 * theta_nodes, 2 * phi_nodes, derivative);

  ChernResult out;
  out.value = base;
  out.nearest = static_cast<int>(std::lround(base.real()));
  out.distance = std::abs(base - cd(out.nearest, 0.0));
  out.quadrature_nodes = n == 1 ? phi_nodes : static_cast<long>(theta_nodes) * phi_nodes * phi_nodes;
  out.doubling_change = std::abs(doubled - base);
  out.converged = out.doubling_change <= 1e-6;
  if (!out.converged && throw_on_unconverged) {
    fail(ErrorKind::QuadratureNotConverged,
         "odd Chern integral moved by " + std::to_string(out.doubling_change) + " under node doubling");
  }
  return out;
}

cd chern_form_coefficient(const BoundarySymbol& u, double theta, double phi1, double phi2,
                          Derivative derivative) {
  if (u.dim() != 2) fail(ErrorKind::DimensionMismatch, "3-form coefficient needs n = 2");
  const double x[3] = {theta, phi1, phi2};
  return form_coefficient(CompiledSymbol(u), 2, x, derivative);
}

cd su2_closed_form_coefficient(double theta, double phi1, double phi2) {
  const double x[3] = {theta, phi1, phi2};
  const ChartPoint p = chart(2, x);
  // A wedge of three 1-forms is the determinant of their coefficient rows.
  using Row = Eigen::Matrix<cd, 1, 3>;
  auto d = [&](int j) {
    Row r;
    for (int c = 0; c < 3; ++c) r(c) = p.dz[static_cast<std::size_t>(c)][static_cast<std::size_t>(j)];
    return r;
  };
  auto wedge = [](const Row& a, const Row& b, const Row& c) {
    Eigen::Matrix3cd m;
    m.row(0) = a;
    m.row(1) = b;
    m.row(2) = c;
    return m.determinant();
  };
  const cd z1 = p.z[0];
  const cd z2 = p.z[1];
  const Row dz1 = d(0);
  const Row dz2 = d(1);
  const Row dzb1 = dz1.conjugate();
  const Row dzb2 = dz2.conjugate();
  return 3.0 * wedge(z1 * dzb1 - std::conj(z1) * dz1, dz2, dzb2) +
         3.0 * wedge(z2 * dzb2 - std::conj(z2) * dz2, dz1, dzb1);
}

FormComparison chern_form_trace(const BoundarySymbol& u, int theta_nodes, int phi_nodes, double tol) {
  if (u.dim() != 2) fail(ErrorKind::DimensionMismatch, "chern_form_trace needs n = 2");
  const CompiledSymbol cs(u);
  const SphereQuadrature q(2, theta_nodes, phi_nodes);
  FormComparison out;
  for (const auto& node : q.nodes()) {
    const cd a = form_coefficient(cs, 2, node.params.data(), Derivative::Analytic);
    const cd b = su2_closed_form_coefficient(node.params[0], node.params[1], node.params[2]);
    out.max_abs_diff = std::max(out.max_abs_diff, std::abs(a - b));
    ++out.nodes;
  }
  if (out.max_abs_diff > tol) {
    fail(ErrorKind::MismatchExceedsTolerance,
         "trace form and closed form differ by " + std::to_string(out.max_abs_diff));
  }
  return out;
}

long multiplicity(int ell, int n) {
  if (ell < 0 || n < 1) fail(ErrorKind::DomainError, "multiplicity needs ell >= 0, n >= 1");
  // C(ℓ+n−1, n−1), built incrementally so every step is an exact integer.
  long r = 1;
  for (int j = 1; j <= n - 1; ++j) r = r * (ell + j) / j;
  return r;
}

int landau_prediction(int ell, const BoundarySymbol& u) {
  const auto chern = odd_chern_integral(u);
  if (chern.distance > 1e-6) {
    fail(ErrorKind::NotConverged, "odd Chern integral is not near an integer");
  }
  return static_cast<int>(multiplicity(ell, u.dim())) * chern.nearest;
}

}  // namespace chargedef::chern
