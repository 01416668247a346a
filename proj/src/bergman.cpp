#include "chargedef/bergman.hpp"

#include <cmath>
#include <numbers>

#include "chargedef/error.hpp"

namespace chargedef::bergman {

namespace {

void check_coordinate(int n, int i, const MultiIndex& m) {
  if (m.dim() != n) fail(ErrorKind::DimensionMismatch, "multi-index dimension differs from n");
  if (i < 1 || i > n) {
    fail(ErrorKind::IndexOutOfRange,
         "coordinate index " + std::to_string(i) + " outside [1, " + std::to_string(n) + "]");
  }
  if (!m.nonnegative()) fail(ErrorKind::DomainError, "negative multi-index");
}

specfun::BigInt factorial(int v) {
  specfun::BigInt r = 1;
  for (int t = 2; t <= v; ++t) r *= t;
  return r;
}

}  // namespace

specfun::Rational BallMonomial::squared_normalization() const {
  return specfun::Rational(factorial(m.dim() + m.total()), specfun::multi_factorial_exact(m));
}

double BallMonomial::normalization() const {
  return std::sqrt(static_cast<double>(squared_normalization()) /
                   std::pow(std::numbers::pi, m.dim()));
}

cd BallMonomial::operator()(std::span<const cd> z) const {
  if (static_cast<int>(z.size()) != m.dim()) fail(ErrorKind::DimensionMismatch, "point dimension");
  Polynomial p;
  add_term(p, {m, MultiIndex(m.dim())}, normalization());
  return evaluate(p, z);
}

specfun::PiMultiple ball_monomial_integral(const MultiIndex& alpha, const MultiIndex& beta,
                                           int abs_power) {
  auto sphere = specfun::sphere_monomial_integral(alpha, beta);
  if (sphere.coefficient == 0) return sphere;
  const int p = alpha.total() + beta.total() - abs_power + 2 * alpha.dim() - 1;
  if (p < 0) fail(ErrorKind::DomainError, "ball integral diverges at the origin");
  sphere.coefficient *= specfun::radial_ball_moment(static_cast<unsigned>(p));
  return sphere;
}

double ball_matrix_element(const BallMonomial& a, const Monomial& symbol, const BallMonomial& b) {
  const int n = a.m.dim();
  if (b.m.dim() != n || symbol.dim() != n) fail(ErrorKind::DimensionMismatch, "dimensions differ");
  // conj(z^a) z^α z̄^β z^b = z^{α+b} z̄^{β+a}
  const auto integral =
      ball_monomial_integral(symbol.z_exp + b.m, symbol.zbar_exp + a.m, symbol.degree());
  if (integral.coefficient == 0) return 0.0;
  // π^{−n} from the normalizations cancels the π^n of the sphere integral.
  const specfun::Rational norms = a.squared_normalization() * b.squared_normalization();
  return std::sqrt(static_cast<double>(norms)) * static_cast<double>(integral.coefficient);
}

double ball_inner_product(const BallMonomial& a, const BallMonomial& b) {
  const int n = a.m.dim();
  return ball_matrix_element(a, {MultiIndex(n), MultiIndex(n)}, b);
}

double bergman_coordinate_element(int n, int i, const MultiIndex& m) {
  check_coordinate(n, i, m);
  const MultiIndex e = MultiIndex::unit(n, i);
  return ball_matrix_element({m + e}, {e, MultiIndex(n)}, {m});
}

double bergman_closed_form(int n, int i, const MultiIndex& m) {
  check_coordinate(n, i, m);
  const double mi = m[i - 1];
  const double s = n + m.total();
  return 2.0 * std::sqrt(mi + 1.0) * std::sqrt(s + 1.0) / (2.0 * s + 1.0);
}

double bergman_asymptotic_weight(int n, int i, const MultiIndex& m) {
  check_coordinate(n, i, m);
  return std::sqrt(m[i - 1] + 1.0) / std::sqrt(n + m.total() + 1.0);
}

double landau_coordinate_element(int n, int i, const MultiIndex& m) {
  check_coordinate(n, i, m);
  const double s = n + m.total();
  return std::exp(specfun::log_gamma(s + 0.5) - specfun::log_gamma(s + 1.0)) *
         std::sqrt(m[i - 1] + 1.0);
}

Shift shift_structure(Space space, int n, int i, const MultiIndex& m) {
  check_coordinate(n, i, m);
  const double w = space == Space::Landau ? landau_coordinate_element(n, i, m)
                                          : bergman_coordinate_element(n, i, m);
  return {m + MultiIndex::unit(n, i), w};
}

std::vector<WeightComparison> compare_weights(int n, int i, int degree_cap) {
  std::vector<WeightComparison> out;
  for (const auto& m : graded_multi_indices(n, degree_cap)) {
    WeightComparison w;
    w.m = m;
    w.lambda_eta = landau_coordinate_element(n, i, m);
    w.lambda_mu_exact = bergman_closed_form(n, i, m);
    w.lambda_mu_asymptotic = bergman_asymptotic_weight(n, i, m);
    w.diff = std::abs(w.lambda_eta - w.lambda_mu_exact);
    out.push_back(w);
  }
  return out;
}

}  // namespace chargedef::bergman
