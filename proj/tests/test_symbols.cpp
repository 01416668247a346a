#include <cmath>
#include <random>

#include "chargedef/error.hpp"
#include "chargedef/symbols.hpp"
#include "doctest.h"

using namespace chargedef;
using namespace chargedef::symbols;

namespace {

std::vector<cd> random_unit(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  std::vector<cd> v(static_cast<std::size_t>(n));
  double s = 0;
  for (auto& x : v) {
    x = cd(g(rng), g(rng));
    s += std::norm(x);
  }
  for (auto& x : v) x /= std::sqrt(s);
  return v;
}

}  // namespace

TEST_CASE("su2 is unitary with determinant one") {
  const auto u = su2_symbol();
  CHECK(u.dim() == 2);
  CHECK(u.size() == 2);
  CHECK(u.degree() == 1);
  const auto id = BoundarySymbol::identity(2, 2);
  CHECK(symbol_product(u, symbol_adjoint(u)).approx_equal(id));
  CHECK(symbol_product(symbol_adjoint(u), u).approx_equal(id));
  CHECK(symbol_det(u).approx_equal(BoundarySymbol::constant(2, 1.0)));
}

TEST_CASE("evaluation on the sphere") {
  std::mt19937_64 rng(3);
  const auto u = su2_symbol();
  for (int t = 0; t < 20; ++t) {
    const auto v = random_unit(2, rng);
    const auto m = u.eval(v);
    CHECK((m * m.adjoint() - Eigen::Matrix2cd::Identity()).norm() < 1e-13);
    CHECK(std::abs(m(0, 0) - v[0]) < 1e-15);
    CHECK(std::abs(m(1, 0) + std::conj(v[1])) < 1e-15);
  }
  const std::vector<cd> off{cd(2.0, 0.0), cd(0.0, 0.0)};
  CHECK_THROWS_AS(u.eval(off), Error);
  const auto r = coordinate_symbol(2, 1).eval_ray(off);
  CHECK(std::abs(r(0, 0) - 1.0) < 1e-15);
}

TEST_CASE("sphere normal form") {
  // z2 z̄2 / |z|² = 1 − z1 z̄1/|z|² on S³
  const auto a = parse_symbol("z2*zbar2*|z|^-2", 2);
  const auto b = parse_symbol("1 - z1*zbar1*|z|^-2", 2);
  CHECK(a.approx_equal(b));
  CHECK(a.degree() == 2);
}

TEST_CASE("parser") {
  const auto a = parse_symbol("z1*|z|^-1", 1);
  CHECK(a.approx_equal(coordinate_symbol(1, 1)));
  const auto b = parse_symbol("2.5i * z1^2 * zbar2", 2);
  std::mt19937_64 rng(5);
  const auto v = random_unit(2, rng);
  CHECK(std::abs(b.eval(v)(0, 0) - cd(0, 2.5) * v[0] * v[0] * std::conj(v[1])) < 1e-14);
  const auto m = parse_symbol("[[z1, z2], [-zbar2, zbar1]]", 2);
  CHECK(m.approx_equal(su2_symbol()));
  CHECK(parse_symbol(su2_symbol().to_string(), 2).approx_equal(su2_symbol()));
  const auto c = parse_symbol("(1 + i) * (z1 - zbar2)", 2);
  CHECK(std::abs(c.eval(v)(0, 0) - cd(1, 1) * (v[0] - std::conj(v[1]))) < 1e-14);

  CHECK_THROWS_AS(parse_symbol("z1*|z|^-2", 2), Error);
  CHECK_THROWS_AS(parse_symbol("z3", 2), Error);
  CHECK_THROWS_AS(parse_symbol("z1 +", 2), Error);
  CHECK_THROWS_AS(parse_symbol("[[z1, z2], [z1]]", 2), Error);
  CHECK_THROWS_AS(parse_symbol("", 1), Error);
}

TEST_CASE("builtin names") {
  CHECK(builtin_symbol("coordinate:2", 2).approx_equal(coordinate_symbol(2, 2)));
  CHECK(builtin_symbol("zpow:3", 1).degree() == 3);
  CHECK(builtin_symbol("zpow:-2", 1).approx_equal(parse_symbol("zbar1^2", 1)));
  CHECK(builtin_symbol("constant", 2).is_constant());
  CHECK(builtin_symbol("constant:2", 1).approx_equal(BoundarySymbol::constant(1, 2.0)));
  CHECK_THROWS_AS(builtin_symbol("su2", 1), Error);
  CHECK_THROWS_AS(builtin_symbol("coordinate:x", 2), Error);
  CHECK_THROWS_AS(builtin_symbol("coordinate:3", 2), Error);
}

TEST_CASE("algebra") {
  const auto z = coordinate_symbol(1, 1);
  const auto zbar = symbol_adjoint(z);
  CHECK(symbol_product(z, zbar).approx_equal(BoundarySymbol::constant(1, 1.0)));
  CHECK(symbol_sum(z, symbol_scale(z, -1.0)).approx_equal(BoundarySymbol(1, 1)));

  Eigen::Matrix2cd g;
  g << 0, 1, 1, 0;
  const auto w = symbol_conjugate_by(su2_symbol(), g);
  std::mt19937_64 rng(9);
  const auto v = random_unit(2, rng);
  CHECK((w.eval(v) - g * su2_symbol().eval(v) * g.adjoint()).norm() < 1e-14);
  CHECK(symbol_det(w).approx_equal(BoundarySymbol::constant(2, 1.0)));
}

TEST_CASE("lipschitz estimate") {
  // z ↦ z on the unit circle has Lipschitz constant 1
  const double c = estimate_lipschitz(coordinate_symbol(1, 1));
  CHECK(c >= 1.0);
  CHECK(c <= 1.5 + 1e-9);
}

TEST_CASE("lipschitz split") {
  const FullSymbol a(su2_symbol(), 1.0);
  CHECK_THROWS_AS(lipschitz_split(a, 0.0), Error);
  CHECK_THROWS_AS(lipschitz_split(a, -1.0), Error);
  for (double eps : {0.5, 0.1, 0.02}) {
    const auto s = lipschitz_split(a, eps);
    CHECK((s.g + s.h).approx_equal(a));
    CHECK(s.h.ramp_weight_sum() == doctest::Approx(0.0));
    CHECK(s.g.boundary_limit().approx_equal(a.boundary_limit()));
    CHECK(sampled_lipschitz_quotient(s.g, 3.0 * s.radius, 4000) <= eps);
    // h vanishes outside 2R
    const std::vector<cd> far{cd(3.0 * s.radius, 0.0), cd(0.0, 0.0)};
    CHECK(s.h.eval(far).norm() < 1e-12);
  }
}

TEST_CASE("full symbol evaluation") {
  DecayTerm d;
  d.monomial = {MultiIndex{1}, MultiIndex{0}};
  d.coefficient = 2.0;
  d.rate = 0.5;
  const FullSymbol a(coordinate_symbol(1, 1), 1.0, {d});
  const std::vector<cd> z{cd(1.5, 0.0)};
  const double expect = ramp_value(1.0, 1.5) * 1.0 + 2.0 * 1.5 * std::exp(-0.5 * 2.25);
  CHECK(std::abs(a.eval(z)(0, 0) - expect) < 1e-14);
  CHECK_THROWS_AS(FullSymbol(coordinate_symbol(1, 1), 0.0), Error);
}
