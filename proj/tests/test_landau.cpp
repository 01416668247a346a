#include <cmath>
#include <numbers>
#include <random>

#include "chargedef/error.hpp"
#include "chargedef/landau.hpp"
#include "chargedef/symbols.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace chargedef;
using namespace chargedef::landau;

namespace {

// Arbitrary test functions: every monomial of degree <= deg with distinct coefficients.
PolyGaussian sample_function(int n, int deg) {
  PolyGaussian f{n, {}};
  int t = 1;
  for (int a = 0; a <= deg; ++a) {
    for (int b = 0; a + b <= deg; ++b) {
      for (const auto& za : multi_indices_of_degree(n, a)) {
        for (const auto& zb : multi_indices_of_degree(n, b)) {
          add_term(f.poly, {za, zb}, cd(t % 5 - 2, t % 3));
          ++t;
        }
      }
    }
  }
  return f;
}

cd quadrature_inner(const PolyGaussian& f, const PolyGaussian& g) {
  return oracle::radial_integral(f.dim, 12.0, [&](const std::vector<cd>& z) { return std::conj(f(z)) * g(z); },
                                 80, 40, 24);
}

}  // namespace

TEST_CASE("canonical commutation relations") {
  for (int n = 1; n <= 2; ++n) {
    for (int deg = 0; deg <= 6; deg += 2) {
      const auto f = sample_function(n, deg);
      for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= n; ++j) {
          const auto ccr = annihilate(i, create(j, f)) - create(j, annihilate(i, f));
          const auto expect = (i == j ? cd(2.0) : cd(0.0)) * f;
          CHECK(approx_equal(ccr, expect));
          CHECK(approx_equal(annihilate(i, annihilate(j, f)), annihilate(j, annihilate(i, f))));
          CHECK(approx_equal(create(i, create(j, f)), create(j, create(i, f))));
        }
      }
    }
  }
}

TEST_CASE("vacuum is annihilated") {
  for (int n = 1; n <= 3; ++n) {
    const auto e = PolyGaussian::vacuum(n);
    for (int j = 1; j <= n; ++j) CHECK(annihilate(j, e).poly.empty());
  }
}

TEST_CASE("hamiltonian eigenvalues 2|k| + n") {
  for (int n = 1; n <= 2; ++n) {
    for (int kd = 0; kd <= 3; ++kd) {
      for (const auto& k : multi_indices_of_degree(n, kd)) {
        for (const auto& m : graded_multi_indices(n, 3)) {
          const auto xi = raw_particular_vector(m, k);
          CHECK(approx_equal(hamiltonian_apply(xi), cd(2.0 * kd + n) * xi));
        }
      }
    }
  }
}

TEST_CASE("norms of the cyclic vectors") {
  for (int n = 1; n <= 2; ++n) {
    for (const auto& k : graded_multi_indices(n, 2)) {
      for (const auto& m : graded_multi_indices(n, 3)) {
        const auto xi = raw_particular_vector(m, k);
        const double exact = static_cast<double>(norm_squared(m, k));
        CHECK(inner_product(xi, xi).real() == doctest::Approx(exact).epsilon(1e-13));
      }
    }
  }
  // quadrature oracle on a few small cases
  for (const auto& [m, k] : {std::pair{MultiIndex{0}, MultiIndex{0}}, std::pair{MultiIndex{2}, MultiIndex{1}},
                             std::pair{MultiIndex{1}, MultiIndex{3}}}) {
    const auto xi = raw_particular_vector(m, k);
    CHECK(quadrature_inner(xi, xi).real() == doctest::Approx(static_cast<double>(norm_squared(m, k))).epsilon(1e-10));
  }
  const MultiIndex m{1, 0};
  const MultiIndex k{0, 1};
  const auto xi = raw_particular_vector(m, k);
  CHECK(quadrature_inner(xi, xi).real() == doctest::Approx(static_cast<double>(norm_squared(m, k))).epsilon(1e-10));
}

TEST_CASE("basis is orthonormal") {
  const auto spec = LevelSpec::particular(MultiIndex{1, 0});
  const auto basis = particular_basis(spec, 4);
  CHECK(basis.size() == 15);
  for (std::size_t a = 0; a < basis.size(); ++a) {
    for (std::size_t b = 0; b < basis.size(); ++b) {
      const cd ip = inner_product(basis[a].normalized(), basis[b].normalized());
      CHECK(std::abs(ip - (a == b ? 1.0 : 0.0)) < 1e-13);
    }
  }
  // different levels are orthogonal
  const auto x = basis_vector(MultiIndex{2, 0}, MultiIndex{1, 0}).normalized();
  const auto y = basis_vector(MultiIndex{1, 0}, MultiIndex{0, 0}).normalized();
  CHECK(std::abs(inner_product(x, y)) < 1e-14);
  CHECK_THROWS_AS(basis_vector(MultiIndex{kMaxBasisDegree + 1}, MultiIndex{0}), Error);
  CHECK_THROWS_AS(particular_basis(LevelSpec::full(2, 1), 3), Error);
}

TEST_CASE("level specs") {
  const auto full = LevelSpec::full(2, 2);
  CHECK(!full.is_particular());
  CHECK(full.levels().size() == 3);
  CHECK(full.levels().front() == MultiIndex{0, 2});
  CHECK(LevelSpec::particular(MultiIndex{1, 2}).levels().size() == 1);
}

TEST_CASE("matrix elements against quadrature") {
  const auto z = symbols::coordinate_symbol(1, 1);
  const auto& sym = z.entry(0, 0);
  for (const auto& [m, k] : {std::pair{MultiIndex{0}, MultiIndex{0}}, std::pair{MultiIndex{2}, MultiIndex{1}}}) {
    const auto f = basis_vector(m + MultiIndex{1}, k);
    const auto g = basis_vector(m, k);
    const cd exact = inner_product(f.normalized(), sym, g.normalized());
    const cd lib = [&] {
      cld s = 0;
      for (const auto& [mono, c] : sym) s += cld(c) * matrix_element(f, mono, RadialProfile::homogeneous(), g);
      return cd(static_cast<double>(s.real()), static_cast<double>(s.imag()));
    }();
    const cd quad = oracle::radial_integral(
        1, 12.0,
        [&](const std::vector<cd>& x) {
          return std::conj(f.normalized()(x)) * (x[0] / std::abs(x[0])) * g.normalized()(x);
        },
        120, 40);
    CHECK(std::abs(exact - quad) < 1e-9);
    CHECK(std::abs(lib - exact) < 1e-14);
  }
  // cross-level element for n = 2: ⟨ξ̂_{m',k'}, z̄1/|z| ξ̂_{m,k}⟩
  const auto zb = symbols::symbol_adjoint(symbols::coordinate_symbol(2, 1));
  const auto f = basis_vector(MultiIndex{0, 1}, MultiIndex{1, 0});
  const auto g = basis_vector(MultiIndex{0, 1}, MultiIndex{0, 0});
  const cd exact = inner_product(f.normalized(), zb.entry(0, 0), g.normalized());
  const cd quad = oracle::radial_integral(
      2, 11.0,
      [&](const std::vector<cd>& x) {
        const double r = std::sqrt(std::norm(x[0]) + std::norm(x[1]));
        return std::conj(f.normalized()(x)) * std::conj(x[0]) / r * g.normalized()(x);
      },
      60, 24, 16);
  CHECK(std::abs(exact) > 1e-3);
  CHECK(std::abs(exact - quad) < 1e-8);
}

TEST_CASE("radial profiles") {
  // decay profile with rate s: ∫ r^p e^{−r²/2} e^{−s r²} dr
  const long double v = radial_profile_moment(RadialProfile::decay(0.5), 3);
  CHECK(static_cast<double>(v) == doctest::Approx(0.5).epsilon(1e-14));
  // ramp profile: ∫ r^p e^{−r²/2} χ_R(r) dr by quadrature
  const double R = 0.7;
  for (int p : {1, 4}) {
    double s = 0.0;
    // the ramp has kinks at R and 2R, so integrate the smooth pieces separately
    for (const auto& [lo, hi] : {std::pair{R, 2 * R}, std::pair{2 * R, 30.0}}) {
      const auto rule = oracle::legendre(100, lo, hi);
      for (std::size_t i = 0; i < rule.x.size(); ++i) {
        s += rule.w[i] * std::pow(rule.x[i], p) * std::exp(-rule.x[i] * rule.x[i] / 2) * symbols::ramp_value(R, rule.x[i]);
      }
    }
    CHECK(static_cast<double>(radial_profile_moment(RadialProfile::ramp(R), p)) == doctest::Approx(s).epsilon(1e-12));
  }
}

TEST_CASE("reproducing kernel") {
  for (unsigned kk = 0; kk <= 2; ++kk) {
    const KernelEvaluator K(MultiIndex{static_cast<int>(kk)});
    CHECK(K.constant() == doctest::Approx(1.0 / (2 * std::numbers::pi)).epsilon(1e-10));
    CHECK(K.fit_residual() < 1e-10);
    const std::vector<cd> z{cd(0.3, -0.4)};
    const std::vector<cd> w{cd(-0.2, 0.5)};
    const cd sum = kernel_basis_sum(MultiIndex{static_cast<int>(kk)}, z, w, 60);
    CHECK(std::abs(K(z, w) - sum) < 1e-12);
    // Hermitian symmetry
    CHECK(std::abs(K(z, w) - std::conj(K(w, z))) < 1e-14);
  }
  // reproducing property for a level-1 basis vector
  const KernelEvaluator K(MultiIndex{1});
  const auto xi = basis_vector(MultiIndex{2}, MultiIndex{1}).normalized();
  const std::vector<cd> z{cd(0.4, 0.1)};
  const cd rep = oracle::radial_integral(1, 13.0, [&](const std::vector<cd>& w) { return K(z, w) * xi(w); }, 120, 64);
  CHECK(std::abs(rep - xi(z)) < 1e-9);
  // n = 2 constant is (2π)^{-2}
  const KernelEvaluator K2(MultiIndex{1, 0}, 30);
  CHECK(K2.constant() == doctest::Approx(std::pow(2 * std::numbers::pi, -2)).epsilon(1e-8));
}

TEST_CASE("vanishing weight of (z/|z|)^2 on level one") {
  // ⟨ξ̂_{2,1}, z²/|z|² ξ̂_{0,1}⟩ = 0 exactly; quadrature agrees
  const auto f = basis_vector(MultiIndex{2}, MultiIndex{1}).normalized();
  const auto g = basis_vector(MultiIndex{0}, MultiIndex{1}).normalized();
  const auto sym = symbols::zpow_symbol(1, 2).entry(0, 0);
  CHECK(std::abs(inner_product(f, sym, g)) < 1e-15);
  const cd quad = oracle::radial_integral(
      1, 12.0, [&](const std::vector<cd>& x) { return std::conj(f(x)) * x[0] * x[0] / std::norm(x[0]) * g(x); }, 120, 40);
  CHECK(std::abs(quad) < 1e-10);
  const auto h = basis_vector(MultiIndex{3}, MultiIndex{1}).normalized();
  const auto e = basis_vector(MultiIndex{1}, MultiIndex{1}).normalized();
  CHECK(std::abs(inner_product(h, sym, e)) == doctest::Approx(1 / std::sqrt(6.0)));
}
