#pragma once

// Reference computations used only by the tests. They share no code with the
// library: Gauss–Hermite rules come from the Golub–Welsch eigenproblem,
// sphere and ball integrals are brute-force tensor quadratures in polar
// charts, and Laguerre coefficients are exact rationals.

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <vector>

namespace oracle {

using cd = std::complex<double>;
using Rational = boost::multiprecision::cpp_rational;

struct Rule {
  std::vector<double> x;
  std::vector<double> w;
};

// Nodes/weights for ∫ f(t) e^{−t²} dt from the Jacobi matrix of the Hermite
// recurrence.
inline Rule gauss_hermite(int count) {
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(count, count);
  for (int i = 1; i < count; ++i) J(i, i - 1) = J(i - 1, i) = std::sqrt(i / 2.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  Rule r;
  for (int i = 0; i < count; ++i) {
    r.x.push_back(es.eigenvalues()(i));
    const double v = es.eigenvectors()(0, i);
    r.w.push_back(std::sqrt(std::numbers::pi) * v * v);
  }
  return r;
}

// Gauss–Legendre from the Legendre Jacobi matrix, mapped to [lo, hi].
inline Rule legendre(int count, double lo, double hi) {
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(count, count);
  for (int i = 1; i < count; ++i) J(i, i - 1) = J(i - 1, i) = i / std::sqrt(4.0 * i * i - 1.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  Rule r;
  const double half = (hi - lo) / 2.0;
  for (int i = 0; i < count; ++i) {
    r.x.push_back(lo + half * (es.eigenvalues()(i) + 1.0));
    const double v = es.eigenvectors()(0, i);
    r.w.push_back(2.0 * v * v * half);
  }
  return r;
}

// ∫_0^∞ r^p e^{−r²/2} dr. Even p: half of a Hermite integral (t = r/√2).
// Odd p: Legendre on [0, 40].
inline double gaussian_moment(int p) {
  if (p % 2 == 0) {
    const Rule r = gauss_hermite(40);
    double s = 0.0;
    for (std::size_t i = 0; i < r.x.size(); ++i) s += r.w[i] * std::pow(std::sqrt(2.0) * r.x[i], p);
    return 0.5 * std::sqrt(2.0) * s;
  }
  const Rule r = legendre(200, 0.0, 40.0);
  double s = 0.0;
  for (std::size_t i = 0; i < r.x.size(); ++i) s += r.w[i] * std::pow(r.x[i], p) * std::exp(-r.x[i] * r.x[i] / 2);
  return s;
}

// Unit vector on S^{2n−1} (n ≤ 2) from chart angles.
inline std::vector<cd> chart_point(int n, double theta, double phi1, double phi2) {
  if (n == 1) return {std::polar(1.0, phi1)};
  return {std::polar(std::cos(theta), phi1), std::polar(std::sin(theta), phi2)};
}

// ∫_{S^{2n−1}} f dS for n ∈ {1, 2}: trapezoid in each φ, Legendre in θ.
inline cd sphere_integral(int n, const std::function<cd(const std::vector<cd>&)>& f,
                          int phi_nodes = 48, int theta_nodes = 48) {
  const double h = 2.0 * std::numbers::pi / phi_nodes;
  cd s = 0.0;
  if (n == 1) {
    for (int a = 0; a < phi_nodes; ++a) s += f(chart_point(1, 0, a * h, 0)) * h;
    return s;
  }
  const Rule t = legendre(theta_nodes, 0.0, std::numbers::pi / 2);
  for (std::size_t i = 0; i < t.x.size(); ++i) {
    const double jac = std::cos(t.x[i]) * std::sin(t.x[i]) * t.w[i];
    for (int a = 0; a < phi_nodes; ++a) {
      for (int b = 0; b < phi_nodes; ++b) s += f(chart_point(2, t.x[i], a * h, b * h)) * jac * h * h;
    }
  }
  return s;
}

// ∫ over the ball of radius R (or ℂⁿ when the integrand decays) in polar
// form: ∫_0^R r^{2n−1} ∫_S f(r v) dS dr.
inline cd radial_integral(int n, double radius, const std::function<cd(const std::vector<cd>&)>& f,
                          int radial_nodes = 80, int phi_nodes = 48, int theta_nodes = 32) {
  const Rule r = legendre(radial_nodes, 0.0, radius);
  cd s = 0.0;
  for (std::size_t i = 0; i < r.x.size(); ++i) {
    const double rho = r.x[i];
    const cd shell = sphere_integral(
        n,
        [&](const std::vector<cd>& v) {
          std::vector<cd> z = v;
          for (auto& x : z) x *= rho;
          return f(z);
        },
        phi_nodes, theta_nodes);
    s += shell * std::pow(rho, 2 * n - 1) * r.w[i];
  }
  return s;
}

// ⟨μ_{m+e_i}, (z_i/|z|) μ_m⟩ on the unit ball with μ_m = c_m z^m normalized
// by quadrature rather than by a closed form.
// The integrands carry no net charge, so a few φ nodes are exact.
inline double ball_coordinate_element(const std::vector<int>& m, int i) {
  const int n = static_cast<int>(m.size());
  std::vector<int> up = m;
  up[static_cast<std::size_t>(i - 1)] += 1;
  auto mono = [](const std::vector<int>& e, const std::vector<cd>& z) {
    cd v = 1.0;
    for (std::size_t j = 0; j < e.size(); ++j) {
      for (int t = 0; t < e[j]; ++t) v *= z[j];
    }
    return v;
  };
  auto norm2 = [&](const std::vector<int>& e) {
    return radial_integral(n, 1.0, [&](const std::vector<cd>& z) { return cd(std::norm(mono(e, z))); }, 32, 8, 32)
        .real();
  };
  const cd raw = radial_integral(
      n, 1.0,
      [&](const std::vector<cd>& z) {
        double r2 = 0;
        for (const auto& x : z) r2 += std::norm(x);
        return std::conj(mono(up, z)) * z[static_cast<std::size_t>(i - 1)] / std::sqrt(r2) * mono(m, z);
      },
      32, 8, 32);
  return raw.real() / std::sqrt(norm2(up) * norm2(m));
}

// Coefficients of L_k(x) = Σ_j (−1)^j C(k, j) x^j / j!, exact.
inline std::vector<Rational> laguerre_coefficients(unsigned k) {
  std::vector<Rational> c;
  boost::multiprecision::cpp_int binom = 1;
  boost::multiprecision::cpp_int fact = 1;
  for (unsigned j = 0; j <= k; ++j) {
    if (j > 0) {
      binom = binom * (k - j + 1) / j;
      fact *= j;
    }
    Rational v(binom, fact);
    c.push_back(j % 2 ? Rational(-v) : v);
  }
  return c;
}

// Exact evaluation at the (binary-exact) argument, rounded once.
inline double laguerre(unsigned k, double x) {
  Rational s = 0;
  const Rational rx(x);
  const auto c = laguerre_coefficients(k);
  for (std::size_t j = c.size(); j-- > 0;) s = s * rx + c[j];
  return static_cast<double>(s);
}

}  // namespace oracle
