#include "chargedef/specfun.hpp"

#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <numbers>
#include <string>

#include "chargedef/error.hpp"

namespace chargedef::specfun {

std::uint64_t multi_factorial(const MultiIndex& m) {
  if (!m.nonnegative()) fail(ErrorKind::DomainError, "multi_factorial of negative multi-index");
  if (m.total() > kFactorialCap) {
    fail(ErrorKind::CapacityExceeded,
         "multi_factorial: |m| = " + std::to_string(m.total()) + " exceeds cap " +
             std::to_string(kFactorialCap));
  }
  std::uint64_t result = 1;
  for (int i = 0; i < m.dim(); ++i) {
    for (int v = 2; v <= m[i]; ++v) result *= static_cast<std::uint64_t>(v);
  }
  return result;
}

BigInt multi_factorial_exact(const MultiIndex& m) {
  if (!m.nonnegative()) fail(ErrorKind::DomainError, "multi_factorial of negative multi-index");
  BigInt result = 1;
  for (int i = 0; i < m.dim(); ++i) {
    for (int v = 2; v <= m[i]; ++v) result *= v;
  }
  return result;
}

double log_gamma(double x) {
  if (!(x > 0.0)) fail(ErrorKind::DomainError, "log_gamma requires x > 0");
  return std::lgamma(x);
}

double gamma_ratio_deviation(double x, double a) {
  if (!(x > std::abs(a) + 1.0)) {
    fail(ErrorKind::DomainError, "gamma_ratio_deviation requires x > |a| + 1");
  }
  // Integer a: the ratio is the rising product x(x+1)...(x+a-1), exact in floating point
  // for the small a used here.
  if (a >= 0.0 && a == std::floor(a) && a <= 16.0) {
    double ratio = 1.0;
    double power = 1.0;
    for (int j = 0; j < static_cast<int>(a); ++j) {
      ratio *= x + j;
      power *= x;
    }
    return ratio - power;
  }
  const double log_ratio = log_gamma(x + a) - log_gamma(x);
  return std::exp(log_ratio) - std::pow(x, a);
}

double laguerre(unsigned k, double x) {
  if (k == 0) return 1.0;
  double prev = 1.0;
  double cur = 1.0 - x;
  for (unsigned j = 1; j < k; ++j) {
    const double next = ((2.0 * j + 1.0 - x) * cur - j * prev) / (j + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

double PiMultiple::value() const {
  return static_cast<double>(coefficient) * std::pow(std::numbers::pi, pi_power);
}

PiMultiple sphere_monomial_integral(const MultiIndex& alpha, const MultiIndex& beta) {
  if (alpha.dim() != beta.dim()) {
    fail(ErrorKind::DimensionMismatch, "sphere_monomial_integral: exponent dimensions differ");
  }
  const int n = alpha.dim();
  if (alpha != beta) return {Rational(0), n};
  BigInt denom = 1;
  for (int v = 2; v <= n - 1 + alpha.total(); ++v) denom *= v;
  return {Rational(2 * multi_factorial_exact(alpha), denom), n};
}

long double sphere_moment(const MultiIndex& alpha) {
  const int n = alpha.dim();
  // alpha! / (n-1+|alpha|)! accumulated as a product of ratios to stay in range.
  long double ratio = 1.0L;
  int top = n - 1 + alpha.total();
  for (int i = 0; i < n; ++i) {
    for (int v = alpha[i]; v >= 2; --v) {
      ratio *= static_cast<long double>(v) / static_cast<long double>(top--);
    }
  }
  while (top >= 2) ratio /= static_cast<long double>(top--);
  return 2.0L * std::pow(std::numbers::pi_v<long double>, n) * ratio;
}

long double radial_gaussian_moment_ld(unsigned p) {
  const long double half = 0.5L * (static_cast<long double>(p) + 1.0L);
  return std::exp2(0.5L * (static_cast<long double>(p) - 1.0L)) * std::tgamma(half);
}

double radial_gaussian_moment(unsigned p) {
  return static_cast<double>(radial_gaussian_moment_ld(p));
}

long double radial_gaussian_tail(unsigned p, long double a) {
  if (a < 0.0L) fail(ErrorKind::DomainError, "radial_gaussian_tail requires a >= 0");
  const long double s = 0.5L * (static_cast<long double>(p) + 1.0L);
  if (a == 0.0L) return radial_gaussian_moment_ld(p);
  return std::exp2(0.5L * (static_cast<long double>(p) - 1.0L)) *
         boost::math::tgamma(s, 0.5L * a * a);
}

Rational radial_ball_moment(unsigned p) { return Rational(1, static_cast<long>(p) + 1); }

QuadratureRule gauss_legendre(int count, double lo, double hi) {
  if (count < 1) fail(ErrorKind::DomainError, "gauss_legendre needs at least one node");
  QuadratureRule rule;
  rule.nodes.resize(static_cast<std::size_t>(count));
  rule.weights.resize(static_cast<std::size_t>(count));
  const double mid = 0.5 * (hi + lo);
  const double half = 0.5 * (hi - lo);
  const int m = (count + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Newton iteration on P_count from the Chebyshev-like initial guess.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (count + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= count; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = count * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // Recompute derivative at the converged root.
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= count; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = count * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    const auto lo_idx = static_cast<std::size_t>(i);
    const auto hi_idx = static_cast<std::size_t>(count - 1 - i);
    rule.nodes[lo_idx] = mid - half * x;
    rule.nodes[hi_idx] = mid + half * x;
    rule.weights[lo_idx] = half * w;
    rule.weights[hi_idx] = half * w;
  }
  return rule;
}

double pairwise_sum(const std::vector<double>& values) {
  auto rec = [&](auto&& self, std::size_t begin, std::size_t end) -> double {
    if (end - begin <= 8) {
      double s = 0.0;
      for (std::size_t i = begin; i < end; ++i) s += values[i];
      return s;
    }
    const std::size_t mid = begin + (end - begin) / 2;
    return self(self, begin, mid) + self(self, mid, end);
  };
  return values.empty() ? 0.0 : rec(rec, 0, values.size());
}

}  // namespace chargedef::specfun
