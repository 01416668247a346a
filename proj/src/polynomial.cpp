#include "chargedef/polynomial.hpp"

#include <algorithm>
#include <cmath>

#include "chargedef/error.hpp"

namespace chargedef {

namespace {

cd ipow(cd base, int e) {
  cd r = 1.0;
  while (e > 0) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

}  // namespace

void add_term(Polynomial& p, const Monomial& m, cd c) {
  if (c == cd(0.0)) return;
  auto [it, inserted] = p.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == cd(0.0)) p.erase(it);
  }
}

Polynomial multiply(const Polynomial& a, const Polynomial& b) {
  Polynomial out;
  for (const auto& [ma, ca] : a) {
    for (const auto& [mb, cb] : b) add_term(out, ma * mb, ca * cb);
  }
  return out;
}

Polynomial conjugate(const Polynomial& p) {
  Polynomial out;
  for (const auto& [m, c] : p) add_term(out, m.conjugate(), std::conj(c));
  return out;
}

cd evaluate(const Polynomial& p, std::span<const cd> z) {
  cd sum = 0.0;
  for (const auto& [m, c] : p) {
    if (m.dim() != static_cast<int>(z.size())) {
      fail(ErrorKind::DimensionMismatch, "polynomial evaluated at point of wrong dimension");
    }
    cd term = c;
    for (int i = 0; i < m.dim(); ++i) {
      const auto zi = z[static_cast<std::size_t>(i)];
      if (m.z_exp[i]) term *= ipow(zi, m.z_exp[i]);
      if (m.zbar_exp[i]) term *= ipow(std::conj(zi), m.zbar_exp[i]);
    }
    sum += term;
  }
  return sum;
}

int max_degree(const Polynomial& p) {
  int d = 0;
  for (const auto& [m, c] : p) d = std::max(d, m.degree());
  return d;
}

void prune(Polynomial& p, double tol) {
  std::erase_if(p, [tol](const auto& kv) { return std::abs(kv.second) <= tol; });
}

bool approx_equal(const Polynomial& a, const Polynomial& b, double tol) {
  for (const auto& [m, c] : a) {
    auto it = b.find(m);
    const cd other = it == b.end() ? cd(0.0) : it->second;
    if (std::abs(c - other) > tol) return false;
  }
  for (const auto& [m, c] : b) {
    if (!a.contains(m) && std::abs(c) > tol) return false;
  }
  return true;
}

}  // namespace chargedef
