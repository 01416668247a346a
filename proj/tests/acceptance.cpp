// Acceptance suite. Without arguments every criterion runs and prints one
// PASS/FAIL line; `--criterion k` runs one and sets the exit status.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "chargedef/bergman.hpp"
#include "chargedef/chern.hpp"
#include "chargedef/error.hpp"
#include "chargedef/index.hpp"
#include "chargedef/landau.hpp"
#include "chargedef/specfun.hpp"
#include "chargedef/toeplitz.hpp"
#include "oracles.hpp"

using namespace chargedef;
using landau::LevelSpec;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) pass = false;
    detail << "    " << (ok ? "ok   " : "FAIL ") << what << '\n';
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}


void criterion1(Outcome& o) {
  const auto t0 = std::chrono::steady_clock::now();
  for (int k = 0; k <= 3; ++k) {
    const auto r = index::graded_index(LevelSpec::particular(MultiIndex{k}), symbols::coordinate_symbol(1, 1), 30);
    o.require(r.index == -1 && r.stabilized,
              "k=" + std::to_string(k) + " index " + std::to_string(r.index) + (r.stabilized ? " stabilized" : " unstable"));
  }
  const double dt = seconds_since(t0);
  o.require(dt < 5.0, "runtime " + num(dt) + " s < 5 s");
}

void criterion2(Outcome& o) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto u = symbols::su2_symbol();
  for (const auto& k : {MultiIndex{0, 0}, MultiIndex{1, 0}, MultiIndex{0, 1}}) {
    const auto r = index::graded_index(LevelSpec::particular(k), u, 10);
    o.require(r.index == -1 && r.kernel_dim == 0 && r.cokernel_dim == 1 && r.stabilized,
              "k=" + k.to_string() + " ker " + std::to_string(r.kernel_dim) + " coker " +
                  std::to_string(r.cokernel_dim));
  }
  std::vector<toeplitz::BasisLabel> labels;
  const auto v = index::cokernel_vectors(LevelSpec::particular(MultiIndex{0, 0}), u, 10, &labels);
  double overlap = 0.0;
  if (v.cols() == 1) {
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (labels[i].m == MultiIndex{0, 0} && labels[i].component == 0) overlap = std::abs(v(static_cast<Eigen::Index>(i), 0));
    }
  }
  o.require(v.cols() == 1 && overlap > 0.999, "cokernel overlap with vacuum (x) e1 = " + num(overlap));
  const double dt = seconds_since(t0);
  o.require(dt < 60.0, "runtime " + num(dt) + " s < 60 s");
}

void criterion3(Outcome& o) {
  const auto c = chern::odd_chern_integral(symbols::su2_symbol());
  o.require(c.converged && std::abs(c.value - cd(-1.0)) <= 1e-6,
            "odd Chern integral " + num(c.value.real()) + (c.value.imag() >= 0 ? "+" : "") + num(c.value.imag()) +
                "i, doubling change " + num(c.doubling_change));
  const auto r = index::graded_index(LevelSpec::particular(MultiIndex{0, 0}), symbols::su2_symbol(), 10);
  o.require(c.nearest == r.index, "matches graded index " + std::to_string(r.index));
}

void criterion4(Outcome& o) {
  const auto u = symbols::su2_symbol();
  const long expect = -chern::multiplicity(1, 2);
  const auto r = index::graded_index(LevelSpec::full(2, 1), u, 10);
  o.require(r.index == expect && r.stabilized, "graded index on the full level " + std::to_string(r.index));
  const auto adj = symbols::symbol_adjoint(u);
  const auto t = toeplitz::direct_sum_level(2, 1, u, 10).truncate(10, 11);
  const auto ta = toeplitz::direct_sum_level(2, 1, adj, 10).truncate(10, 11);
  const int ds = index::nullity(t.data) - index::nullity(ta.data);
  o.require(ds == expect, "direct_sum_level kernel minus cokernel " + std::to_string(ds));
  const int pred = chern::landau_prediction(1, u);
  o.require(pred == expect, "landau_prediction " + std::to_string(pred));
}

void criterion5(Outcome& o) {
  double worst_landau = 0.0;
  for (int n = 1; n <= 2; ++n) {
    for (const auto& m : graded_multi_indices(n, 20)) {
      for (int i = 1; i <= n; ++i) {
        const auto z = symbols::coordinate_symbol(n, i);
        const auto f = landau::basis_vector(m + MultiIndex::unit(n, i), MultiIndex(n)).normalized();
        const auto g = landau::basis_vector(m, MultiIndex(n)).normalized();
        const cd ip = landau::inner_product(f, z.entry(0, 0), g);
        worst_landau = std::max(worst_landau, std::abs(ip - bergman::landau_coordinate_element(n, i, m)));
      }
    }
  }
  o.require(worst_landau <= 1e-12, "Landau weights vs exact assembly, max deviation " + num(worst_landau));

  double worst_ball = 0.0;
  for (int n = 1; n <= 2; ++n) {
    for (const auto& m : graded_multi_indices(n, n == 1 ? 10 : 5)) {
      for (int i = 1; i <= n; ++i) {
        const double q = oracle::ball_coordinate_element(m.to_vector(), i);
        worst_ball = std::max(worst_ball, std::abs(bergman::bergman_coordinate_element(n, i, m) - q));
      }
    }
  }
  o.require(worst_ball <= 1e-8, "Bergman elements vs ball quadrature, max deviation " + num(worst_ball));

  double worst_stated = 0.0;
  double worst_reciprocal = 0.0;
  for (int n = 1; n <= 2; ++n) {
    for (const auto& m : graded_multi_indices(n, 20)) {
      const double ratio = bergman::bergman_closed_form(n, 1, m) / bergman::bergman_asymptotic_weight(n, 1, m);
      const double am = m.total();
      const double stated = (2 * am + 2 * n + 1) / (2 * (n + am + 1));
      worst_stated = std::max(worst_stated, std::abs(ratio - stated));
      worst_reciprocal = std::max(worst_reciprocal, std::abs(ratio - 1.0 / stated));
    }
  }
  o.require(worst_stated <= 1e-10,
            "exact/asymptotic ratio equals (2|m|+2n+1)/(2(n+|m|+1)), max deviation " + num(worst_stated));
  o.detail << "    note  the reciprocal 2(n+|m|+1)/(2|m|+2n+1) holds with max deviation " << num(worst_reciprocal)
           << '\n';
}

void criterion6(Outcome& o) {
  const auto rows = bergman::compare_weights(1, 1, 200);
  double worst = 0.0;
  std::vector<double> diff;
  for (const auto& w : rows) {
    if (w.m.total() < 1) continue;
    diff.push_back(w.diff);
    worst = std::max(worst, w.diff * w.m.total());
  }
  o.require(worst <= 1.0, "sup |m|*|diff| over 1 <= m <= 200 is " + num(worst));
  bool decreasing = true;
  for (std::size_t i = 1; i < diff.size(); ++i) decreasing = decreasing && diff[i] < diff[i - 1];
  // a 1/|m| rate halves the difference from m = 100 to m = 200
  o.require(decreasing && diff.back() / diff[99] < 0.6,
            "|diff| decreases to 0: m=1 " + num(diff.front()) + ", m=100 " + num(diff[99]) + ", m=200 " +
                num(diff.back()));
  o.detail << "    note  200*|diff(200)| = " << num(200 * diff.back()) << " (limit 1/8)\n";
}

void criterion7(Outcome& o) {
  for (double a : {-0.5, 0.5, 1.5}) {
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const double x = 10.0 * std::pow(100.0, i / 99.0);
      worst = std::max(worst, std::abs(specfun::gamma_ratio_deviation(x, a)) * std::pow(x, 1.0 - a));
    }
    o.require(worst <= 1.0, "a=" + num(a) + " max scaled deviation " + num(worst));
  }
}

void criterion8(Outcome& o) {
  std::vector<double> v;
  for (int D : {5, 10, 20}) {
    v.push_back(toeplitz::commutator_tail_norm(MultiIndex{0}, symbols::coordinate_symbol(1, 1), D, 4));
  }
  o.require(v[0] > v[1] && v[1] > v[2], "D=5 " + num(v[0]) + ", D=10 " + num(v[1]) + ", D=20 " + num(v[2]));
  o.require(v[2] < 0.2, "D=20 below 0.2");
}

void criterion9(Outcome& o) {
  bool ccr = true;
  int checked = 0;
  for (int n = 1; n <= 2; ++n) {
    for (int deg = 0; deg <= 6; ++deg) {
      for (int a = 0; a <= deg; ++a) {
        for (const auto& za : multi_indices_of_degree(n, a)) {
          for (const auto& zb : multi_indices_of_degree(n, deg - a)) {
            landau::PolyGaussian f{n, {}};
            add_term(f.poly, {za, zb}, 1.0);
            for (int i = 1; i <= n; ++i) {
              for (int j = 1; j <= n; ++j) {
                const auto c = landau::annihilate(i, landau::create(j, f)) - landau::create(j, landau::annihilate(i, f));
                ccr = ccr && approx_equal(c, cd(i == j ? 2.0 : 0.0) * f);
                const auto qq = landau::annihilate(i, landau::annihilate(j, f)) - landau::annihilate(j, landau::annihilate(i, f));
                ccr = ccr && qq.poly.empty();
                ++checked;
              }
            }
          }
        }
      }
    }
  }
  o.require(ccr, "[q_i, q_j*] = 2 delta_ij and [q_i, q_j] = 0 on " + std::to_string(checked) + " monomial cases");
  bool spectral = true;
  for (int n = 1; n <= 2; ++n) {
    for (const auto& k : graded_multi_indices(n, 3)) {
      for (const auto& m : graded_multi_indices(n, 2)) {
        const auto xi = landau::raw_particular_vector(m, k);
        spectral = spectral && approx_equal(landau::hamiltonian_apply(xi), cd(2.0 * k.total() + n) * xi);
      }
    }
  }
  o.require(spectral, "H xi_{m,k} = (2|k| + n) xi_{m,k} exactly for |k| <= 3, n <= 2");
}

void criterion10(Outcome& o) {
  for (int k = 0; k <= 3; ++k) {
    const auto spec = LevelSpec::particular(MultiIndex{k});
    const auto a = symbols::coordinate_symbol(1, 1);
    const auto g = index::graded_index(spec, a, 30);
    try {
      const auto f = index::fedosov_index(spec, a, 2, 30);
      o.require(f.nearest == g.index && f.distance <= 0.1, "n=1 k=" + std::to_string(k) + " trace " + num(f.value));
    } catch (const Error& e) {
      o.require(false, std::string("n=1 k=") + std::to_string(k) + " " + e.what());
    }
  }
  for (const auto& k : {MultiIndex{0, 0}, MultiIndex{1, 0}, MultiIndex{0, 1}}) {
    const auto spec = LevelSpec::particular(k);
    const auto u = symbols::su2_symbol();
    const auto g = index::graded_index(spec, u, 10);
    try {
      const auto f = index::fedosov_index(spec, u, 3, 10);
      o.require(f.nearest == g.index && f.distance <= 0.1, "n=2 k=" + k.to_string() + " trace " + num(f.value));
    } catch (const Error& e) {
      o.require(false, "n=2 k=" + k.to_string() + " " + e.what());
    }
  }
}

struct Criterion {
  const char* title;
  void (*run)(Outcome&);
};

const Criterion kCriteria[] = {
    {"dimension-1 index of z/|z| on levels 0..3", criterion1},
    {"dimension-2 index of the su2 symbol", criterion2},
    {"odd Chern integral agrees with the index", criterion3},
    {"full level 1 multiplicity", criterion4},
    {"Landau and Bergman weight formulas", criterion5},
    {"Landau/Bergman weight difference decay", criterion6},
    {"gamma ratio estimate", criterion7},
    {"commutator tail decay", criterion8},
    {"CCR and Landau spectrum", criterion9},
    {"trace formula vs graded index", criterion10},
};

bool run_one(int k) {
  const auto& c = kCriteria[k - 1];
  Outcome o;
  try {
    c.run(o);
  } catch (const std::exception& e) {
    o.require(false, std::string("exception: ") + e.what());
  }
  std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << k << ": " << c.title << '\n' << o.detail.str();
  std::cout.flush();
  return o.pass;
}

}  // namespace

int main(int argc, char** argv) {
  constexpr int kCount = static_cast<int>(std::size(kCriteria));
  if (argc == 3 && std::string(argv[1]) == "--criterion") {
    const int k = std::atoi(argv[2]);
    if (k < 1 || k > kCount) {
      std::cerr << "criterion must be in 1.." << kCount << '\n';
      return 2;
    }
    return run_one(k) ? 0 : 1;
  }
  if (argc != 1) {
    std::cerr << "usage: acceptance [--criterion k]\n";
    return 2;
  }
  int passed = 0;
  for (int k = 1; k <= kCount; ++k) passed += run_one(k) ? 1 : 0;
  std::cout << passed << "/" << kCount << " criteria passed\n";
  return passed == kCount ? 0 : 1;
}
