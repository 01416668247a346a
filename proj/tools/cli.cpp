#include "cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "chargedef/bergman.hpp"
#include "chargedef/chern.hpp"
#include "chargedef/error.hpp"
#include "chargedef/index.hpp"
#include "chargedef/toeplitz.hpp"

#ifndef CHARGEDEF_VERSION
#define CHARGEDEF_VERSION "0.0.0"
#endif

namespace chargedef::cli {

using nlohmann::json;

namespace {

struct Outcome {
  std::string body;
  int code = kOk;
};

json level_json(const ExperimentConfig& c) {
  if (c.full_level >= 0) return {{"full", c.full_level}};
  return c.level.empty() ? json(std::vector<int>(static_cast<std::size_t>(c.n), 0)) : json(c.level);
}

landau::LevelSpec level_spec(const ExperimentConfig& c) {
  if (c.full_level >= 0) return landau::LevelSpec::full(c.n, c.full_level);
  if (c.level.empty()) return landau::LevelSpec::particular(MultiIndex(c.n));
  if (static_cast<int>(c.level.size()) != c.n) {
    fail(ErrorKind::DimensionMismatch, "--level has " + std::to_string(c.level.size()) +
                                           " entries but n = " + std::to_string(c.n));
  }
  return landau::LevelSpec::particular(MultiIndex::from_vector(c.level));
}

symbols::BoundarySymbol resolve_symbol(const ExperimentConfig& c) {
  return symbols::builtin_symbol(c.symbol, c.n);
}

void require_positive(const std::string& name, double v) {
  if (!(v > 0)) fail(ErrorKind::DomainError, name + " must be positive");
}

void validate(const ExperimentConfig& c) {
  if (c.n < 1 || c.n > kMaxDimension) {
    fail(ErrorKind::DimensionMismatch, "--n must lie in [1, " + std::to_string(kMaxDimension) + "]");
  }
  require_positive("--D", c.D);
  require_positive("--K", c.K);
  require_positive("--theta-nodes", c.theta_nodes);
  require_positive("--phi-nodes", c.phi_nodes);
  require_positive("--samples", c.samples);
  require_positive("--rank-tol", c.rank_tol);
  require_positive("--degree-cap", c.degree_cap);
  if (c.power < 0) fail(ErrorKind::DomainError, "--power must be positive");
  for (int d : c.d_values) require_positive("--D-values", d);
  for (int k : c.level) {
    if (k < 0) fail(ErrorKind::DomainError, "--level entries must be >= 0");
  }
  if (c.format != "json" && c.format != "csv") fail(ErrorKind::ParseError, "--format must be json or csv");
}

json envelope(const ExperimentConfig& c) {
  return {{"config", c.to_json()}, {"version", version()}};
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

// "# key: value" comment lines carrying the config at the top of CSV reports.
std::string csv_preamble(const ExperimentConfig& c) {
  return "# chargedef " + version() + "\n# config: " + c.to_json().dump() + "\n";
}

json index_report_json(const index::IndexReport& r) {
  json history = json::array();
  for (const auto& h : r.history) history.push_back({{"D", h.D}, {"ker", h.kernel_dim}, {"coker", h.cokernel_dim}});
  return {{"kernel_dim", r.kernel_dim}, {"cokernel_dim", r.cokernel_dim}, {"index", r.index},
          {"stabilized", r.stabilized}, {"rank_tolerance", r.rank_tolerance}, {"history", history}};
}

Outcome run_index(const ExperimentConfig& c) {
  const auto spec = level_spec(c);
  const auto a = resolve_symbol(c);
  const auto report = index::graded_index(spec, a, c.D, c.rank_tol);
  json j = envelope(c);
  j["report"] = index_report_json(report);
  return {dump(j), report.stabilized ? kOk : kNotStabilized};
}

json chern_json(const ExperimentConfig& c, const chern::ChernResult& r) {
  json j = envelope(c);
  j["n"] = c.n;
  j["symbol"] = c.symbol;
  j["value_re"] = r.value.real();
  j["value_im"] = r.value.imag();
  j["nearest_integer"] = r.nearest;
  j["quadrature_nodes"] = r.quadrature_nodes;
  j["converged"] = r.converged;
  return j;
}

Outcome run_chern(const ExperimentConfig& c) {
  const auto u = resolve_symbol(c);
  const auto r = chern::odd_chern_integral(u, c.theta_nodes, c.phi_nodes, chern::Derivative::Analytic,
                                           false);
  return {dump(chern_json(c, r)), r.converged ? kOk : kFailed};
}

Outcome run_compare_bergman(const ExperimentConfig& c) {
  std::ostringstream os;
  os << csv_preamble(c);
  os << "|m|,m,lambda_eta,lambda_mu_exact,lambda_mu_paper,diff,diff_times_absm\n";
  for (const auto& w : bergman::compare_weights(c.n, c.coordinate, c.degree_cap)) {
    const int abs_m = w.m.total();
    os << abs_m << ",\"" << w.m.to_string() << "\"," << fmt(w.lambda_eta) << ','
       << fmt(w.lambda_mu_exact) << ',' << fmt(w.lambda_mu_asymptotic) << ',' << fmt(w.diff) << ','
       << fmt(w.diff * abs_m) << '\n';
  }
  return {os.str(), kOk};
}

Outcome run_commutator_decay(const ExperimentConfig& c) {
  const auto spec = level_spec(c);
  if (!spec.is_particular()) fail(ErrorKind::DomainError, "commutator-decay needs a particular level");
  const auto a = resolve_symbol(c);
  std::ostringstream os;
  os << csv_preamble(c);
  os << "D,K,window_min,window_max,largest_singular_value\n";
  for (int D : c.d_values) {
    os << D << ',' << c.K << ',' << D << ',' << 2 * D << ','
       << fmt(toeplitz::commutator_tail_norm(spec.k(), a, D, c.K)) << '\n';
  }
  return {os.str(), kOk};
}

Outcome run_verify(const ExperimentConfig& c) {
  const auto spec = level_spec(c);
  const auto a = resolve_symbol(c);
  const auto report = index::graded_index(spec, a, c.D, c.rank_tol);
  const auto ch = chern::odd_chern_integral(a, c.theta_nodes, c.phi_nodes);
  const long mult = spec.is_particular() ? 1 : chern::multiplicity(spec.ell(), c.n);
  const long topological = mult * ch.nearest;
  const bool agree = report.stabilized && ch.converged && topological == report.index;
  json j = envelope(c);
  j["analytic"] = index_report_json(report);
  j["topological"] = {{"odd_chern_re", ch.value.real()},
                      {"odd_chern_im", ch.value.imag()},
                      {"multiplicity", mult},
                      {"prediction", topological},
                      {"converged", ch.converged}};
  j["agree"] = agree;
  int code = agree ? kOk : kFailed;
  if (!report.stabilized) code = kNotStabilized;
  return {dump(j), code};
}

Outcome run_spectrum(const ExperimentConfig& c) {
  const auto g = toeplitz::assemble_toeplitz(level_spec(c), resolve_symbol(c), c.D);
  const auto s = toeplitz::singular_values(g.data);
  std::ostringstream os;
  os << csv_preamble(c);
  os << "index,sigma\n";
  for (Eigen::Index i = 0; i < s.size(); ++i) os << i << ',' << fmt(s(i)) << '\n';
  return {os.str(), kOk};
}

json label_json(const toeplitz::BasisLabel& l) {
  return {{"m", l.m.to_vector()}, {"k", l.level.to_vector()}, {"p", l.component}};
}

Outcome run_matrix(const ExperimentConfig& c) {
  const auto g = toeplitz::assemble_toeplitz(level_spec(c), resolve_symbol(c), c.D);
  if (c.format == "csv") {
    std::ostringstream os;
    g.write_csv(os);
    return {os.str(), kOk};
  }
  json j = envelope(c);
  json rows = json::array();
  json cols = json::array();
  for (const auto& l : g.rows) rows.push_back(label_json(l));
  for (const auto& l : g.cols) cols.push_back(label_json(l));
  j["rows"] = rows;
  j["cols"] = cols;
  j["row_window"] = {0, g.row_window};
  j["col_window"] = {0, g.col_window};
  j["symbol_degree"] = g.symbol_degree;
  j["symbol"] = g.description;
  return {dump(j), kOk};
}

Outcome run_fedosov(const ExperimentConfig& c) {
  const auto spec = level_spec(c);
  const int p = c.power > 0 ? c.power : c.n + 1;
  const auto r = index::fedosov_index(spec, resolve_symbol(c), p, c.D);
  json j = envelope(c);
  j["value"] = r.value;
  j["nearest_integer"] = r.nearest;
  j["distance"] = r.distance;
  j["power"] = r.power;
  j["window"] = r.window;
  return {dump(j), kOk};
}

std::string complex_vector(const std::vector<cd>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ';';
    s += fmt(v[i].real()) + (v[i].imag() < 0 ? "" : "+") + fmt(v[i].imag()) + "i";
  }
  return s;
}

Outcome run_kernel(const ExperimentConfig& c) {
  const auto spec = level_spec(c);
  if (!spec.is_particular()) fail(ErrorKind::DomainError, "kernel needs a particular level");
  const landau::KernelEvaluator kernel(spec.k());
  std::mt19937_64 rng(97);
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  auto point = [&]() {
    std::vector<cd> p(static_cast<std::size_t>(c.n));
    for (auto& x : p) x = cd(coord(rng), coord(rng));
    return p;
  };
  std::ostringstream os;
  os << csv_preamble(c);
  os << "# fitted constant: " << fmt(kernel.constant()) << "\n";
  os << "z,w,re,im\n";
  for (int s = 0; s < c.samples; ++s) {
    const auto z = point();
    const auto w = point();
    const cd v = kernel(z, w);
    os << complex_vector(z) << ',' << complex_vector(w) << ',' << fmt(v.real()) << ',' << fmt(v.imag())
       << '\n';
  }
  return {os.str(), kOk};
}

void write_atomically(const std::string& path, const std::string& body) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) fail(ErrorKind::DomainError, "cannot write " + tmp.string());
    f << body;
    f.flush();
    if (!f) fail(ErrorKind::DomainError, "write failed for " + tmp.string());
  }
  fs::rename(tmp, target);
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotFredholm:
      return kNotFredholm;
    case ErrorKind::NotStabilized:
      return kNotStabilized;
    case ErrorKind::ParseError:
    case ErrorKind::DimensionMismatch:
    case ErrorKind::IndexOutOfRange:
    case ErrorKind::DomainError:
    case ErrorKind::InvalidEpsilon:
    case ErrorKind::CapacityExceeded:
      return kBadConfig;
    default:
      return kFailed;
  }
}

void add_common(CLI::App* sub, ExperimentConfig& c) {
  sub->add_option("--n", c.n, "complex dimension");
  sub->add_option("--level", c.level, "particular level multi-index, e.g. 0,0")->delimiter(',');
  sub->add_option("--full-level", c.full_level, "full Landau level l");
  sub->add_option("--symbol", c.symbol, "builtin name (coordinate:i, su2, zpow:d, constant) or literal");
  sub->add_option("--D", c.D, "degree cap");
  sub->add_option("--rank-tol", c.rank_tol, "relative rank tolerance");
  sub->add_option("--theta-nodes", c.theta_nodes, "Gauss-Legendre nodes in theta");
  sub->add_option("--phi-nodes", c.phi_nodes, "trapezoid nodes per phi");
  sub->add_option("--output", c.output, "output path (stdout when omitted)");
  sub->add_option("--format", c.format, "json or csv");
}

}  // namespace

json ExperimentConfig::to_json() const {
  return {{"subcommand", subcommand},
          {"n", n},
          {"level", level_json(*this)},
          {"symbol", symbol},
          {"D", D},
          {"K", K},
          {"D_values", d_values},
          {"coordinate", coordinate},
          {"degree_cap", degree_cap},
          {"power", power},
          {"theta_nodes", theta_nodes},
          {"phi_nodes", phi_nodes},
          {"samples", samples},
          {"rank_tol", rank_tol},
          {"format", format}};
}

std::string version() { return CHARGEDEF_VERSION; }

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  ExperimentConfig c;
  CLI::App app{"chargedef: Toeplitz index workbench for Landau levels and the Bergman space"};
  app.set_version_flag("--version", version());
  app.require_subcommand(1);

  struct Entry {
    const char* name;
    const char* help;
    Outcome (*fn)(const ExperimentConfig&);
  };
  const Entry entries[] = {
      {"index", "graded Fredholm index of a Toeplitz truncation (JSON)", run_index},
      {"chern", "odd Chern character integral (JSON)", run_chern},
      {"compare-bergman", "Landau vs Bergman coordinate weights (CSV)", run_compare_bergman},
      {"commutator-decay", "tail norms of [P_k, pi(a)] (CSV)", run_commutator_decay},
      {"verify", "analytic index vs topological prediction (JSON)", run_verify},
      {"spectrum", "singular values of a truncation (CSV)", run_spectrum},
      {"matrix", "truncated matrix: JSON header or CSV entries", run_matrix},
      {"kernel", "reproducing kernel samples (CSV)", run_kernel},
      {"fedosov", "trace formula index of a unitary symbol (JSON)", run_fedosov},
  };
  std::vector<std::pair<CLI::App*, const Entry*>> subs;
  for (const auto& e : entries) {
    CLI::App* sub = app.add_subcommand(e.name, e.help);
    add_common(sub, c);
    subs.emplace_back(sub, &e);
  }
  for (auto& [sub, e] : subs) {
    const std::string name = e->name;
    if (name == "commutator-decay") {
      sub->add_option("--K", c.K, "energy cutoff for the ambient levels");
      sub->add_option("--D-values", c.d_values, "degree caps, e.g. 5,10,20")->delimiter(',');
    }
    if (name == "compare-bergman") {
      sub->add_option("--i", c.coordinate, "coordinate index (1-based)");
      sub->add_option("--degree-cap", c.degree_cap, "largest |m|");
    }
    if (name == "fedosov") sub->add_option("--power", c.power, "trace power p (default n + 1)");
    if (name == "kernel") sub->add_option("--samples", c.samples, "number of point pairs");
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kBadConfig;
  }

  const Entry* chosen = nullptr;
  for (auto& [sub, e] : subs) {
    if (sub->parsed()) {
      chosen = e;
      c.subcommand = e->name;
    }
  }
  if (c.subcommand == "spectrum" || c.subcommand == "commutator-decay" ||
      c.subcommand == "compare-bergman" || c.subcommand == "kernel") {
    c.format = "csv";
  }

  try {
    validate(c);
    const Outcome result = chosen->fn(c);
    if (c.output.empty()) {
      out << result.body;
    } else {
      write_atomically(c.output, result.body);
    }
    return result.code;
  } catch (const Error& e) {
    err << json{{"error", std::string(to_string(e.kind()))}, {"message", e.what()}, {"version", version()}}
               .dump()
        << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << json{{"error", "Failure"}, {"message", e.what()}, {"version", version()}}.dump() << '\n';
    return kFailed;
  }
}

}  // namespace chargedef::cli
