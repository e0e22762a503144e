#ifndef QMINK_SUITES_HPP
#define QMINK_SUITES_HPP

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qmink/builtin.hpp"
#include "qmink/cocycle.hpp"
#include "qmink/crosslayer.hpp"
#include "qmink/oplab.hpp"
#include "qmink/random.hpp"
#include "qmink/report.hpp"

namespace qmink::suites {

struct Options {
  std::uint64_t seed = 0;
  std::optional<std::size_t> samples;
  std::optional<long double> p;
  std::optional<long double> q;
  std::optional<double> s;
  double tol = 1e-12;
  PQConvention convention = PQConvention::plain;
  std::optional<std::string> algebra;
  bool timing = false;
};

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "presentation", "hopf", "coaction", "cocycle", "pq"};
  return names;
}

/// Library under test plus the algebras and morphisms the suites focus on.
struct Workspace {
  Library lib;
  std::vector<std::string> algebras;
  std::vector<std::string> morphisms;
  std::string source = "builtin";
};

inline Workspace builtin_workspace() {
  Workspace ws;
  ws.lib = builtin("coaction");
  ws.lib.merge(builtin("classical"));
  ws.algebras = {"lorentz", "minkowski"};
  ws.morphisms = {"delta", "coact"};
  return ws;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error("cannot read '" + path + "'");
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Builtin name for a path like "lorentz.qalg" that does not exist on disk.
inline std::optional<std::string> builtin_for_path(const std::string& path) {
  namespace fs = std::filesystem;
  if (fs::exists(path)) {
    return std::nullopt;
  }
  const std::string stem = fs::path(path).stem().string();
  for (const auto& n : builtin_names()) {
    if (n == stem) {
      return n;
    }
  }
  return std::nullopt;
}

/// Loads a .qalg file on top of the builtins; the focus is what the file
/// declares. Builtin names resolve to the shipped sources.
inline Workspace file_workspace(const std::string& path) {
  Workspace base = builtin_workspace();
  Workspace ws;
  std::string text;
  if (auto b = builtin_for_path(path)) {
    text = std::string(builtin_source(*b));
    ws.source = "builtin:" + *b;
  } else {
    text = read_file(path);
    ws.source = path;
  }
  ParseOptions opt;
  opt.star_close = true;
  Library algebras_only;
  for (const auto& n : base.lib.algebra_order) {
    algebras_only.put(base.lib.algebras.at(n));
  }
  ws.lib = parse(text, algebras_only, opt);
  for (const auto& n : ws.lib.algebra_order) {
    if (ws.lib.algebras.at(n) != algebras_only.algebras[n]) {
      ws.algebras.push_back(n);
    }
  }
  ws.morphisms = ws.lib.morphism_order;
  for (const auto& n : base.lib.morphism_order) {
    if (ws.lib.morphisms.find(n) == ws.lib.morphisms.end()) {
      ws.lib.put(base.lib.morphisms.at(n));
    }
  }
  return ws;
}

// ---- item helpers -------------------------------------------------------------

inline CheckItem symbolic_item(std::string name, const SymbolicResidual& r) {
  CheckItem c;
  c.name = std::move(name);
  c.pass = r.zero();
  c.rendered = r.rendered;
  return c;
}

inline CheckItem numeric_item(std::string name, double residual, double tol,
                              std::optional<bool> exact = std::nullopt) {
  CheckItem c;
  c.name = std::move(name);
  c.residual = residual;
  c.tolerance = tol;
  c.exact = exact;
  c.pass = residual < tol || (exact && *exact && residual == 0);
  return c;
}

inline CheckItem count_item(std::string name, std::size_t count,
                            std::optional<std::string> rendered = {}) {
  CheckItem c;
  c.name = std::move(name);
  c.residual = static_cast<double>(count);
  c.pass = count == 0;
  c.rendered = std::move(rendered);
  return c;
}

inline std::string label(long double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6Lg", v);
  return buf;
}

// ---- presentation -------------------------------------------------------------

inline Word random_word(Sampler& rng, std::size_t n_gens,
                        std::size_t max_len) {
  std::size_t len = static_cast<std::size_t>(rng.bits() % (max_len + 1));
  Word w;
  for (std::size_t k = 0; k < len; ++k) {
    w.push_back(static_cast<GenId>(rng.bits() % n_gens));
  }
  return w;
}

/// Words whose leftmost, rightmost and random-redex normal forms differ.
inline std::size_t dual_strategy_mismatches(const Presentation& pres,
                                            std::size_t words,
                                            std::size_t max_len,
                                            std::uint64_t seed,
                                            std::string* first = nullptr) {
  Sampler rng(seed);
  std::size_t bad = 0;
  for (std::size_t k = 0; k < words; ++k) {
    const NCPolynomial p =
        NCPolynomial::monomial(random_word(rng, pres.size(), max_len));
    NormalizeOptions left;
    NormalizeOptions right;
    right.choice = RedexChoice::rightmost;
    NormalizeOptions any;
    any.choice = RedexChoice::random;
    any.seed = seed + k;
    NCPolynomial a = normalize(p, pres, left);
    if (!(a == normalize(p, pres, right)) || !(a == normalize(p, pres, any))) {
      if (bad++ == 0 && first) {
        *first = pres.to_string(p);
      }
    }
  }
  return bad;
}

inline SuiteReport presentation_suite(const Options& opt, const Workspace& ws) {
  SuiteReport r;
  r.suite = "presentation";
  std::vector<std::string> names = ws.algebras;
  if (opt.algebra) {
    names = {*opt.algebra};
  }
  const std::size_t words = opt.samples.value_or(1000);
  r.inputs["source"] = ws.source;
  r.inputs["algebras"] = names;
  r.inputs["seed"] = opt.seed;
  r.inputs["words"] = words;
  r.inputs["max_word_length"] = 8;
  for (const auto& n : names) {
    const Presentation& p = ws.lib.algebra(n);
    auto term = check_termination(p);
    CheckItem t = count_item(n + ": termination", term.violations.size());
    if (!term.pass) {
      t.rendered = term.violations.front();
    }
    r.checks.push_back(std::move(t));
    auto pairs = check_local_confluence(p);
    std::optional<std::string> shown;
    if (!pairs.empty()) {
      shown = p.word_string(pairs.front().word) + ": " +
              p.to_string(pairs.front().left) + " vs " +
              p.to_string(pairs.front().right);
    }
    r.checks.push_back(
        count_item(n + ": unresolved critical pairs", pairs.size(), shown));
    auto star_pairs = unresolved_star_pairs(p);
    r.checks.push_back(
        count_item(n + ": unresolved star pairs", star_pairs.size()));
    std::string first;
    std::size_t bad = dual_strategy_mismatches(p, words, 8, opt.seed, &first);
    r.checks.push_back(count_item(
        n + ": dual-strategy normal forms", bad,
        bad ? std::optional<std::string>(first) : std::nullopt));
  }
  return r;
}

// ---- hopf and coaction --------------------------------------------------------

inline bool is_comultiplication(const Morphism& m) {
  const std::string d = m.domain().name();
  return m.codomain().name() == d + "*" + d;
}

inline const Morphism* comultiplication_of(const Library& lib,
                                           const std::string& algebra) {
  for (const auto& n : lib.morphism_order) {
    const Morphism& m = lib.morphism(n);
    if (is_comultiplication(m) && m.domain().name() == algebra) {
      return &m;
    }
  }
  return nullptr;
}

inline void classical_items(SuiteReport& r, const Workspace& ws,
                            const Morphism& m) {
  auto it = ws.lib.morphisms.find(m.name() + "0");
  if (it == ws.lib.morphisms.end()) {
    return;
  }
  r.inputs["classical_reference"].push_back(it->first);
  for (const auto& item : classical_limit_compare(m, it->second).items) {
    r.checks.push_back(
        symbolic_item(m.name() + ": q=1 limit " + item.label, item));
  }
}

inline void star_items(SuiteReport& r, const Morphism& m) {
  for (const auto& item : check_star_equivariance(m).items) {
    r.checks.push_back(
        symbolic_item(m.name() + ": star-equivariance " + item.label, item));
  }
}

inline void relation_items(SuiteReport& r, const Morphism& m) {
  for (const auto& item : check_relations_preserved(m).items) {
    r.checks.push_back(
        symbolic_item(m.name() + ": relation " + item.label, item));
  }
}

inline std::vector<GenId> all_generators(const Presentation& p) {
  std::vector<GenId> g(p.size());
  for (GenId k = 0; k < p.size(); ++k) {
    g[k] = k;
  }
  return g;
}

inline SuiteReport hopf_suite(const Options& opt, const Workspace& ws) {
  SuiteReport r;
  r.suite = "hopf";
  r.inputs["source"] = ws.source;
  r.inputs["morphisms"] = Json::array();
  r.inputs["classical_reference"] = Json::array();
  for (const auto& n : ws.morphisms) {
    const Morphism& m = ws.lib.morphism(n);
    if (!is_comultiplication(m) ||
        (opt.algebra && m.domain().name() != *opt.algebra)) {
      continue;
    }
    r.inputs["morphisms"].push_back(n);
    relation_items(r, m);
    auto [lhs, rhs] = coassociativity_paths(m);
    for (const auto& item :
         check_cocommutativity_square(lhs, rhs, all_generators(m.domain()))
             .items) {
      r.checks.push_back(
          symbolic_item(n + ": coassociativity " + item.label, item));
    }
    star_items(r, m);
    classical_items(r, ws, m);
  }
  if (r.inputs["morphisms"].empty()) {
    r.error = "no comultiplication found" +
              (opt.algebra ? " for algebra '" + *opt.algebra + "'"
                           : std::string());
  }
  return r;
}

inline SuiteReport coaction_suite(const Options& opt, const Workspace& ws) {
  SuiteReport r;
  r.suite = "coaction";
  r.inputs["source"] = ws.source;
  r.inputs["morphisms"] = Json::array();
  r.inputs["classical_reference"] = Json::array();
  for (const auto& n : ws.morphisms) {
    const Morphism& m = ws.lib.morphism(n);
    if (is_comultiplication(m) || m.codomain().legs() != 2) {
      continue;
    }
    const std::string b = m.domain().name();
    const std::string cod = m.codomain().name();
    if (cod.rfind(b + "*", 0) != 0) {
      continue;
    }
    const std::string a = cod.substr(b.size() + 1);
    const Morphism* delta = comultiplication_of(ws.lib, a);
    if (!delta || (opt.algebra && *opt.algebra != a && *opt.algebra != b)) {
      continue;
    }
    r.inputs["morphisms"].push_back(n);
    relation_items(r, m);
    auto [lhs, rhs] = coaction_paths(m, *delta);
    for (const auto& item :
         check_cocommutativity_square(lhs, rhs, all_generators(m.domain()))
             .items) {
      r.checks.push_back(
          symbolic_item(n + ": coaction identity " + item.label, item));
    }
    star_items(r, m);
    classical_items(r, ws, m);
  }
  if (r.inputs["morphisms"].empty()) {
    r.error = "no coaction found";
  }
  return r;
}

// ---- cocycle ------------------------------------------------------------------

inline std::vector<double> s_values(const Options& opt) {
  if (opt.s) {
    return {*opt.s};
  }
  return {0.3, 0.7, 1.1};
}

inline SuiteReport cocycle_suite(const Options& opt) {
  SuiteReport r;
  r.suite = "cocycle";
  cocycle::SampleSpec spec;
  spec.samples = opt.samples.value_or(10000);
  spec.seed = opt.seed;
  r.inputs["s"] = s_values(opt);
  r.inputs["samples"] = spec.samples;
  r.inputs["seed"] = spec.seed;
  r.inputs["radius"] = spec.radius;
  r.inputs["tolerance"] = opt.tol;
  for (double s : s_values(opt)) {
    cocycle::Params p(s);
    const std::string at = " at s=" + label(s);
    r.checks.push_back(numeric_item(
        "2-cocycle identity (Psi and Psi~)" + at,
        cocycle::check_cocycle_identity(p, spec).max_residual, opt.tol));
    r.checks.push_back(numeric_item(
        "Psi* shift identity as stated" + at,
        cocycle::check_sumup(p, spec).max_residual, opt.tol));
    CheckItem fixed = numeric_item(
        "Psi* shift identity with factor Psi(u,v)" + at,
        cocycle::check_sumup_corrected(p, spec).max_residual, opt.tol);
    fixed.note = "supplementary";
    r.checks.push_back(std::move(fixed));
    r.checks.push_back(numeric_item(
        "Omega identity" + at,
        cocycle::check_omega_identity(p, spec).max_residual, opt.tol));
  }
  return r;
}

// ---- pq -----------------------------------------------------------------------

inline std::vector<std::pair<long double, long double>> pq_values(
    const Options& opt) {
  if (opt.p && opt.q) {
    return {{*opt.p, *opt.q}};
  }
  return {{1.0L, 1.0L}, {2.0L, 3.0L}, {0.5L, std::numbers::e_v<long double>}};
}

inline SuiteReport pq_suite(const Options& opt, const Workspace& ws) {
  SuiteReport r;
  r.suite = "pq";
  SampleOptions so;
  so.samples = opt.samples.value_or(1000);
  so.seed = opt.seed;
  so.tol = opt.tol;
  r.inputs["convention"] =
      opt.convention == PQConvention::plain ? "plain" : "squared";
  r.inputs["pairs"] = Json::array();
  r.inputs["samples"] = so.samples;
  r.inputs["seed"] = so.seed;
  r.inputs["box"] = {-4, 4};
  r.inputs["tolerance"] = opt.tol;
  r.inputs["cross_layer_s"] = s_values(opt);
  auto pts = sample_box(so.samples, so.seed);
  for (auto [p, q] : pq_values(opt)) {
    PQModel m = build_pq_pair(p, q, opt.convention);
    r.inputs["pairs"].push_back(
        {static_cast<double>(p), static_cast<double>(q)});
    const std::string at = " at (p,q)=(" + label(p) + "," + label(q) + ")";
    for (const auto& rep :
         {check_def_mu2(m, so), check_QQstar(m, so),
          check_QQstar_rescaled(m, so), check_twrs(m, so),
          check_normality(m, so)}) {
      for (const auto& id : rep.identities) {
        CheckItem c = numeric_item(id.name + at, id.residual, id.tolerance,
                                   id.exact);
        if (rep.check == "QQstar_rescaled") {
          c.note = "supplementary";
        }
        r.checks.push_back(std::move(c));
      }
    }
    double zmax = max_z_modulus(m, pts);
    CheckItem c;
    c.name = "z-transforms are contractions" + at;
    c.pass = zmax < 1.0;
    char buf[48];
    std::snprintf(buf, sizeof buf, "max |multiplier| = %.17g", zmax);
    c.note = buf;
    r.checks.push_back(std::move(c));
  }
  const Presentation& mink = ws.lib.algebra("minkowski");
  for (double s : s_values(opt)) {
    for (const auto& it : check_cross_layer(mink, s, so)) {
      CheckItem c = numeric_item(
          "cross-layer " + it.name + " at s=" + label(s), it.residual,
          it.tolerance);
      c.note = "K=" + label(it.symbolic) + " model " + label(it.model);
      r.checks.push_back(std::move(c));
    }
  }
  return r;
}

// ---- dispatch -----------------------------------------------------------------

inline SuiteReport run_suite(const std::string& name, const Options& opt,
                             const Workspace& ws) {
  auto start = std::chrono::steady_clock::now();
  SuiteReport r;
  try {
    if (name == "presentation") {
      r = presentation_suite(opt, ws);
    } else if (name == "hopf") {
      r = hopf_suite(opt, ws);
    } else if (name == "coaction") {
      r = coaction_suite(opt, ws);
    } else if (name == "cocycle") {
      r = cocycle_suite(opt);
    } else if (name == "pq") {
      r = pq_suite(opt, ws);
    } else {
      throw Error("unknown check '" + name + "'");
    }
  } catch (const std::exception& e) {
    r.suite = name;
    r.error = e.what();
  }
  if (opt.timing) {
    r.wall_seconds = std::chrono::duration<double>(
                         std::chrono::steady_clock::now() - start)
                         .count();
  }
  return r;
}

/// All suites, run concurrently and returned in suite_names() order.
inline std::vector<SuiteReport> run_all(const Options& opt,
                                        const Workspace& ws) {
  std::vector<std::future<SuiteReport>> jobs;
  for (const auto& n : suite_names()) {
    jobs.push_back(std::async(std::launch::async, [&opt, &ws, n] {
      return run_suite(n, opt, ws);
    }));
  }
  std::vector<SuiteReport> out;
  for (auto& j : jobs) {
    out.push_back(j.get());
  }
  return out;
}

}  // namespace qmink::suites

#endif  // QMINK_SUITES_HPP
