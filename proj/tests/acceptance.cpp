// One line per acceptance criterion; exit status 1 when any fails.

#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

#include "qmink/suites.hpp"

namespace {

using namespace qmink;

constexpr std::size_t random_words = 1000;
constexpr std::size_t max_word_length = 8;
constexpr std::size_t cocycle_samples = 10000;
constexpr double cocycle_radius = 2.0;
constexpr double cocycle_tol = 1e-12;
constexpr std::size_t pq_points = 1000;
constexpr double pq_tol = 1e-12;
constexpr double cross_tol = 1e-12;
constexpr std::uint64_t seed = 20240601;
const double s_values[] = {0.3, 0.7, 1.1};

struct Outcome {
  bool pass = true;
  std::vector<std::string> failures;
  std::vector<std::string> notes;  // printed, never counted
  std::string summary;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      failures.push_back(what);
    }
  }
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

bool all_zero(const SymbolicReport& rep, Outcome& out, const std::string& what) {
  for (const auto& it : rep.items) {
    out.require(it.zero(), what + " " + it.label + ": " + it.rendered);
  }
  return rep.pass();
}

std::vector<GenId> all_generators(const Presentation& p) {
  std::vector<GenId> g(p.size());
  for (GenId k = 0; k < p.size(); ++k) {
    g[k] = k;
  }
  return g;
}

Outcome presentation_integrity(const Library& lib) {
  Outcome out;
  std::size_t words = 0;
  for (const char* name : {"lorentz", "minkowski"}) {
    const Presentation& p = lib.algebra(name);
    const std::string n = name;
    out.require(p.star_closed(), n + " is not star closed");
    out.require(check_termination(p).pass, n + " termination");
    const auto pairs = check_local_confluence(p);
    out.require(pairs.empty(),
                n + ": " + std::to_string(pairs.size()) + " unresolved critical pairs");
    const auto star_pairs = unresolved_star_pairs(p);
    out.require(star_pairs.empty(),
                n + ": " + std::to_string(star_pairs.size()) + " unresolved star pairs");
    std::string first;
    const std::size_t bad = suites::dual_strategy_mismatches(
        p, random_words, max_word_length, seed, &first);
    out.require(bad == 0, n + ": strategies disagree on " + first);
    words += random_words;
  }
  out.summary = std::to_string(words) + " random words, 0 critical pairs required";
  return out;
}

Outcome comultiplication(const Library& lib) {
  Outcome out;
  const Morphism& delta = lib.morphism("delta");
  const SymbolicReport rel = check_relations_preserved(delta);
  all_zero(rel, out, "relation");
  bool det = false;
  for (const auto& r : delta.domain().rules()) {
    det = det || delta.domain().to_string(r.rhs) == "1 + b c";
  }
  out.require(det, "determinant rule missing");
  auto [lhs, rhs] = coassociativity_paths(delta);
  const SymbolicReport co = check_cocommutativity_square(
      lhs, rhs, all_generators(delta.domain()));
  all_zero(co, out, "coassociativity");
  out.summary = std::to_string(rel.items.size()) + " relations, " +
                std::to_string(co.items.size()) + " generators";
  return out;
}

Outcome coaction(const Library& lib) {
  Outcome out;
  const Morphism& coact = lib.morphism("coact");
  const SymbolicReport rel = check_relations_preserved(coact);
  all_zero(rel, out, "relation");
  auto [lhs, rhs] = coaction_paths(coact, lib.morphism("delta"));
  const SymbolicReport co = check_cocommutativity_square(
      lhs, rhs, all_generators(coact.domain()));
  all_zero(co, out, "coaction identity");
  const SymbolicReport st = check_star_equivariance(coact);
  all_zero(st, out, "star");
  out.summary = std::to_string(rel.items.size()) + " relations, " +
                std::to_string(co.items.size()) + " generators";
  return out;
}

Outcome classical_limit(const Library& lib) {
  Outcome out;
  all_zero(classical_limit_compare(lib.morphism("coact"), lib.morphism("coact0")),
           out, "coact");
  all_zero(classical_limit_compare(lib.morphism("delta"), lib.morphism("delta0")),
           out, "delta");
  out.summary = "term-for-term at q = 1";
  return out;
}

Outcome cocycle_identities() {
  Outcome out;
  double worst = 0;
  for (double s : s_values) {
    const cocycle::Params p(s);
    cocycle::SampleSpec spec;
    spec.samples = cocycle_samples;
    spec.seed = seed;
    spec.radius = cocycle_radius;
    for (const auto& r : {cocycle::check_cocycle_identity(p, spec),
                          cocycle::check_sumup(p, spec),
                          cocycle::check_omega_identity(p, spec)}) {
      worst = std::max(worst, r.max_residual);
      out.require(r.max_residual < cocycle_tol,
                  r.identity + " at s=" + suites::label(s) +
                      ": max residual " + sci(r.max_residual));
    }
    const auto fixed = cocycle::check_sumup_corrected(p, spec);
    out.notes.push_back("sumup with factor Psi(u,v) at s=" + suites::label(s) +
                        ": max residual " + sci(fixed.max_residual));
  }
  out.summary = "max residual " + sci(worst) + ", tolerance " + sci(cocycle_tol);
  return out;
}

Outcome operator_lab() {
  Outcome out;
  const std::pair<long double, long double> pairs[] = {
      {1, 1}, {2, 3}, {0.5L, std::numbers::e_v<long double>}};
  SampleOptions opt;
  opt.samples = pq_points;
  opt.seed = seed;
  opt.tol = pq_tol;
  std::size_t count = 0;
  for (auto [p, q] : pairs) {
    const PQModel m = build_pq_pair(p, q);
    const bool unit = p == 1 && q == 1;
    std::vector<Identity> ids;
    for (const auto& rep : {check_def_mu2(m, opt), check_QQstar(m, opt)}) {
      ids.insert(ids.end(), rep.identities.begin(), rep.identities.end());
    }
    const PQReport twrs = check_twrs(m, opt);
    ids.insert(ids.end(), twrs.identities.begin(), twrs.identities.begin() + 4);
    for (const auto& id : ids) {
      const std::string at = " at (p,q)=(" + suites::label(p) + "," +
                             suites::label(q) + "): residual " + sci(id.residual);
      out.require(id.residual < pq_tol, id.name + at);
      if (unit) {
        out.require(id.residual == 0 && id.exact, id.name + at + " not exactly 0");
      }
      ++count;
    }
    for (const auto& id : check_QQstar_rescaled(m, opt).identities) {
      out.notes.push_back(id.name + " at (p,q)=(" + suites::label(p) + "," +
                          suites::label(q) + "): residual " + sci(id.residual));
    }
  }
  out.summary = std::to_string(count) + " identities over " +
                std::to_string(pq_points) + " points";
  return out;
}

Outcome cross_layer(const Library& lib) {
  Outcome out;
  SampleOptions opt;
  opt.samples = pq_points;
  opt.seed = seed;
  opt.tol = cross_tol;
  double worst = 0;
  for (double s : s_values) {
    for (const auto& it : check_cross_layer(lib.algebra("minkowski"), s, opt)) {
      worst = std::max(worst, it.residual);
      out.require(it.residual < cross_tol,
                  it.name + " at s=" + suites::label(s) + ": " + sci(it.residual));
    }
  }
  out.summary = "max relative residual " + sci(worst);
  return out;
}

}  // namespace

int main() {
  Library lib = builtin("coaction");
  lib.merge(builtin("classical"));
  const std::pair<const char*, Outcome> results[] = {
      {"presentation integrity", presentation_integrity(lib)},
      {"comultiplication", comultiplication(lib)},
      {"coaction", coaction(lib)},
      {"classical limit", classical_limit(lib)},
      {"cocycle identities", cocycle_identities()},
      {"operator lab", operator_lab()},
      {"cross-layer consistency", cross_layer(lib)},
  };
  int failed = 0;
  int k = 0;
  for (const auto& [title, o] : results) {
    std::printf("criterion %d: %s %s (%s)\n", ++k, o.pass ? "PASS" : "FAIL", title,
                o.summary.c_str());
    for (const auto& f : o.failures) {
      std::printf("    %s\n", f.c_str());
    }
    for (const auto& n : o.notes) {
      std::printf("    note: %s\n", n.c_str());
    }
    failed += o.pass ? 0 : 1;
  }
  std::printf("%d of %d criteria pass\n", k - failed, k);
  return failed ? 1 : 0;
}
