#ifndef QMINK_REWRITING_HPP
#define QMINK_REWRITING_HPP

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "qmink/ncpoly.hpp"
#include "qmink/presentation.hpp"

namespace qmink {

/// Turns a nonzero relation p = 0 into a rule on its leading word. The
/// leading coefficient must be a unit of the scalar ring.
inline RewriteRule orient(const NCPolynomial& p, const Presentation& pres) {
  if (p.is_zero()) {
    throw OrientationError("cannot orient the trivial relation 0 = 0");
  }
  const Word lead = pres.leading_word(p);
  const Scalar c = p.coefficient(lead);
  if (!c.is_monomial()) {
    throw OrientationError("leading coefficient " + c.to_string() + " of " +
                           pres.to_string(p) + " is not a unit");
  }
  NCPolynomial rest = p - NCPolynomial::monomial(lead, c);
  return {lead, -(rest * c.inverse())};
}

// ---- termination ----------------------------------------------------------

struct TerminationReport {
  bool pass = true;
  std::vector<std::string> violations;
};

inline TerminationReport check_termination(const Presentation& pres) {
  TerminationReport rep;
  for (const auto& r : pres.rules()) {
    for (const auto& [w, c] : r.rhs.terms()) {
      if (!pres.word_less(w, r.lhs)) {
        rep.pass = false;
        rep.violations.push_back(pres.rule_string(r) + "  (" +
                                 pres.word_string(w) + " is not below " +
                                 pres.word_string(r.lhs) + ")");
        break;
      }
    }
  }
  return rep;
}

// ---- inter-reduction --------------------------------------------------------

/// Removes rules made redundant by others and normalizes every right-hand
/// side, so that rule sets differing only in their history coincide.
inline void inter_reduce(Presentation& pres) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < pres.rules().size(); ++i) {
      Presentation others = pres;
      others.remove_rule(i);
      const RewriteRule r = pres.rules()[i];
      if (!is_normal(r.lhs, others)) {
        NCPolynomial diff = normalize(
            NCPolynomial::monomial(r.lhs) - r.rhs, others);
        pres.remove_rule(i);
        if (!diff.is_zero()) {
          pres.add_rule(orient(diff, pres));
        }
        changed = true;
        break;
      }
    }
  }
  for (std::size_t i = 0; i < pres.rules().size(); ++i) {
    pres.replace_rhs(i, normalize(pres.rules()[i].rhs, pres));
  }
  pres.sort_rules();
}

// ---- star closure -----------------------------------------------------------

/// Adds oriented star images of the relations until every star image
/// normalizes to zero.
inline Presentation star_closure(const Presentation& pres) {
  Presentation out = pres;
  inter_reduce(out);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < out.rules().size(); ++i) {
      const RewriteRule& r = out.rules()[i];
      NCPolynomial img =
          normalize(star(NCPolynomial::monomial(r.lhs) - r.rhs, out), out);
      if (img.is_zero()) {
        continue;
      }
      RewriteRule derived;
      try {
        derived = orient(img, out);
      } catch (const OrientationError& e) {
        throw OrientationError("star image of rule " + out.rule_string(r) +
                               " cannot be oriented: " + e.what());
      }
      out.add_rule(std::move(derived));
      inter_reduce(out);
      changed = true;
      break;
    }
  }
  out.set_star_closed(true);
  return out;
}

// ---- critical pairs ---------------------------------------------------------

struct CriticalPair {
  Word word;            // overlap word, empty for star pairs
  std::size_t rule1;
  std::size_t rule2;
  NCPolynomial left;    // normal form along rule1
  NCPolynomial right;   // normal form along rule2
  bool star_pair = false;
};

namespace detail {

inline NCPolynomial splice(const Word& prefix, const NCPolynomial& mid,
                           const Word& suffix) {
  return NCPolynomial::monomial(prefix) * mid * NCPolynomial::monomial(suffix);
}

template <class Visit>
void for_each_critical_pair(const Presentation& pres, Visit&& visit) {
  const auto& rules = pres.rules();
  for (std::size_t i = 0; i < rules.size(); ++i) {
    const Word& l1 = rules[i].lhs;
    for (std::size_t j = 0; j < rules.size(); ++j) {
      const Word& l2 = rules[j].lhs;
      // Proper overlaps: a suffix of l1 equals a prefix of l2.
      for (std::size_t k = 1; k < l1.size() && k < l2.size(); ++k) {
        if (!std::equal(l1.end() - static_cast<std::ptrdiff_t>(k), l1.end(),
                        l2.begin())) {
          continue;
        }
        Word w = l1;
        w.insert(w.end(), l2.begin() + static_cast<std::ptrdiff_t>(k),
                 l2.end());
        Word tail(l2.begin() + static_cast<std::ptrdiff_t>(k), l2.end());
        Word head(l1.begin(), l1.end() - static_cast<std::ptrdiff_t>(k));
        visit(w, i, j, splice({}, rules[i].rhs, tail),
              splice(head, rules[j].rhs, {}));
      }
      // Inclusions: l2 occurs inside l1.
      if (i == j || l2.size() > l1.size()) {
        continue;
      }
      for (std::size_t p = 0; p + l2.size() <= l1.size(); ++p) {
        if (!matches_at(l1, p, l2)) {
          continue;
        }
        if (l2.size() == l1.size() && j < i) {
          continue;  // identical lhs, visit once
        }
        Word head(l1.begin(), l1.begin() + static_cast<std::ptrdiff_t>(p));
        Word tail(l1.begin() + static_cast<std::ptrdiff_t>(p + l2.size()),
                  l1.end());
        visit(l1, i, j, rules[i].rhs, splice(head, rules[j].rhs, tail));
      }
    }
  }
}

}  // namespace detail

/// Unresolved overlap and inclusion ambiguities.
inline std::vector<CriticalPair> check_local_confluence(
    const Presentation& pres) {
  std::vector<CriticalPair> out;
  detail::for_each_critical_pair(
      pres, [&](const Word& w, std::size_t i, std::size_t j,
                const NCPolynomial& a, const NCPolynomial& b) {
        NCPolynomial na = normalize(a, pres);
        NCPolynomial nb = normalize(b, pres);
        if (!(na == nb)) {
          out.push_back({w, i, j, std::move(na), std::move(nb), false});
        }
      });
  return out;
}

/// Rules whose star image does not normalize to zero.
inline std::vector<CriticalPair> unresolved_star_pairs(
    const Presentation& pres) {
  std::vector<CriticalPair> out;
  for (std::size_t i = 0; i < pres.rules().size(); ++i) {
    const auto& r = pres.rules()[i];
    NCPolynomial a = normalize(star(NCPolynomial::monomial(r.lhs), pres), pres);
    NCPolynomial b = normalize(star(r.rhs, pres), pres);
    if (!(a == b)) {
      out.push_back({{}, i, i, std::move(a), std::move(b), true});
    }
  }
  return out;
}

// ---- completion -------------------------------------------------------------

struct CompletionResult {
  Presentation presentation;
  std::vector<std::string> added;  // rendered new rules
  bool confluent = false;
  bool limit_reached = false;
};

/// Orients unresolved star pairs of star-closed presentations, then
/// unresolved critical pairs, as new rules, at most max_new_rules of them.
inline CompletionResult complete(const Presentation& pres,
                                 std::size_t max_new_rules) {
  CompletionResult res{pres, {}, false, false};
  Presentation& cur = res.presentation;
  while (true) {
    std::vector<CriticalPair> pairs;
    if (cur.star_closed()) {
      pairs = unresolved_star_pairs(cur);
    }
    auto overlaps = check_local_confluence(cur);
    pairs.insert(pairs.end(), overlaps.begin(), overlaps.end());
    if (pairs.empty()) {
      res.confluent = true;
      break;
    }
    if (res.added.size() >= max_new_rules) {
      res.limit_reached = true;
      break;
    }
    RewriteRule r;
    try {
      r = orient(pairs.front().left - pairs.front().right, cur);
    } catch (const OrientationError& e) {
      throw OrientationError(std::string("unorientable critical pair: ") +
                             e.what());
    }
    res.added.push_back(cur.rule_string(r));
    cur.add_rule(std::move(r));
    inter_reduce(cur);
  }
  return res;
}

// ---- tensor products and specialization -------------------------------------

/// p1 (x) p2 with flattened legs. Letters of different legs commute with
/// factor 1; cross-leg rules sort lower legs first.
inline Presentation tensor(const Presentation& p1, const Presentation& p2) {
  Presentation out(p1.name() + "*" + p2.name());
  const unsigned legs = p1.legs() + p2.legs();
  out.set_legs(legs);
  const GenId n1 = static_cast<GenId>(p1.size());
  for (const auto& g : p1.generators()) {
    out.add_generator(g);
  }
  for (const auto& g : p2.generators()) {
    Generator h = g;
    h.leg += p1.legs();
    h.star_partner += n1;
    out.add_generator(std::move(h));
  }
  auto shift = [n1](GenId g) { return g + n1; };
  for (const auto& r : p1.rules()) {
    out.add_rule(r);
  }
  for (const auto& r : p2.rules()) {
    Word lhs;
    for (GenId g : r.lhs) {
      lhs.push_back(shift(g));
    }
    out.add_rule({std::move(lhs), r.rhs.map_generators(shift)});
  }
  for (GenId g = 0; g < p2.size(); ++g) {
    for (GenId h = 0; h < n1; ++h) {
      out.add_rule({{shift(g), h}, NCPolynomial::monomial({h, shift(g)})});
    }
  }
  out.set_star_closed(p1.star_closed() && p2.star_closed());
  return out;
}

/// q -> 1 in every rule.
inline Presentation specialize_q1(const Presentation& pres) {
  Presentation out = pres;
  std::vector<RewriteRule> rules;
  for (const auto& r : pres.rules()) {
    rules.push_back({r.lhs, r.rhs.at_q1()});
  }
  out.set_rules(std::move(rules));
  return out;
}

}  // namespace qmink

#endif  // QMINK_REWRITING_HPP
