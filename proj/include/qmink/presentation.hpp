#ifndef QMINK_PRESENTATION_HPP
#define QMINK_PRESENTATION_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qmink/ncpoly.hpp"
#include "qmink/scalar.hpp"

namespace qmink {

struct Generator {
  std::string name;       // display name without leg tag, e.g. "a'"
  GenId star_partner = 0;
  unsigned leg = 0;
  bool heavy = false;
  bool declared = true;   // false for partners created by the star structure
  // Holomorphic then antiholomorphic exponents of the lambda-conjugation.
  // Metadata only; the partner carries the swapped halves.
  std::vector<int> weight;
};

struct RewriteRule {
  Word lhs;
  NCPolynomial rhs;

  friend bool operator==(const RewriteRule&, const RewriteRule&) = default;
};

class StepLimitExceeded : public Error {
 public:
  using Error::Error;
};

class OrientationError : public Error {
 public:
  using Error::Error;
};

/// Generators with a star pairing, oriented rewrite rules and the term order
/// (heavy-degree, inversion count, length, lexicographic) they decrease.
class Presentation {
 public:
  Presentation() = default;
  explicit Presentation(std::string name) : name_(std::move(name)) {}

  const std::string& name() const { return name_; }
  void set_name(std::string n) { name_ = std::move(n); }

  const std::vector<Generator>& generators() const { return gens_; }
  std::size_t size() const { return gens_.size(); }
  const Generator& generator(GenId g) const { return gens_.at(g); }

  const std::vector<RewriteRule>& rules() const { return rules_; }

  unsigned legs() const { return legs_; }
  void set_legs(unsigned n) {
    legs_ = n;
    rebuild_names();
  }

  bool star_closed() const { return star_closed_; }
  void set_star_closed(bool v) { star_closed_ = v; }

  GenId add_generator(Generator g) {
    GenId id = static_cast<GenId>(gens_.size());
    gens_.push_back(std::move(g));
    rebuild_names();
    return id;
  }

  void set_star_partner(GenId g, GenId partner) {
    gens_.at(g).star_partner = partner;
  }
  void set_heavy(GenId g, bool heavy) { gens_.at(g).heavy = heavy; }
  void set_weight(GenId g, std::vector<int> w) {
    gens_.at(g).weight = std::move(w);
  }

  void add_rule(RewriteRule r) {
    if (r.lhs.empty()) {
      throw OrientationError("rewrite rule with empty left-hand side");
    }
    rules_.push_back(std::move(r));
    index_rule(rules_.size() - 1);
  }

  void remove_rule(std::size_t i) {
    rules_.erase(rules_.begin() + static_cast<std::ptrdiff_t>(i));
    rebuild_index();
  }

  void set_rules(std::vector<RewriteRule> rules) {
    rules_ = std::move(rules);
    rebuild_index();
  }

  void replace_rhs(std::size_t i, NCPolynomial rhs) {
    rules_.at(i).rhs = std::move(rhs);
  }

  /// Canonical rule order: ascending left-hand sides in the term order.
  void sort_rules() {
    std::stable_sort(rules_.begin(), rules_.end(),
                     [this](const RewriteRule& a, const RewriteRule& b) {
                       return word_less(a.lhs, b.lhs);
                     });
    rebuild_index();
  }

  /// Leg-tagged when the presentation is a tensor product: "a'@1".
  std::string display_name(GenId g) const {
    const auto& gen = gens_.at(g);
    if (legs_ > 1) {
      return gen.name + "@" + std::to_string(gen.leg);
    }
    return gen.name;
  }

  std::optional<GenId> find(const std::string& display) const {
    auto it = by_name_.find(display);
    if (it == by_name_.end()) {
      return std::nullopt;
    }
    return it->second;
  }

  /// Rules whose left-hand side starts with generator g.
  const std::vector<std::size_t>& rules_starting_with(GenId g) const {
    static const std::vector<std::size_t> none;
    return g < by_first_.size() ? by_first_[g] : none;
  }

  // ---- term order -------------------------------------------------------

  std::size_t heavy_degree(const Word& w) const {
    std::size_t n = 0;
    for (GenId g : w) {
      n += gens_[g].heavy ? 1 : 0;
    }
    return n;
  }

  static std::size_t inversions(const Word& w) {
    std::size_t n = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      for (std::size_t j = i + 1; j < w.size(); ++j) {
        n += w[i] > w[j] ? 1 : 0;
      }
    }
    return n;
  }

  bool word_less(const Word& a, const Word& b) const {
    std::size_t ha = heavy_degree(a);
    std::size_t hb = heavy_degree(b);
    if (ha != hb) {
      return ha < hb;
    }
    std::size_t ia = inversions(a);
    std::size_t ib = inversions(b);
    if (ia != ib) {
      return ia < ib;
    }
    if (a.size() != b.size()) {
      return a.size() < b.size();
    }
    return a < b;
  }

  /// Largest word of p in the term order; p must be nonzero.
  const Word& leading_word(const NCPolynomial& p) const {
    const Word* best = nullptr;
    for (const auto& [w, c] : p.terms()) {
      if (best == nullptr || word_less(*best, w)) {
        best = &w;
      }
    }
    if (best == nullptr) {
      throw Error("leading word of the zero polynomial");
    }
    return *best;
  }

  // ---- rendering --------------------------------------------------------

  std::string word_string(const Word& w) const {
    std::string out;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (i > 0) {
        out += ' ';
      }
      out += display_name(w[i]);
    }
    return out;
  }

  /// "1 + b c", "q^-4 x w", "(q^4 + 1) a b - i c".
  std::string to_string(const NCPolynomial& p) const {
    if (p.is_zero()) {
      return "0";
    }
    std::string out;
    bool first = true;
    for (const auto& [w, c] : p.terms()) {
      bool negative = false;
      std::string coeff;
      if (c.is_monomial()) {
        const auto& [k, gc] = *c.terms().begin();
        negative = gc.is_real() && sgn(gc.re()) < 0;
        GaussianRational shown = negative ? -gc : gc;
        if (!(w.empty() == false && k == 0 && shown.is_one())) {
          coeff = Scalar::monomial_string(k, shown);
        }
      } else {
        coeff = "(" + c.to_string() + ")";
      }
      std::string term = coeff;
      if (!w.empty()) {
        if (!term.empty()) {
          term += ' ';
        }
        term += word_string(w);
      }
      if (first) {
        out += negative ? "-" + term : term;
      } else {
        out += negative ? " - " : " + ";
        out += term;
      }
      first = false;
    }
    return out;
  }

  std::string rule_string(const RewriteRule& r) const {
    return word_string(r.lhs) + " -> " + to_string(r.rhs);
  }

  /// Same generators (names, legs, partners) in the same order.
  bool same_signature(const Presentation& o) const {
    if (gens_.size() != o.gens_.size() || legs_ != o.legs_) {
      return false;
    }
    for (std::size_t i = 0; i < gens_.size(); ++i) {
      const auto& a = gens_[i];
      const auto& b = o.gens_[i];
      if (a.name != b.name || a.leg != b.leg ||
          a.star_partner != b.star_partner) {
        return false;
      }
    }
    return true;
  }

  friend bool operator==(const Presentation& a, const Presentation& b) {
    if (a.name_ != b.name_ || !a.same_signature(b) || a.rules_ != b.rules_) {
      return false;
    }
    for (std::size_t i = 0; i < a.gens_.size(); ++i) {
      const auto& x = a.gens_[i];
      const auto& y = b.gens_[i];
      if (x.heavy != y.heavy || x.declared != y.declared ||
          x.weight != y.weight) {
        return false;
      }
    }
    return true;
  }

 private:
  void rebuild_names() {
    by_name_.clear();
    for (std::size_t i = 0; i < gens_.size(); ++i) {
      by_name_.emplace(display_name(static_cast<GenId>(i)),
                       static_cast<GenId>(i));
    }
    by_first_.resize(gens_.size());
  }

  void index_rule(std::size_t i) {
    GenId first = rules_[i].lhs.front();
    if (first >= by_first_.size()) {
      by_first_.resize(first + 1);
    }
    by_first_[first].push_back(i);
  }

  void rebuild_index() {
    by_first_.assign(gens_.size(), {});
    for (std::size_t i = 0; i < rules_.size(); ++i) {
      index_rule(i);
    }
  }

  std::string name_;
  std::vector<Generator> gens_;
  std::vector<RewriteRule> rules_;
  unsigned legs_ = 1;
  bool star_closed_ = false;
  std::unordered_map<std::string, GenId> by_name_;
  std::vector<std::vector<std::size_t>> by_first_;
};

// ---- normalization --------------------------------------------------------

enum class RedexChoice { leftmost, rightmost, random };

struct NormalizeOptions {
  RedexChoice choice = RedexChoice::leftmost;
  std::uint64_t seed = 0;  // used by RedexChoice::random
  std::size_t step_limit = 1'000'000;
};

struct Redex {
  std::size_t position;
  std::size_t rule;
};

inline bool matches_at(const Word& w, std::size_t pos, const Word& lhs) {
  if (pos + lhs.size() > w.size()) {
    return false;
  }
  return std::equal(lhs.begin(), lhs.end(),
                    w.begin() + static_cast<std::ptrdiff_t>(pos));
}

inline std::vector<Redex> redexes(const Presentation& pres, const Word& w) {
  std::vector<Redex> out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    for (std::size_t r : pres.rules_starting_with(w[i])) {
      if (matches_at(w, i, pres.rules()[r].lhs)) {
        out.push_back({i, r});
      }
    }
  }
  return out;
}

inline std::optional<Redex> first_redex(const Presentation& pres,
                                        const Word& w) {
  for (std::size_t i = 0; i < w.size(); ++i) {
    for (std::size_t r : pres.rules_starting_with(w[i])) {
      if (matches_at(w, i, pres.rules()[r].lhs)) {
        return Redex{i, r};
      }
    }
  }
  return std::nullopt;
}

/// Adds c * (w[0,pos) rhs w[pos+|lhs|, end)) to `into`.
template <class Sink>
void rewrite_at(const Presentation& pres, const Word& w, const Scalar& c,
                const Redex& rx, Sink&& into) {
  const RewriteRule& rule = pres.rules()[rx.rule];
  for (const auto& [rw, rc] : rule.rhs.terms()) {
    Word out;
    out.reserve(w.size() - rule.lhs.size() + rw.size());
    out.insert(out.end(), w.begin(),
               w.begin() + static_cast<std::ptrdiff_t>(rx.position));
    out.insert(out.end(), rw.begin(), rw.end());
    out.insert(out.end(),
               w.begin() + static_cast<std::ptrdiff_t>(rx.position +
                                                       rule.lhs.size()),
               w.end());
    into(std::move(out), c * rc);
  }
}

/// Normal form of p: no rule lhs occurs in any term. Pending terms are
/// processed largest-first in the term order so equal words merge before
/// they are rewritten again.
inline NCPolynomial normalize(const NCPolynomial& p, const Presentation& pres,
                              const NormalizeOptions& opt = {}) {
  auto greater = [&pres](const Word& a, const Word& b) {
    return pres.word_less(b, a);
  };
  std::map<Word, Scalar, decltype(greater)> pending(greater);
  auto push = [&pending](Word w, const Scalar& c) {
    if (c.is_zero()) {
      return;
    }
    auto [it, inserted] = pending.try_emplace(std::move(w), c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) {
        pending.erase(it);
      }
    }
  };
  for (const auto& [w, c] : p.terms()) {
    push(w, c);
  }

  std::mt19937_64 rng(opt.seed);
  NCPolynomial result;
  std::size_t steps = 0;
  while (!pending.empty()) {
    auto node = pending.extract(pending.begin());
    const Word& w = node.key();
    const Scalar& c = node.mapped();

    std::optional<Redex> rx;
    switch (opt.choice) {
      case RedexChoice::leftmost:
        rx = first_redex(pres, w);
        break;
      case RedexChoice::rightmost: {
        auto all = redexes(pres, w);
        if (!all.empty()) {
          rx = all.back();
        }
        break;
      }
      case RedexChoice::random: {
        auto all = redexes(pres, w);
        if (!all.empty()) {
          rx = all[std::uniform_int_distribution<std::size_t>(
              0, all.size() - 1)(rng)];
        }
        break;
      }
    }
    if (!rx) {
      result.add_term(w, c);
      continue;
    }
    if (++steps > opt.step_limit) {
      throw StepLimitExceeded("normalization exceeded " +
                              std::to_string(opt.step_limit) +
                              " rewrite steps in presentation '" +
                              pres.name() + "'");
    }
    rewrite_at(pres, w, c, *rx, push);
  }
  return result;
}

inline bool is_normal(const Word& w, const Presentation& pres) {
  return !first_redex(pres, w).has_value();
}

/// Antimultiplicative involution: reverses words, maps letters to their
/// partners and conjugates coefficients.
inline NCPolynomial star(const NCPolynomial& p, const Presentation& pres) {
  NCPolynomial out;
  for (const auto& [w, c] : p.terms()) {
    Word r;
    r.reserve(w.size());
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
      r.push_back(pres.generator(*it).star_partner);
    }
    out.add_term(std::move(r), c.star());
  }
  return out;
}

/// Product followed by normalization.
inline NCPolynomial multiply(const NCPolynomial& a, const NCPolynomial& b,
                             const Presentation& pres,
                             const NormalizeOptions& opt = {}) {
  return normalize(a * b, pres, opt);
}

}  // namespace qmink

#endif  // QMINK_PRESENTATION_HPP
