#ifndef QMINK_NCPOLY_HPP
#define QMINK_NCPOLY_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <vector>

#include "qmink/scalar.hpp"

namespace qmink {

using GenId = std::uint32_t;
using Word = std::vector<GenId>;

/// Shorter words first, then lexicographic on generator indices. Only used
/// as the storage order of NCPolynomial; the rewriting order lives in
/// Presentation.
struct DegLexLess {
  bool operator()(const Word& a, const Word& b) const {
    if (a.size() != b.size()) {
      return a.size() < b.size();
    }
    return a < b;
  }
};

/// Finite Scalar combination of words in the generators of a presentation.
class NCPolynomial {
 public:
  using Terms = std::map<Word, Scalar, DegLexLess>;

  NCPolynomial() = default;
  NCPolynomial(Scalar c) { add_term({}, std::move(c)); }  // NOLINT
  NCPolynomial(long c) : NCPolynomial(Scalar(c)) {}       // NOLINT

  static NCPolynomial monomial(Word w, Scalar c = 1) {
    NCPolynomial p;
    p.add_term(std::move(w), std::move(c));
    return p;
  }
  static NCPolynomial generator(GenId g) { return monomial({g}); }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  void add_term(Word w, Scalar c) {
    if (c.is_zero()) {
      return;
    }
    auto [it, inserted] = terms_.try_emplace(std::move(w), c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) {
        terms_.erase(it);
      }
    }
  }

  Scalar coefficient(const Word& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? Scalar() : it->second;
  }

  NCPolynomial operator-() const {
    NCPolynomial out;
    for (const auto& [w, c] : terms_) {
      out.terms_.emplace(w, -c);
    }
    return out;
  }
  NCPolynomial& operator+=(const NCPolynomial& o) {
    for (const auto& [w, c] : o.terms_) {
      add_term(w, c);
    }
    return *this;
  }
  NCPolynomial& operator-=(const NCPolynomial& o) {
    for (const auto& [w, c] : o.terms_) {
      add_term(w, -c);
    }
    return *this;
  }
  NCPolynomial& operator*=(const Scalar& c) {
    if (c.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto& [w, v] : terms_) {
      v = v * c;
    }
    return *this;
  }

  friend NCPolynomial operator+(NCPolynomial a, const NCPolynomial& b) {
    return a += b;
  }
  friend NCPolynomial operator-(NCPolynomial a, const NCPolynomial& b) {
    return a -= b;
  }
  friend NCPolynomial operator*(NCPolynomial a, const Scalar& c) {
    return a *= c;
  }
  friend NCPolynomial operator*(const Scalar& c, NCPolynomial a) {
    return a *= c;
  }
  /// Concatenation product (free algebra, no rewriting).
  friend NCPolynomial operator*(const NCPolynomial& a, const NCPolynomial& b) {
    NCPolynomial out;
    for (const auto& [wa, ca] : a.terms_) {
      for (const auto& [wb, cb] : b.terms_) {
        Word w;
        w.reserve(wa.size() + wb.size());
        w.insert(w.end(), wa.begin(), wa.end());
        w.insert(w.end(), wb.begin(), wb.end());
        out.add_term(std::move(w), ca * cb);
      }
    }
    return out;
  }
  friend bool operator==(const NCPolynomial& a, const NCPolynomial& b) {
    return a.terms_ == b.terms_;
  }

  /// Applies f to every generator index (re-indexing between presentations).
  template <class F>
  NCPolynomial map_generators(F&& f) const {
    NCPolynomial out;
    for (const auto& [w, c] : terms_) {
      Word m;
      m.reserve(w.size());
      for (GenId g : w) {
        m.push_back(f(g));
      }
      out.add_term(std::move(m), c);
    }
    return out;
  }

  /// q -> 1 on every coefficient.
  NCPolynomial at_q1() const {
    NCPolynomial out;
    for (const auto& [w, c] : terms_) {
      out.add_term(w, Scalar(c.at_q1()));
    }
    return out;
  }

 private:
  Terms terms_;
};

}  // namespace qmink

#endif  // QMINK_NCPOLY_HPP
