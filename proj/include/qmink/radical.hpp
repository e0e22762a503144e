#ifndef QMINK_RADICAL_HPP
#define QMINK_RADICAL_HPP

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace qmink {

/// Exact value of a finite long double as a rational.
inline mpq_class exact_rational(long double v) {
  if (!std::isfinite(v)) {
    throw std::domain_error("non-finite value has no exact rational");
  }
  if (v == 0.0L) {
    return 0;
  }
  int e = 0;
  long double m = std::frexp(v, &e);  // v = m * 2^e, 0.5 <= |m| < 1
  bool neg = m < 0;
  long double scaled = std::ldexp(neg ? -m : m, 64);
  auto hi = static_cast<std::uint64_t>(std::ldexp(scaled, -32));
  long double lo_part = scaled - std::ldexp(static_cast<long double>(hi), 32);
  auto lo = static_cast<std::uint64_t>(lo_part);
  mpz_class num = mpz_class(static_cast<unsigned long>(hi));
  num <<= 32;
  num += mpz_class(static_cast<unsigned long>(lo));
  mpq_class out(num);
  int shift = e - 64;
  if (shift >= 0) {
    mpq_mul_2exp(out.get_mpq_t(), out.get_mpq_t(),
                 static_cast<mp_bitcnt_t>(shift));
  } else {
    mpq_div_2exp(out.get_mpq_t(), out.get_mpq_t(),
                 static_cast<mp_bitcnt_t>(-shift));
  }
  out.canonicalize();
  return neg ? mpq_class(-out) : out;
}

inline bool is_rational_square(const mpq_class& r) {
  return sgn(r) >= 0 && mpz_perfect_square_p(r.get_num_mpz_t()) != 0 &&
         mpz_perfect_square_p(r.get_den_mpz_t()) != 0;
}

inline mpq_class rational_sqrt(const mpq_class& r) {
  mpz_class n;
  mpz_class d;
  mpz_sqrt(n.get_mpz_t(), r.get_num_mpz_t());
  mpz_sqrt(d.get_mpz_t(), r.get_den_mpz_t());
  mpq_class out(n, d);
  out.canonicalize();
  return out;
}

/// Element sum_k c_k sqrt(r_k) of the field generated over Q by square
/// roots of positive rationals. Radicands are kept pairwise non-square in
/// ratio, so the representation is unique and zero testing is exact.
class Radical {
 public:
  Radical() = default;
  Radical(mpq_class c) { add(1, std::move(c)); }  // NOLINT
  Radical(long c) : Radical(mpq_class(c)) {}     // NOLINT

  bool is_zero() const { return terms_.empty(); }
  std::optional<mpq_class> as_rational() const {
    if (terms_.empty()) {
      return mpq_class(0);
    }
    if (terms_.size() == 1 && terms_.front().first == 1) {
      return terms_.front().second;
    }
    return std::nullopt;
  }

  /// sqrt of a nonnegative rational.
  static Radical sqrt_of(const mpq_class& r) {
    if (sgn(r) < 0) {
      throw std::domain_error("square root of a negative rational");
    }
    Radical out;
    out.add(r, 1);
    return out;
  }

  Radical operator-() const {
    Radical out = *this;
    for (auto& t : out.terms_) {
      t.second = -t.second;
    }
    return out;
  }
  Radical& operator+=(const Radical& o) {
    for (const auto& [r, c] : o.terms_) {
      add(r, c);
    }
    return *this;
  }
  Radical& operator-=(const Radical& o) { return *this += -o; }
  friend Radical operator+(Radical a, const Radical& b) { return a += b; }
  friend Radical operator-(Radical a, const Radical& b) { return a -= b; }
  friend Radical operator*(const Radical& a, const Radical& b) {
    Radical out;
    for (const auto& [ra, ca] : a.terms_) {
      for (const auto& [rb, cb] : b.terms_) {
        out.add(ra * rb, ca * cb);
      }
    }
    return out;
  }

  /// Inverse of a single-term element; nullopt otherwise.
  std::optional<Radical> inverse() const {
    if (terms_.size() != 1) {
      return std::nullopt;
    }
    const auto& [r, c] = terms_.front();
    Radical out;
    out.add(r, mpq_class(1) / (c * r));
    return out;
  }

  /// sqrt of a nonnegative rational element; nullopt when not rational.
  std::optional<Radical> sqrt() const {
    auto q = as_rational();
    if (!q || sgn(*q) < 0) {
      return std::nullopt;
    }
    return sqrt_of(*q);
  }

  long double to_long_double() const {
    long double sum = 0;
    for (const auto& [r, c] : terms_) {
      sum += static_cast<long double>(c.get_d()) *
             std::sqrt(static_cast<long double>(r.get_d()));
    }
    return sum;
  }

  /// Upper bound on |value| accurate to long double rounding; 0 iff zero.
  long double magnitude() const { return std::fabs(to_long_double()); }

 private:
  void add(mpq_class r, mpq_class c) {
    if (sgn(c) == 0 || sgn(r) == 0) {
      return;
    }
    if (is_rational_square(r)) {
      c *= rational_sqrt(r);
      r = 1;
    }
    for (std::size_t k = 0; k < terms_.size(); ++k) {
      mpq_class ratio = r / terms_[k].first;
      if (is_rational_square(ratio)) {
        terms_[k].second += c * rational_sqrt(ratio);
        if (sgn(terms_[k].second) == 0) {
          terms_.erase(terms_.begin() + static_cast<std::ptrdiff_t>(k));
        }
        return;
      }
    }
    terms_.emplace_back(std::move(r), std::move(c));
  }

  std::vector<std::pair<mpq_class, mpq_class>> terms_;  // radicand, coeff
};

}  // namespace qmink

#endif  // QMINK_RADICAL_HPP
