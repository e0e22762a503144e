#ifndef QMINK_SCALAR_HPP
#define QMINK_SCALAR_HPP

#include <gmpxx.h>

#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>

namespace qmink {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Element of Q(i) with arbitrary-precision rational parts.
class GaussianRational {
 public:
  GaussianRational() = default;
  GaussianRational(long v) : re_(v) {}  // NOLINT(runtime/explicit)
  GaussianRational(mpq_class re, mpq_class im = 0)
      : re_(std::move(re)), im_(std::move(im)) {
    re_.canonicalize();
    im_.canonicalize();
  }

  static GaussianRational i() { return {0, 1}; }

  const mpq_class& re() const { return re_; }
  const mpq_class& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }
  bool is_one() const { return re_ == 1 && sgn(im_) == 0; }

  GaussianRational conj() const { return {re_, -im_}; }
  mpq_class norm() const { return re_ * re_ + im_ * im_; }

  GaussianRational inverse() const {
    if (is_zero()) {
      throw Error("division by zero in Gaussian rational arithmetic");
    }
    mpq_class n = norm();
    return {re_ / n, -im_ / n};
  }

  GaussianRational operator-() const { return {-re_, -im_}; }

  GaussianRational& operator+=(const GaussianRational& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  GaussianRational& operator-=(const GaussianRational& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }
  GaussianRational& operator*=(const GaussianRational& o) {
    mpq_class r = re_ * o.re_ - im_ * o.im_;
    mpq_class m = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(m);
    return *this;
  }
  GaussianRational& operator/=(const GaussianRational& o) {
    return *this *= o.inverse();
  }

  friend GaussianRational operator+(GaussianRational a,
                                    const GaussianRational& b) {
    return a += b;
  }
  friend GaussianRational operator-(GaussianRational a,
                                    const GaussianRational& b) {
    return a -= b;
  }
  friend GaussianRational operator*(GaussianRational a,
                                    const GaussianRational& b) {
    return a *= b;
  }
  friend GaussianRational operator/(GaussianRational a,
                                    const GaussianRational& b) {
    return a /= b;
  }
  friend bool operator==(const GaussianRational& a,
                         const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  std::complex<double> to_complex() const {
    return {re_.get_d(), im_.get_d()};
  }

  /// "3/2", "-i", "1/2*i", "(1 + 2*i)".
  std::string to_string() const {
    if (is_real()) {
      return re_.get_str();
    }
    std::string im_part;
    if (im_ == 1) {
      im_part = "i";
    } else if (im_ == -1) {
      im_part = "-i";
    } else {
      im_part = im_.get_str() + "*i";
    }
    if (sgn(re_) == 0) {
      return im_part;
    }
    std::string out = "(" + re_.get_str();
    if (sgn(im_) < 0) {
      out += " - ";
      mpq_class a = -im_;
      out += (a == 1) ? std::string("i") : a.get_str() + "*i";
    } else {
      out += " + ";
      out += (im_ == 1) ? std::string("i") : im_.get_str() + "*i";
    }
    return out + ")";
  }

 private:
  mpq_class re_;
  mpq_class im_;
};

/// Laurent polynomial sum_k c_k q^k over Q(i), q = e^{2s} a formal positive
/// real unit. Stored sparse; zero coefficients are never kept.
class Scalar {
 public:
  using Terms = std::map<int, GaussianRational>;

  Scalar() = default;
  Scalar(long v) { add_term(0, GaussianRational(v)); }  // NOLINT
  Scalar(GaussianRational c) { add_term(0, std::move(c)); }  // NOLINT

  static Scalar q_power(int k, GaussianRational c = 1) {
    Scalar s;
    s.add_term(k, std::move(c));
    return s;
  }
  static Scalar i() { return Scalar(GaussianRational::i()); }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_one() const {
    return terms_.size() == 1 && terms_.begin()->first == 0 &&
           terms_.begin()->second.is_one();
  }
  /// Units of the ring are exactly the nonzero monomials c q^k.
  bool is_monomial() const { return terms_.size() == 1; }
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 0);
  }

  void add_term(int k, GaussianRational c) {
    if (c.is_zero()) {
      return;
    }
    auto [it, inserted] = terms_.try_emplace(k, std::move(c));
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) {
        terms_.erase(it);
      }
    }
  }

  GaussianRational coefficient(int k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? GaussianRational() : it->second;
  }

  Scalar inverse() const {
    if (!is_monomial()) {
      throw Error("scalar " + to_string() + " is not a unit");
    }
    const auto& [k, c] = *terms_.begin();
    return q_power(-k, c.inverse());
  }

  /// Coefficient-wise conjugation; q is real so exponents are fixed.
  Scalar star() const {
    Scalar out;
    for (const auto& [k, c] : terms_) {
      out.terms_.emplace(k, c.conj());
    }
    return out;
  }

  /// Specialization q = 1.
  GaussianRational at_q1() const {
    GaussianRational sum;
    for (const auto& [k, c] : terms_) {
      sum += c;
    }
    return sum;
  }

  /// Numeric value at q = e^{2s}. Throws std::overflow_error instead of
  /// returning inf when some q^k is not representable.
  std::complex<double> eval(double s) const {
    if (!std::isfinite(s)) {
      throw std::domain_error("deformation parameter must be finite");
    }
    std::complex<double> sum = 0;
    for (const auto& [k, c] : terms_) {
      double e = 2.0 * s * static_cast<double>(k);
      double v = std::exp(e);
      if (!std::isfinite(v) || v == 0.0) {
        throw std::overflow_error("q^" + std::to_string(k) + " at s = " +
                                  std::to_string(s) + " overflows");
      }
      sum += c.to_complex() * v;
    }
    return sum;
  }

  Scalar operator-() const {
    Scalar out;
    for (const auto& [k, c] : terms_) {
      out.terms_.emplace(k, -c);
    }
    return out;
  }
  Scalar& operator+=(const Scalar& o) {
    for (const auto& [k, c] : o.terms_) {
      add_term(k, c);
    }
    return *this;
  }
  Scalar& operator-=(const Scalar& o) {
    for (const auto& [k, c] : o.terms_) {
      add_term(k, -c);
    }
    return *this;
  }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    Scalar out;
    for (const auto& [ka, ca] : a.terms_) {
      for (const auto& [kb, cb] : b.terms_) {
        out.add_term(ka + kb, ca * cb);
      }
    }
    return out;
  }
  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.terms_ == b.terms_;
  }

  /// Text of a single monomial c q^k, e.g. "q^-4", "-2*q", "(1 + i)*q^2".
  static std::string monomial_string(int k, const GaussianRational& c) {
    if (k == 0) {
      return c.to_string();
    }
    std::string qpart = (k == 1) ? "q" : "q^" + std::to_string(k);
    if (c.is_one()) {
      return qpart;
    }
    if (c == GaussianRational(-1)) {
      return "-" + qpart;
    }
    return c.to_string() + "*" + qpart;
  }

  /// Terms in descending exponent order joined by " + " / " - ".
  std::string to_string() const {
    if (terms_.empty()) {
      return "0";
    }
    std::string out;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [k, c] = *it;
      bool negative = c.is_real() && sgn(c.re()) < 0;
      if (first) {
        out += monomial_string(k, c);
      } else if (negative) {
        out += " - " + monomial_string(k, -c);
      } else {
        out += " + " + monomial_string(k, c);
      }
      first = false;
    }
    return out;
  }

 private:
  Terms terms_;
};

inline std::ostream& operator<<(std::ostream& os, const Scalar& s) {
  return os << s.to_string();
}

}  // namespace qmink

#endif  // QMINK_SCALAR_HPP
