#ifndef QMINK_MULTIPLIER_HPP
#define QMINK_MULTIPLIER_HPP

#include <cmath>
#include <complex>
#include <cstdio>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qmink/radical.hpp"

namespace qmink {

using cld = std::complex<long double>;

/// Sample point of the (x, y) plane.
struct Point {
  long double x = 0;
  long double y = 0;
};

/// Closed-form function of (x, y): constants, e^{ax+by}, +, *, /, and
/// square roots of positive subexpressions. Immutable and shareable.
class MultiplierExpr {
 public:
  enum class Kind { constant, exponential, add, mul, div, sqrt };

  MultiplierExpr() : MultiplierExpr(constant(0)) {}

  static MultiplierExpr constant(cld c) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::constant;
    n->c = c;
    return MultiplierExpr(std::move(n));
  }
  static MultiplierExpr constant(long double c) { return constant(cld(c)); }

  /// c * e^{a x + b y}.
  static MultiplierExpr exponential(cld a, cld b, cld c = 1) {
    if (c == cld(0)) {
      return constant(0);
    }
    if (a == cld(0) && b == cld(0)) {
      return constant(c);
    }
    auto n = std::make_shared<Node>();
    n->kind = Kind::exponential;
    n->a = a;
    n->b = b;
    n->c = c;
    return MultiplierExpr(std::move(n));
  }

  Kind kind() const { return node_->kind; }
  bool is_constant() const { return node_->kind == Kind::constant; }
  bool is_zero() const { return is_constant() && node_->c == cld(0); }
  bool is_one() const { return is_constant() && node_->c == cld(1); }

  friend MultiplierExpr operator+(const MultiplierExpr& f,
                                  const MultiplierExpr& g) {
    if (f.is_zero()) {
      return g;
    }
    if (g.is_zero()) {
      return f;
    }
    if (f.is_constant() && g.is_constant()) {
      return constant(f.node_->c + g.node_->c);
    }
    return binary(Kind::add, f, g);
  }
  friend MultiplierExpr operator-(const MultiplierExpr& f) {
    return constant(-1) * f;
  }
  friend MultiplierExpr operator-(const MultiplierExpr& f,
                                  const MultiplierExpr& g) {
    return f + (-g);
  }
  friend MultiplierExpr operator*(const MultiplierExpr& f,
                                  const MultiplierExpr& g) {
    if (f.is_zero() || g.is_zero()) {
      return constant(0);
    }
    if (f.is_one()) {
      return g;
    }
    if (g.is_one()) {
      return f;
    }
    const Node& a = *f.node_;
    const Node& b = *g.node_;
    if (a.kind == Kind::constant && b.kind == Kind::constant) {
      return constant(a.c * b.c);
    }
    if (a.kind == Kind::constant && b.kind == Kind::exponential) {
      return exponential(b.a, b.b, a.c * b.c);
    }
    if (a.kind == Kind::exponential && b.kind == Kind::constant) {
      return exponential(a.a, a.b, a.c * b.c);
    }
    if (a.kind == Kind::exponential && b.kind == Kind::exponential) {
      return exponential(a.a + b.a, a.b + b.b, a.c * b.c);
    }
    return binary(Kind::mul, f, g);
  }
  friend MultiplierExpr operator/(const MultiplierExpr& f,
                                  const MultiplierExpr& g) {
    if (g.is_zero()) {
      throw std::domain_error("division by the zero multiplier");
    }
    if (g.is_one()) {
      return f;
    }
    if (f.is_zero()) {
      return f;
    }
    const Node& b = *g.node_;
    if (b.kind == Kind::constant && f.is_constant()) {
      return constant(f.node_->c / b.c);
    }
    if (b.kind == Kind::exponential &&
        (f.is_constant() || f.kind() == Kind::exponential)) {
      return f * exponential(-b.a, -b.b, cld(1) / b.c);
    }
    return binary(Kind::div, f, g);
  }

  /// sqrt(f); f must be positive wherever it is evaluated.
  static MultiplierExpr sqrt(const MultiplierExpr& f) {
    if (f.is_constant()) {
      const cld c = f.node_->c;
      if (c.imag() != 0 || c.real() < 0) {
        throw std::domain_error("square root of a non-positive constant");
      }
      if (c.real() == 1 || c.real() == 0) {
        return f;
      }
    }
    auto n = std::make_shared<Node>();
    n->kind = Kind::sqrt;
    n->args = {f.node_};
    return MultiplierExpr(std::move(n));
  }

  /// (f o tau_v)(x, y) = f(x - dx, y - dy).
  MultiplierExpr shifted(long double dx, long double dy) const {
    if (dx == 0 && dy == 0) {
      return *this;
    }
    return MultiplierExpr(shift_node(node_, dx, dy));
  }

  MultiplierExpr conj() const { return MultiplierExpr(conj_node(node_)); }

  cld eval(const Point& p) const { return eval_node(*node_, p); }

  /// Exact value in the radical field at the lifted point, or nullopt when
  /// the expression leaves it (complex or non-integral data, non-rational
  /// square roots, division by multi-term radicals).
  std::optional<Radical> eval_exact(const Point& p) const {
    Lift lift{exact_rational(std::exp(p.x)), exact_rational(std::exp(p.y))};
    return exact_node(*node_, lift);
  }

  std::string to_string() const { return render(*node_); }

 private:
  struct Node {
    Kind kind = Kind::constant;
    cld c = 0;
    cld a = 0;
    cld b = 0;
    std::vector<std::shared_ptr<const Node>> args;
  };
  using NodePtr = std::shared_ptr<const Node>;

  explicit MultiplierExpr(NodePtr n) : node_(std::move(n)) {}

  static MultiplierExpr wrap(NodePtr n) { return MultiplierExpr(std::move(n)); }

  static MultiplierExpr binary(Kind k, const MultiplierExpr& f,
                               const MultiplierExpr& g) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->args = {f.node_, g.node_};
    return MultiplierExpr(std::move(n));
  }

  static MultiplierExpr rebuild(const Node& n, std::vector<MultiplierExpr> a) {
    switch (n.kind) {
      case Kind::add:
        return a[0] + a[1];
      case Kind::mul:
        return a[0] * a[1];
      case Kind::div:
        return a[0] / a[1];
      case Kind::sqrt:
        return sqrt(a[0]);
      default:
        throw std::logic_error("rebuild of a leaf");
    }
  }

  static NodePtr shift_node(const NodePtr& n, long double dx, long double dy) {
    switch (n->kind) {
      case Kind::constant:
        return n;
      case Kind::exponential: {
        cld factor = std::exp(-n->a * dx - n->b * dy);
        return exponential(n->a, n->b, n->c * factor).node_;
      }
      default: {
        std::vector<MultiplierExpr> a;
        for (const auto& arg : n->args) {
          a.push_back(wrap(shift_node(arg, dx, dy)));
        }
        return rebuild(*n, std::move(a)).node_;
      }
    }
  }

  static NodePtr conj_node(const NodePtr& n) {
    switch (n->kind) {
      case Kind::constant:
        return constant(std::conj(n->c)).node_;
      case Kind::exponential:
        return exponential(std::conj(n->a), std::conj(n->b), std::conj(n->c))
            .node_;
      default: {
        std::vector<MultiplierExpr> a;
        for (const auto& arg : n->args) {
          a.push_back(wrap(conj_node(arg)));
        }
        return rebuild(*n, std::move(a)).node_;
      }
    }
  }

  static cld eval_node(const Node& n, const Point& p) {
    switch (n.kind) {
      case Kind::constant:
        return n.c;
      case Kind::exponential:
        return n.c * std::exp(n.a * p.x + n.b * p.y);
      case Kind::add:
        return eval_node(*n.args[0], p) + eval_node(*n.args[1], p);
      case Kind::mul:
        return eval_node(*n.args[0], p) * eval_node(*n.args[1], p);
      case Kind::div:
        return eval_node(*n.args[0], p) / eval_node(*n.args[1], p);
      case Kind::sqrt: {
        cld v = eval_node(*n.args[0], p);
        long double tol = 1e-15L * (1 + std::abs(v));
        if (std::fabs(v.imag()) > tol || v.real() < -tol) {
          throw std::domain_error("square root argument is not positive");
        }
        return std::sqrt(std::max(v.real(), 0.0L));
      }
    }
    throw std::logic_error("unknown multiplier node");
  }

  struct Lift {
    mpq_class u;
    mpq_class v;
  };

  static std::optional<mpq_class> real_rational(cld c) {
    if (c.imag() != 0 || !std::isfinite(c.real())) {
      return std::nullopt;
    }
    return exact_rational(c.real());
  }

  static std::optional<long> small_integer(cld c) {
    if (c.imag() != 0 || c.real() != std::round(c.real()) ||
        std::fabs(c.real()) > 64) {
      return std::nullopt;
    }
    return static_cast<long>(c.real());
  }

  static mpq_class power(const mpq_class& base, long k) {
    mpq_class out = 1;
    mpq_class b = k < 0 ? mpq_class(1 / base) : base;
    for (long i = 0; i < (k < 0 ? -k : k); ++i) {
      out *= b;
    }
    return out;
  }

  static std::optional<Radical> exact_node(const Node& n, const Lift& l) {
    switch (n.kind) {
      case Kind::constant: {
        auto c = real_rational(n.c);
        if (!c) {
          return std::nullopt;
        }
        return Radical(*c);
      }
      case Kind::exponential: {
        auto c = real_rational(n.c);
        auto a = small_integer(n.a);
        auto b = small_integer(n.b);
        if (!c || !a || !b) {
          return std::nullopt;
        }
        return Radical(mpq_class(*c * power(l.u, *a) * power(l.v, *b)));
      }
      case Kind::add:
      case Kind::mul:
      case Kind::div: {
        auto x = exact_node(*n.args[0], l);
        if (!x) {
          return std::nullopt;
        }
        auto y = exact_node(*n.args[1], l);
        if (!y) {
          return std::nullopt;
        }
        if (n.kind == Kind::add) {
          return *x + *y;
        }
        if (n.kind == Kind::mul) {
          return *x * *y;
        }
        auto inv = y->inverse();
        if (!inv) {
          return std::nullopt;
        }
        return *x * *inv;
      }
      case Kind::sqrt: {
        auto x = exact_node(*n.args[0], l);
        if (!x) {
          return std::nullopt;
        }
        return x->sqrt();
      }
    }
    return std::nullopt;
  }

  static std::string num(cld c) {
    auto fmt = [](long double v) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%.6Lg", v);
      return std::string(buf);
    };
    if (c.imag() == 0) {
      return fmt(c.real());
    }
    return "(" + fmt(c.real()) + (c.imag() < 0 ? "-" : "+") +
           fmt(std::fabs(c.imag())) + "i)";
  }

  static std::string render(const Node& n) {
    switch (n.kind) {
      case Kind::constant:
        return num(n.c);
      case Kind::exponential: {
        std::string e = "exp(" + num(n.a) + "x+" + num(n.b) + "y)";
        return n.c == cld(1) ? e : num(n.c) + "*" + e;
      }
      case Kind::add:
        return "(" + render(*n.args[0]) + " + " + render(*n.args[1]) + ")";
      case Kind::mul:
        return render(*n.args[0]) + "*" + render(*n.args[1]);
      case Kind::div:
        return render(*n.args[0]) + "/(" + render(*n.args[1]) + ")";
      case Kind::sqrt:
        return "sqrt(" + render(*n.args[0]) + ")";
    }
    return "?";
  }

  NodePtr node_;
};

}  // namespace qmink

#endif  // QMINK_MULTIPLIER_HPP
