#ifndef QMINK_OPLAB_HPP
#define QMINK_OPLAB_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qmink/multiplier.hpp"
#include "qmink/random.hpp"

// Operators on functions of (x, y) built from multiplications and
// translations. A pair R, S with RS = p^2 SR and RS* = q^2 S*R has no
// finite-dimensional normal realization when p != 1 (the scaling spectra
// are unbounded), so the pair is realized on functions of the plane:
//   R = M_{e^x} T_{(0,c)},  S = M_{e^y} T_{(a,0)},
//   a = ln(p/q),  c = -ln(pq).
// R*R and S*S are multiplications, so every expression needed below stays
// a finite sum of multiplier-translation atoms with closed-form multipliers
// and operator identities reduce to pointwise identities of multipliers.

namespace qmink {

struct Shift {
  long double dx = 0;
  long double dy = 0;

  bool is_zero() const { return dx == 0 && dy == 0; }
  Shift operator+(const Shift& o) const { return {dx + o.dx, dy + o.dy}; }
  Shift operator-() const { return {-dx, -dy}; }
};

/// Shifts are sums of a few logarithms; equal ones may differ by rounding.
inline bool same_shift(const Shift& u, const Shift& v) {
  auto close = [](long double a, long double b) {
    return std::fabs(a - b) <=
           1e-12L * std::max({1.0L, std::fabs(a), std::fabs(b)});
  };
  return close(u.dx, v.dx) && close(u.dy, v.dy);
}

/// Finite sum of atoms M_f T_v, (M_f T_v phi)(x,y) = f(x,y) phi(x-dx, y-dy).
class ShiftMultiplierOperator {
 public:
  struct Atom {
    Shift shift;
    MultiplierExpr f;
  };

  ShiftMultiplierOperator() = default;

  static ShiftMultiplierOperator identity() {
    return atom(MultiplierExpr::constant(1), {});
  }
  static ShiftMultiplierOperator multiplication(MultiplierExpr f) {
    return atom(std::move(f), {});
  }
  static ShiftMultiplierOperator atom(MultiplierExpr f, Shift v) {
    ShiftMultiplierOperator op;
    op.add_atom(v, std::move(f));
    return op;
  }

  const std::vector<Atom>& atoms() const { return atoms_; }
  bool is_zero() const { return atoms_.empty(); }

  void add_atom(Shift v, MultiplierExpr f) {
    if (f.is_zero()) {
      return;
    }
    for (auto& a : atoms_) {
      if (same_shift(a.shift, v)) {
        a.f = a.f + f;
        return;
      }
    }
    atoms_.push_back({v, std::move(f)});
  }

  friend ShiftMultiplierOperator operator+(ShiftMultiplierOperator a,
                                           const ShiftMultiplierOperator& b) {
    for (const auto& at : b.atoms_) {
      a.add_atom(at.shift, at.f);
    }
    return a;
  }
  friend ShiftMultiplierOperator operator-(const ShiftMultiplierOperator& a,
                                           const ShiftMultiplierOperator& b) {
    return a + scale(b, -1);
  }

  friend ShiftMultiplierOperator scale(const ShiftMultiplierOperator& a,
                                       cld c) {
    ShiftMultiplierOperator out;
    for (const auto& at : a.atoms_) {
      out.add_atom(at.shift, MultiplierExpr::constant(c) * at.f);
    }
    return out;
  }

  /// (M_f T_v)(M_g T_w) = M_{f * g(. - v)} T_{v+w}.
  friend ShiftMultiplierOperator compose(const ShiftMultiplierOperator& a,
                                         const ShiftMultiplierOperator& b) {
    ShiftMultiplierOperator out;
    for (const auto& x : a.atoms_) {
      for (const auto& y : b.atoms_) {
        out.add_atom(x.shift + y.shift,
                     x.f * y.f.shifted(x.shift.dx, x.shift.dy));
      }
    }
    return out;
  }

  /// (M_f T_v)* = M_{conj f(. + v)} T_{-v}.
  friend ShiftMultiplierOperator adjoint(const ShiftMultiplierOperator& a) {
    ShiftMultiplierOperator out;
    for (const auto& x : a.atoms_) {
      out.add_atom(-x.shift, x.f.conj().shifted(-x.shift.dx, -x.shift.dy));
    }
    return out;
  }

  /// The multiplier of an operator that is a single multiplication.
  MultiplierExpr diagonal() const {
    if (atoms_.empty()) {
      return MultiplierExpr::constant(0);
    }
    if (atoms_.size() != 1 || !same_shift(atoms_.front().shift, {})) {
      throw std::domain_error("operator is not a multiplication");
    }
    return atoms_.front().f;
  }

  cld apply(const std::function<cld(long double, long double)>& phi,
            const Point& p) const {
    cld sum = 0;
    for (const auto& at : atoms_) {
      sum += at.f.eval(p) * phi(p.x - at.shift.dx, p.y - at.shift.dy);
    }
    return sum;
  }

 private:
  std::vector<Atom> atoms_;
};

using Op = ShiftMultiplierOperator;

/// z_s(A) = sA (1 + s^2 A*A)^{-1/2}; A*A must be a multiplication.
inline Op z_transform(const Op& a, long double s = 1) {
  if (!(s > 0) || !std::isfinite(s)) {
    throw std::domain_error("z-transform scale must be positive");
  }
  if (a.is_zero()) {
    return a;
  }
  MultiplierExpr m;
  try {
    m = compose(adjoint(a), a).diagonal();
  } catch (const std::domain_error&) {
    throw std::domain_error("z-transform needs a diagonal modulus A*A");
  }
  MultiplierExpr h =
      MultiplierExpr::constant(1) /
      MultiplierExpr::sqrt(MultiplierExpr::constant(1) +
                           MultiplierExpr::constant(s * s) * m);
  return compose(scale(a, s), Op::multiplication(h));
}

/// Square root of a positive multiplication operator.
inline Op diag_sqrt(const Op& a) {
  return Op::multiplication(MultiplierExpr::sqrt(a.diagonal()));
}

/// (1 - A*A)^{1/2} for a contraction A with diagonal modulus.
inline Op defect(const Op& a) {
  return diag_sqrt(Op::identity() - compose(adjoint(a), a));
}

// ---- comparison ---------------------------------------------------------------

inline std::vector<Point> sample_box(std::size_t n, std::uint64_t seed,
                                     long double lo = -4, long double hi = 4) {
  Sampler rng(seed);
  std::vector<Point> pts;
  pts.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    long double x = rng.uniform(static_cast<double>(lo), static_cast<double>(hi));
    long double y = rng.uniform(static_cast<double>(lo), static_cast<double>(hi));
    pts.push_back({x, y});
  }
  return pts;
}

struct Comparison {
  double residual = 0;  // max |f_A - f_B| over buckets and points
  bool exact = true;    // every gap was certified zero in exact arithmetic
  double magnitude = 0; // max |f_A|, |f_B| over the same points

  double relative() const { return residual / std::max(1.0, magnitude); }
};

/// |f - g| at p, with a flag set when the gap is certified zero in the
/// radical field. Otherwise the long double difference is returned.
inline std::pair<long double, bool> pointwise_gap(const MultiplierExpr& f,
                                                  const MultiplierExpr& g,
                                                  const Point& p,
                                                  bool try_exact) {
  long double approx = std::abs(f.eval(p) - g.eval(p));
  if (!try_exact) {
    return {approx, false};
  }
  auto ef = f.eval_exact(p);
  if (!ef) {
    return {approx, false};
  }
  auto eg = g.eval_exact(p);
  if (!eg) {
    return {approx, false};
  }
  if ((*ef - *eg).is_zero()) {
    return {0.0L, true};
  }
  return {approx, false};
}

inline Comparison op_equal(const Op& a, const Op& b,
                           const std::vector<Point>& pts,
                           bool try_exact = true) {
  Comparison out;
  long double worst = 0;
  long double size = 0;
  auto zero = MultiplierExpr::constant(0);
  std::vector<bool> matched(b.atoms().size(), false);
  auto visit = [&](const MultiplierExpr& f, const MultiplierExpr& g) {
    for (const auto& p : pts) {
      auto [gap, exact] = pointwise_gap(f, g, p, try_exact);
      worst = std::max(worst, gap);
      size = std::max({size, std::abs(f.eval(p)), std::abs(g.eval(p))});
      out.exact = out.exact && exact;
    }
  };
  for (const auto& x : a.atoms()) {
    const MultiplierExpr* other = &zero;
    for (std::size_t k = 0; k < b.atoms().size(); ++k) {
      if (same_shift(x.shift, b.atoms()[k].shift)) {
        other = &b.atoms()[k].f;
        matched[k] = true;
        break;
      }
    }
    visit(x.f, *other);
  }
  for (std::size_t k = 0; k < b.atoms().size(); ++k) {
    if (!matched[k]) {
      visit(zero, b.atoms()[k].f);
    }
  }
  out.residual = static_cast<double>(worst);
  out.magnitude = static_cast<double>(size);
  return out;
}

inline Comparison op_equal(const Op& a, const Op& b, std::size_t samples,
                           std::uint64_t seed, bool try_exact = true) {
  return op_equal(a, b, sample_box(samples, seed), try_exact);
}

// ---- the (p^2, q^2)-commuting model ----------------------------------------------

/// How --p/--q are read: plain means the pair is (p^2, q^2)-commuting;
/// squared means the given numbers are the labels p^2 and q^2 themselves.
enum class PQConvention { plain, squared };

struct PQModel {
  long double p = 1;
  long double q = 1;
  long double a = 0;  // ln(p/q)
  long double c = 0;  // -ln(pq)
  Op R;
  Op S;
};

inline PQModel build_pq_pair(long double p, long double q,
                             PQConvention conv = PQConvention::plain) {
  if (!(p > 0) || !(q > 0) || !std::isfinite(p) || !std::isfinite(q)) {
    throw std::domain_error("p and q must be positive and finite");
  }
  if (conv == PQConvention::squared) {
    p = std::sqrt(p);
    q = std::sqrt(q);
  }
  PQModel m;
  m.p = p;
  m.q = q;
  m.a = std::log(p / q);
  m.c = -std::log(p * q);
  m.R = Op::atom(MultiplierExpr::exponential(1, 0), {0, m.c});
  m.S = Op::atom(MultiplierExpr::exponential(0, 1), {m.a, 0});
  return m;
}

struct Identity {
  std::string name;
  double residual = 0;
  bool exact = false;
  double tolerance = 0;
  double magnitude = 0;

  bool pass() const { return residual < tolerance || (exact && residual == 0); }
  double relative() const { return residual / std::max(1.0, magnitude); }
};

struct PQReport {
  std::string check;
  long double p = 1;
  long double q = 1;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::vector<Identity> identities;

  bool pass() const {
    return std::all_of(identities.begin(), identities.end(),
                       [](const Identity& i) { return i.pass(); });
  }
};

struct SampleOptions {
  std::size_t samples = 1000;
  std::uint64_t seed = 0;
  double tol = 1e-12;
  bool exact = true;
};

namespace detail {

inline Identity compare(std::string name, const Op& a, const Op& b,
                        const std::vector<Point>& pts,
                        const SampleOptions& opt) {
  Comparison c = op_equal(a, b, pts, opt.exact);
  return {std::move(name), c.residual, c.exact, opt.tol, c.magnitude};
}

inline PQReport make_report(std::string check, const PQModel& m,
                            const SampleOptions& opt) {
  PQReport r;
  r.check = std::move(check);
  r.p = m.p;
  r.q = m.q;
  r.samples = opt.samples;
  r.seed = opt.seed;
  return r;
}

}  // namespace detail

/// 1. z(R)z(S*) = z_{pq}(S*) z_{q/p}(R);  2. z_{q/p}(R)z(S) = z_{pq}(S)z(R).
inline PQReport check_def_mu2(const PQModel& m, const SampleOptions& opt) {
  auto pts = sample_box(opt.samples, opt.seed);
  auto r = detail::make_report("def_mu2", m, opt);
  const Op Sstar = adjoint(m.S);
  const long double pq = m.p * m.q;
  const long double qp = m.q / m.p;
  r.identities.push_back(detail::compare(
      "z(R)z(S*) = z_pq(S*)z_q/p(R)", compose(z_transform(m.R), z_transform(Sstar)),
      compose(z_transform(Sstar, pq), z_transform(m.R, qp)), pts, opt));
  r.identities.push_back(detail::compare(
      "z_q/p(R)z(S) = z_pq(S)z(R)",
      compose(z_transform(m.R, qp), z_transform(m.S)),
      compose(z_transform(m.S, pq), z_transform(m.R)), pts, opt));
  return r;
}

using QMatrix = std::array<std::array<Op, 2>, 2>;

/// Q = [[ (1-z_{p/q}(R)*z_{p/q}(R))^{1/2}(1-z(S)*z(S))^{1/2},  -z(S)*z(R)* ],
///      [ z(R)z(S),  (1-z(R)*z(R))^{1/2}(1-z_{pq}(S)*z_{pq}(S))^{1/2} ]].
inline QMatrix build_Q(const PQModel& m) {
  const Op zR = z_transform(m.R);
  const Op zS = z_transform(m.S);
  const Op zR_pq = z_transform(m.R, m.p / m.q);
  const Op zS_pq = z_transform(m.S, m.p * m.q);
  QMatrix Q;
  Q[0][0] = compose(defect(zR_pq), defect(zS));
  Q[0][1] = scale(compose(adjoint(zS), adjoint(zR)), -1);
  Q[1][0] = compose(zR, zS);
  Q[1][1] = compose(defect(zR), defect(zS_pq));
  return Q;
}

inline QMatrix times_adjoint(const QMatrix& Q) {
  QMatrix out;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      out[i][j] = compose(Q[i][0], adjoint(Q[j][0])) +
                  compose(Q[i][1], adjoint(Q[j][1]));
    }
  }
  return out;
}

/// (1 + k^2|R|^2 l^2|S|^2) / ((1 + k^2|R|^2)(1 + l^2|S|^2)) with
/// |R|^2 = e^{2x}, |S|^2 = e^{2y}.
inline Op diagonal_closed_form(long double k, long double l) {
  using E = MultiplierExpr;
  const E one = E::constant(1);
  const E r2 = E::exponential(2, 0, k * k);
  const E s2 = E::exponential(0, 2, l * l);
  return Op::multiplication((one + r2 * s2) / ((one + r2) * (one + s2)));
}

/// Off-diagonal entries of QQ* and the closed form
/// (1+|R|^2|S|^2)/((1+|R|^2)(1+|S|^2)) for both diagonal corners.
inline PQReport check_QQstar(const PQModel& m, const SampleOptions& opt) {
  auto pts = sample_box(opt.samples, opt.seed);
  auto r = detail::make_report("QQstar", m, opt);
  const QMatrix P = times_adjoint(build_Q(m));
  const Op zero;
  const Op stated = diagonal_closed_form(1, 1);
  r.identities.push_back(detail::compare("(QQ*)_12 = 0", P[0][1], zero, pts, opt));
  r.identities.push_back(detail::compare("(QQ*)_21 = 0", P[1][0], zero, pts, opt));
  r.identities.push_back(detail::compare(
      "(QQ*)_11 = (1+|R|^2|S|^2)/((1+|R|^2)(1+|S|^2))", P[0][0], stated, pts,
      opt));
  r.identities.push_back(detail::compare(
      "(QQ*)_22 = (1+|R|^2|S|^2)/((1+|R|^2)(1+|S|^2))", P[1][1], stated, pts,
      opt));
  return r;
}

/// The diagonal corners of QQ* against the rescaled closed forms.
inline PQReport check_QQstar_rescaled(const PQModel& m,
                                      const SampleOptions& opt) {
  auto pts = sample_box(opt.samples, opt.seed);
  auto r = detail::make_report("QQstar_rescaled", m, opt);
  const QMatrix P = times_adjoint(build_Q(m));
  r.identities.push_back(detail::compare(
      "(QQ*)_11 = (1+(p/q)^2|R|^2|S|^2)/((1+(p/q)^2|R|^2)(1+|S|^2))", P[0][0],
      diagonal_closed_form(m.p / m.q, 1), pts, opt));
  r.identities.push_back(detail::compare(
      "(QQ*)_22 = (1+(pq)^2|R|^2|S|^2)/((1+|R|^2)(1+(pq)^2|S|^2))", P[1][1],
      diagonal_closed_form(1, m.p * m.q), pts, opt));
  return r;
}

inline long double gaussian_bump(long double x, long double y) {
  return std::exp(-(x * x + y * y) / 2);
}

/// RS = p^2 SR, RS* = q^2 S*R, the two core identities
///   RS (1-z(R)*z(R))^{1/2}(1-z(S)*z(S))^{1/2} = (p/q) z_{q/p}(R) z(S),
///   SR (1-z(R)*z(R))^{1/2}(1-z(S)*z(S))^{1/2} = (1/pq) z_{pq}(S) z(R),
/// and (RS - p^2 SR) applied to a Gaussian bump.
inline PQReport check_twrs(const PQModel& m, const SampleOptions& opt) {
  auto pts = sample_box(opt.samples, opt.seed);
  auto r = detail::make_report("twrs", m, opt);
  const long double p2 = m.p * m.p;
  const long double q2 = m.q * m.q;
  const Op RS = compose(m.R, m.S);
  const Op SR = compose(m.S, m.R);
  const Op Sstar = adjoint(m.S);
  r.identities.push_back(
      detail::compare("RS = p^2 SR", RS, scale(SR, p2), pts, opt));
  r.identities.push_back(detail::compare(
      "RS* = q^2 S*R", compose(m.R, Sstar), scale(compose(Sstar, m.R), q2),
      pts, opt));
  const Op D = compose(defect(z_transform(m.R)), defect(z_transform(m.S)));
  r.identities.push_back(detail::compare(
      "RS D = (p/q) z_q/p(R) z(S)", compose(RS, D),
      scale(compose(z_transform(m.R, m.q / m.p), z_transform(m.S)), m.p / m.q),
      pts, opt));
  r.identities.push_back(detail::compare(
      "SR D = (1/pq) z_pq(S) z(R)", compose(SR, D),
      scale(compose(z_transform(m.S, m.p * m.q), z_transform(m.R)),
            1 / (m.p * m.q)),
      pts, opt));
  const Op diff = RS - scale(SR, p2);
  long double worst = 0;
  for (const auto& pt : pts) {
    worst = std::max(worst, std::abs(diff.apply(
                                [](long double x, long double y) {
                                  return cld(gaussian_bump(x, y));
                                },
                                pt)));
  }
  r.identities.push_back({"(RS - p^2 SR) bump", static_cast<double>(worst),
                          false, opt.tol});
  return r;
}

/// A*A = AA* for R, S, z(R), z(S).
inline PQReport check_normality(const PQModel& m, const SampleOptions& opt) {
  auto pts = sample_box(opt.samples, opt.seed);
  auto r = detail::make_report("normality", m, opt);
  const std::pair<const char*, Op> ops[] = {{"R", m.R},
                                            {"S", m.S},
                                            {"z(R)", z_transform(m.R)},
                                            {"z(S)", z_transform(m.S)}};
  for (const auto& [name, A] : ops) {
    r.identities.push_back(detail::compare(
        std::string(name) + "*" + name + " = " + name + name + "*",
        compose(adjoint(A), A), compose(A, adjoint(A)), pts, opt));
  }
  return r;
}

/// Largest |multiplier| of z-transforms over the sample points; must be < 1.
inline double max_z_modulus(const PQModel& m, const std::vector<Point>& pts) {
  const Op zs[] = {z_transform(m.R), z_transform(m.S),
                   z_transform(m.R, m.q / m.p), z_transform(m.S, m.p * m.q),
                   z_transform(m.R, m.p / m.q)};
  long double worst = 0;
  for (const auto& z : zs) {
    for (const auto& at : z.atoms()) {
      for (const auto& p : pts) {
        worst = std::max(worst, std::abs(at.f.eval(p)));
      }
    }
  }
  return static_cast<double>(worst);
}

}  // namespace qmink

#endif  // QMINK_OPLAB_HPP
