#ifndef QMINK_CROSSLAYER_HPP
#define QMINK_CROSSLAYER_HPP

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "qmink/dsl.hpp"
#include "qmink/oplab.hpp"

namespace qmink {

struct CrossLayerItem {
  std::string name;
  double s = 0;
  double symbolic = 0;  // commutation constant read off the presentation
  double model = 0;     // the same constant in the operator model
  double residual = 0;  // relative; constants and operator multipliers
  double tolerance = 1e-12;

  bool pass() const { return residual < tolerance; }
};

/// K with "lhs" = K "rhs_word" in normal form, where rhs_word is the
/// normal ordering of the swapped pair.
inline std::complex<double> swap_constant(const Presentation& pres,
                                          const std::string& normal,
                                          const std::string& swapped,
                                          double s) {
  NCPolynomial lhs = normalize(parse_expression(normal, pres), pres);
  NCPolynomial rhs = normalize(parse_expression(swapped, pres), pres);
  if (lhs.size() != 1 || rhs.size() != 1) {
    throw Error("'" + normal + "' and '" + swapped +
                "' do not q-commute in " + pres.name());
  }
  const auto& [wl, cl] = *lhs.terms().begin();
  const auto& [wr, cr] = *rhs.terms().begin();
  if (wl != wr) {
    throw Error("'" + normal + "' and '" + swapped +
                "' normalize to different words");
  }
  return cl.eval(s) / cr.eval(s);
}

/// The x, w relations of the Minkowski presentation against the model with
/// R = x, S = w, p^2 = t^{-1}, q^2 = t, t = e^{-8s}:
///   x w = K1 w x with K1 = p^2, and x w* = K2 w* x with K2 = q^2.
inline std::vector<CrossLayerItem> check_cross_layer(
    const Presentation& minkowski, double s, const SampleOptions& opt) {
  const long double p = std::exp(4.0L * s);
  const long double q = std::exp(-4.0L * s);
  PQModel m = build_pq_pair(p, q, PQConvention::plain);
  auto pts = sample_box(opt.samples, opt.seed);
  std::vector<CrossLayerItem> out;
  auto item = [&](std::string name, std::complex<double> k, long double target,
                  const Op& lhs, const Op& rhs_unscaled) {
    CrossLayerItem it;
    it.name = std::move(name);
    it.s = s;
    it.symbolic = k.real();
    it.model = static_cast<double>(target);
    double gap = std::abs(static_cast<double>(target) / k - 1.0);
    Comparison c = op_equal(lhs, scale(rhs_unscaled, cld(k.real(), k.imag())),
                            pts, opt.exact);
    it.residual = std::max(gap, c.relative());
    it.tolerance = opt.tol;
    out.push_back(it);
  };
  item("x w = K w x", swap_constant(minkowski, "x w", "w x", s), p * p,
       compose(m.R, m.S), compose(m.S, m.R));
  const Op Sstar = adjoint(m.S);
  item("x w' = K w' x", swap_constant(minkowski, "x w'", "w' x", s), q * q,
       compose(m.R, Sstar), compose(Sstar, m.R));
  return out;
}

}  // namespace qmink

#endif  // QMINK_CROSSLAYER_HPP
