#ifndef QMINK_MORPHISM_HPP
#define QMINK_MORPHISM_HPP

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "qmink/ncpoly.hpp"
#include "qmink/presentation.hpp"
#include "qmink/rewriting.hpp"

namespace qmink {

using PresentationPtr = std::shared_ptr<const Presentation>;

/// One labelled exact residual; the check passes iff it is zero.
struct SymbolicResidual {
  std::string label;
  NCPolynomial residual;
  std::string rendered;

  bool zero() const { return residual.is_zero(); }
};

struct SymbolicReport {
  std::vector<SymbolicResidual> items;

  bool pass() const {
    for (const auto& it : items) {
      if (!it.zero()) {
        return false;
      }
    }
    return true;
  }
  std::size_t failures() const {
    std::size_t n = 0;
    for (const auto& it : items) {
      n += it.zero() ? 0 : 1;
    }
    return n;
  }
};

/// *-homomorphism between presented algebras, fixed by the images of the
/// declared generators; partner images are the stars of those.
class Morphism {
 public:
  Morphism() = default;

  /// images: declared generator of dom -> polynomial over cod.
  static Morphism from_declared(std::string name, PresentationPtr dom,
                                PresentationPtr cod,
                                const std::map<GenId, NCPolynomial>& images) {
    std::vector<NCPolynomial> all(dom->size());
    std::vector<bool> set(dom->size(), false);
    for (GenId g = 0; g < dom->size(); ++g) {
      if (!dom->generator(g).declared) {
        continue;
      }
      auto it = images.find(g);
      if (it == images.end()) {
        throw Error("morphism '" + name + "' has no image for generator " +
                    dom->display_name(g));
      }
      all[g] = normalize(it->second, *cod);
      set[g] = true;
    }
    for (const auto& [g, p] : images) {
      if (g >= dom->size() || !dom->generator(g).declared) {
        throw Error("morphism '" + name +
                    "' assigns an image to a starred generator");
      }
    }
    for (GenId g = 0; g < dom->size(); ++g) {
      if (!set[g]) {
        GenId partner = dom->generator(g).star_partner;
        all[g] = normalize(star(all[partner], *cod), *cod);
      }
    }
    return from_images(std::move(name), std::move(dom), std::move(cod),
                       std::move(all));
  }

  /// Every generator's image given explicitly.
  static Morphism from_images(std::string name, PresentationPtr dom,
                              PresentationPtr cod,
                              std::vector<NCPolynomial> images) {
    if (images.size() != dom->size()) {
      throw Error("morphism '" + name + "' image count mismatch");
    }
    Morphism m;
    m.name_ = std::move(name);
    m.dom_ = std::move(dom);
    m.cod_ = std::move(cod);
    m.images_ = std::move(images);
    return m;
  }

  static Morphism identity(PresentationPtr pres) {
    std::vector<NCPolynomial> images;
    for (GenId g = 0; g < pres->size(); ++g) {
      images.push_back(NCPolynomial::generator(g));
    }
    return from_images("id_" + pres->name(), pres, pres, std::move(images));
  }

  const std::string& name() const { return name_; }
  const Presentation& domain() const { return *dom_; }
  const Presentation& codomain() const { return *cod_; }
  const PresentationPtr& domain_ptr() const { return dom_; }
  const PresentationPtr& codomain_ptr() const { return cod_; }
  const NCPolynomial& image(GenId g) const { return images_.at(g); }
  const std::vector<NCPolynomial>& images() const { return images_; }

 private:
  std::string name_;
  PresentationPtr dom_;
  PresentationPtr cod_;
  std::vector<NCPolynomial> images_;
};

/// Homomorphic extension of m to p, normalized in the codomain.
inline NCPolynomial apply(const Morphism& m, const NCPolynomial& p,
                          const NormalizeOptions& opt = {}) {
  const Presentation& cod = m.codomain();
  NCPolynomial out;
  for (const auto& [w, c] : p.terms()) {
    NCPolynomial prod(c);
    for (GenId g : w) {
      prod = normalize(prod * m.image(g), cod, opt);
    }
    out += prod;
  }
  return normalize(out, cod, opt);
}

/// outer o inner.
inline Morphism compose(const Morphism& outer, const Morphism& inner) {
  if (!inner.codomain().same_signature(outer.domain())) {
    throw Error("cannot compose " + outer.name() + " after " + inner.name() +
                ": codomain of the first is not the domain of the second");
  }
  std::vector<NCPolynomial> images;
  for (GenId g = 0; g < inner.domain().size(); ++g) {
    images.push_back(apply(outer, inner.image(g)));
  }
  return Morphism::from_images(outer.name() + "." + inner.name(),
                               inner.domain_ptr(), outer.codomain_ptr(),
                               std::move(images));
}

inline SymbolicReport check_relations_preserved(const Morphism& m) {
  SymbolicReport rep;
  const Presentation& dom = m.domain();
  for (const auto& r : dom.rules()) {
    NCPolynomial res = normalize(
        apply(m, NCPolynomial::monomial(r.lhs)) - apply(m, r.rhs),
        m.codomain());
    rep.items.push_back(
        {dom.rule_string(r), res, m.codomain().to_string(res)});
  }
  return rep;
}

enum class Side { left, right };

/// m (x) id_other for Side::left, id_other (x) m for Side::right.
inline Morphism leg_extend(const Morphism& m, Side side,
                           const PresentationPtr& other) {
  const GenId n_other = static_cast<GenId>(other->size());
  std::vector<NCPolynomial> images;
  if (side == Side::left) {
    auto dom = std::make_shared<const Presentation>(tensor(m.domain(), *other));
    auto cod =
        std::make_shared<const Presentation>(tensor(m.codomain(), *other));
    const GenId off = static_cast<GenId>(m.codomain().size());
    for (GenId g = 0; g < m.domain().size(); ++g) {
      images.push_back(m.image(g));
    }
    for (GenId h = 0; h < n_other; ++h) {
      images.push_back(NCPolynomial::generator(h + off));
    }
    return Morphism::from_images(m.name() + "*id", dom, cod,
                                 std::move(images));
  }
  auto dom = std::make_shared<const Presentation>(tensor(*other, m.domain()));
  auto cod = std::make_shared<const Presentation>(tensor(*other, m.codomain()));
  for (GenId h = 0; h < n_other; ++h) {
    images.push_back(NCPolynomial::generator(h));
  }
  for (GenId g = 0; g < m.domain().size(); ++g) {
    images.push_back(
        m.image(g).map_generators([n_other](GenId x) { return x + n_other; }));
  }
  return Morphism::from_images("id*" + m.name(), dom, cod, std::move(images));
}

/// a(g) - b(g) for the listed generators of the common domain; a and b
/// are the two composition paths of a commuting square.
inline SymbolicReport check_cocommutativity_square(
    const Morphism& a, const Morphism& b, const std::vector<GenId>& gens) {
  if (!a.domain().same_signature(b.domain()) ||
      !a.codomain().same_signature(b.codomain())) {
    throw Error("square paths " + a.name() + " and " + b.name() +
                " do not share domain and codomain");
  }
  SymbolicReport rep;
  for (GenId g : gens) {
    NCPolynomial res = normalize(a.image(g) - b.image(g), a.codomain());
    rep.items.push_back(
        {a.domain().display_name(g), res, a.codomain().to_string(res)});
  }
  return rep;
}

/// (delta (x) id) o delta and (id (x) delta) o delta.
inline std::pair<Morphism, Morphism> coassociativity_paths(
    const Morphism& delta) {
  PresentationPtr base = delta.domain_ptr();
  Morphism lhs = compose(leg_extend(delta, Side::left, base), delta);
  Morphism rhs = compose(leg_extend(delta, Side::right, base), delta);
  return {std::move(lhs), std::move(rhs)};
}

/// (coact (x) id) o coact and (id (x) delta) o coact.
inline std::pair<Morphism, Morphism> coaction_paths(const Morphism& coact,
                                                    const Morphism& delta) {
  Morphism lhs =
      compose(leg_extend(coact, Side::left, delta.domain_ptr()), coact);
  Morphism rhs =
      compose(leg_extend(delta, Side::right, coact.domain_ptr()), coact);
  return {std::move(lhs), std::move(rhs)};
}

inline SymbolicReport check_star_equivariance(const Morphism& m) {
  SymbolicReport rep;
  const Presentation& dom = m.domain();
  const Presentation& cod = m.codomain();
  for (GenId g = 0; g < dom.size(); ++g) {
    NCPolynomial lhs = apply(m, star(NCPolynomial::generator(g), dom));
    NCPolynomial rhs = normalize(star(m.image(g), cod), cod);
    NCPolynomial res = normalize(lhs - rhs, cod);
    rep.items.push_back({dom.display_name(g), res, cod.to_string(res)});
  }
  return rep;
}

/// Compares the q = 1 specialization of m with a classical reference
/// morphism. Generators are matched by display name; images are
/// re-normalized in the reference codomain.
inline SymbolicReport classical_limit_compare(const Morphism& m,
                                              const Morphism& reference) {
  const Presentation& cod = m.codomain();
  const Presentation& ref_cod = reference.codomain();
  std::vector<GenId> to_ref(cod.size());
  for (GenId g = 0; g < cod.size(); ++g) {
    auto h = ref_cod.find(cod.display_name(g));
    if (!h) {
      throw Error("reference codomain has no generator " +
                  cod.display_name(g));
    }
    to_ref[g] = *h;
  }
  SymbolicReport rep;
  const Presentation& dom = m.domain();
  for (GenId g = 0; g < dom.size(); ++g) {
    if (!dom.generator(g).declared) {
      continue;
    }
    auto rg = reference.domain().find(dom.display_name(g));
    if (!rg) {
      throw Error("reference domain has no generator " + dom.display_name(g));
    }
    NCPolynomial lim = normalize(
        m.image(g).at_q1().map_generators([&](GenId x) { return to_ref[x]; }),
        ref_cod);
    NCPolynomial res =
        normalize(lim - reference.image(*rg), ref_cod);
    rep.items.push_back({dom.display_name(g), res, ref_cod.to_string(res)});
  }
  return rep;
}

}  // namespace qmink

#endif  // QMINK_MORPHISM_HPP
