#ifndef QMINK_BUILTIN_HPP
#define QMINK_BUILTIN_HPP

#include <string>
#include <string_view>
#include <vector>

#include "qmink/builtin_sources.hpp"
#include "qmink/dsl.hpp"
#include "qmink/morphism.hpp"
#include "qmink/rewriting.hpp"

namespace qmink {

inline const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names = {"lorentz", "minkowski",
                                                 "coaction", "classical"};
  return names;
}

/// Shipped .qalg text of a builtin.
inline std::string_view builtin_source(const std::string& name) {
  if (name == "lorentz") {
    return data::lorentz_qalg;
  }
  if (name == "minkowski") {
    return data::minkowski_qalg;
  }
  if (name == "coaction") {
    return data::coaction_qalg;
  }
  if (name == "classical") {
    return data::classical_qalg;
  }
  throw Error("unknown builtin '" + name + "'");
}

/// Star-closed, termination-checked algebras and validated morphisms.
/// "coaction" also contains the lorentz and minkowski algebras.
inline Library builtin(const std::string& name) {
  ParseOptions opt;
  opt.star_close = true;
  Library base;
  if (name == "coaction") {
    base = parse(builtin_source("lorentz"), {}, opt);
    base = parse(builtin_source("minkowski"), base, opt);
  }
  Library lib = parse(builtin_source(name), base, opt);
  for (const auto& n : lib.algebra_order) {
    auto term = check_termination(lib.algebra(n));
    if (!term.pass) {
      throw Error("builtin algebra '" + n +
                  "' is not terminating: " + term.violations.front());
    }
  }
  for (const auto& n : lib.morphism_order) {
    const Morphism& m = lib.morphism(n);
    auto rep = check_relations_preserved(m);
    if (!rep.pass()) {
      throw Error("builtin morphism '" + n + "' does not preserve relations");
    }
  }
  return lib;
}

}  // namespace qmink

#endif  // QMINK_BUILTIN_HPP
