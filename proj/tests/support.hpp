#ifndef QMINK_TESTS_SUPPORT_HPP
#define QMINK_TESTS_SUPPORT_HPP

#include <random>
#include <string>

#include "qmink/builtin.hpp"

namespace testing_support {

using namespace qmink;

inline const Library& coaction_lib() {
  static const Library lib = [] {
    Library l = builtin("coaction");
    l.merge(builtin("classical"));
    return l;
  }();
  return lib;
}

inline const Presentation& lorentz() {
  return coaction_lib().algebra("lorentz");
}
inline const Presentation& minkowski() {
  return coaction_lib().algebra("minkowski");
}

inline NCPolynomial P(const Presentation& pres, const std::string& text) {
  return parse_expression(text, pres);
}

inline std::string nf(const Presentation& pres, const std::string& text) {
  return pres.to_string(normalize(P(pres, text), pres));
}

inline Word random_word(std::mt19937_64& rng, const Presentation& pres,
                        std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len(0, max_len);
  std::uniform_int_distribution<GenId> gen(0,
                                           static_cast<GenId>(pres.size() - 1));
  Word w;
  for (std::size_t k = len(rng); k > 0; --k) {
    w.push_back(gen(rng));
  }
  return w;
}

inline Scalar random_coefficient(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> exp(-4, 4);
  std::uniform_int_distribution<long> num(-5, 5);
  std::uniform_int_distribution<long> den(1, 4);
  return Scalar::q_power(exp(rng), GaussianRational(mpq_class(num(rng), den(rng)),
                                                    mpq_class(num(rng), den(rng))));
}

inline NCPolynomial random_poly(std::mt19937_64& rng, const Presentation& pres,
                                std::size_t terms, std::size_t max_len) {
  NCPolynomial p;
  for (std::size_t k = 0; k < terms; ++k) {
    p.add_term(random_word(rng, pres, max_len), random_coefficient(rng));
  }
  return p;
}

}  // namespace testing_support

#endif  // QMINK_TESTS_SUPPORT_HPP
