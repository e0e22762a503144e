#include <gtest/gtest.h>

#include <array>
#include <map>
#include <random>
#include <string>

#include "support.hpp"

using namespace testing_support;

namespace {

/// Tiny algebra on self-adjoint letters with the given relations.
Presentation small_algebra(const std::string& rels) {
  Library lib = parse("algebra t { selfadjoint a, b, c; " + rels + " }");
  return lib.algebra("t");
}

std::string rules_text(const Presentation& p) {
  std::string out;
  for (const auto& r : p.rules()) {
    out += p.rule_string(r) + "\n";
  }
  return out;
}

}  // namespace

// ---- normalize --------------------------------------------------------------

TEST(Normalize, CommutingGenerators) { EXPECT_EQ(nf(lorentz(), "b a"), "a b"); }

TEST(Normalize, DeterminantRule) {
  EXPECT_EQ(nf(lorentz(), "a d"), "1 + b c");
  EXPECT_EQ(nf(lorentz(), "d a"), "1 + b c");
}

TEST(Normalize, StarredSwapCarriesQPower) {
  EXPECT_EQ(nf(lorentz(), "b' a"), "q^4 a b'");
}

TEST(Normalize, MinkowskiSwap) { EXPECT_EQ(nf(minkowski(), "w x"), "q^-4 x w"); }

TEST(Normalize, IsIdempotentOnSamples) {
  std::mt19937_64 rng(21);
  for (const Presentation* p : {&lorentz(), &minkowski()}) {
    for (int k = 0; k < 200; ++k) {
      NCPolynomial x = random_poly(rng, *p, 3, 6);
      NCPolynomial n = normalize(x, *p);
      EXPECT_EQ(normalize(n, *p), n);
      for (const auto& [w, c] : n.terms()) {
        EXPECT_TRUE(is_normal(w, *p));
      }
    }
  }
}

TEST(Normalize, StrategiesAgreeOnRandomWords) {
  std::mt19937_64 rng(22);
  for (const Presentation* p : {&lorentz(), &minkowski()}) {
    for (int k = 0; k < 1000; ++k) {
      NCPolynomial x = NCPolynomial::monomial(random_word(rng, *p, 8));
      NormalizeOptions right;
      right.choice = RedexChoice::rightmost;
      NormalizeOptions any;
      any.choice = RedexChoice::random;
      any.seed = static_cast<std::uint64_t>(k);
      NCPolynomial a = normalize(x, *p);
      ASSERT_EQ(a, normalize(x, *p, right)) << p->to_string(x);
      ASSERT_EQ(a, normalize(x, *p, any)) << p->to_string(x);
    }
  }
}

TEST(Normalize, StarCommutesWithNormalization) {
  std::mt19937_64 rng(23);
  for (const Presentation* p : {&lorentz(), &minkowski()}) {
    for (int k = 0; k < 200; ++k) {
      NCPolynomial x = random_poly(rng, *p, 3, 5);
      EXPECT_EQ(normalize(star(x, *p), *p),
                normalize(star(normalize(x, *p), *p), *p));
    }
  }
}

TEST(Normalize, StepLimitIsAnError) {
  Presentation p("loop");
  p.add_generator({"a", 0, 0, false, true, {}});
  p.add_rule({{0}, NCPolynomial::monomial({0, 0})});
  NormalizeOptions opt;
  opt.step_limit = 1000;
  EXPECT_THROW(normalize(NCPolynomial::generator(0), p, opt),
               StepLimitExceeded);
}

TEST(Normalize, MultiplyNormalizesProducts) {
  const Presentation& m = minkowski();
  EXPECT_EQ(m.to_string(multiply(P(m, "w"), P(m, "x"), m)), "q^-4 x w");
}

// ---- star -------------------------------------------------------------------

TEST(Star, ReversesWordsAndConjugates) {
  const Presentation& l = lorentz();
  EXPECT_EQ(star(P(l, "a b"), l), P(l, "b' a'"));
  EXPECT_EQ(star(P(l, "i*q^2 a"), l), P(l, "-i*q^2 a'"));
  const Presentation& m = minkowski();
  EXPECT_EQ(star(P(m, "x"), m), P(m, "x"));
}

TEST(Star, IsInvolutive) {
  std::mt19937_64 rng(24);
  for (int k = 0; k < 200; ++k) {
    NCPolynomial x = random_poly(rng, lorentz(), 4, 6);
    EXPECT_EQ(star(star(x, lorentz()), lorentz()), x);
  }
}

// ---- star closure -------------------------------------------------------------

TEST(StarClosure, DerivesStarredDeterminant) {
  EXPECT_EQ(nf(lorentz(), "a' d'"), "1 + b' c'");
}

TEST(StarClosure, DerivesStarOfQCommutation) {
  // a b' = t b' a with t = q^-4 gives b a' = t a' b.
  const Presentation& l = lorentz();
  EXPECT_EQ(normalize(P(l, "b a'") - P(l, "q^-4 a' b"), l), NCPolynomial());
}

TEST(StarClosure, NormalityRuleIsSelfSymmetric) {
  const Presentation& m = minkowski();
  EXPECT_EQ(nf(m, "w' w"), "w w'");
  EXPECT_TRUE(unresolved_star_pairs(m).empty());
}

TEST(StarClosure, EveryStarImageReducesToZero) {
  for (const Presentation* p : {&lorentz(), &minkowski()}) {
    EXPECT_TRUE(p->star_closed());
    for (const auto& r : p->rules()) {
      NCPolynomial rel = NCPolynomial::monomial(r.lhs) - r.rhs;
      EXPECT_TRUE(normalize(star(rel, *p), *p).is_zero()) << p->rule_string(r);
    }
  }
}

TEST(StarClosure, LorentzRuleCount) {
  EXPECT_EQ(lorentz().rules().size(), 30u);
  EXPECT_EQ(lorentz().size(), 8u);
  EXPECT_EQ(minkowski().size(), 4u);
}

// ---- termination and confluence ---------------------------------------------

TEST(Termination, BuiltinsPass) {
  EXPECT_TRUE(check_termination(lorentz()).pass);
  EXPECT_TRUE(check_termination(minkowski()).pass);
}

TEST(Termination, TwoCycleFails) {
  Presentation p("cyc");
  p.add_generator({"a", 0, 0, false, true, {}});
  p.add_generator({"b", 1, 0, false, true, {}});
  p.add_rule({{0, 1}, NCPolynomial::monomial({1, 0})});
  p.add_rule({{1, 0}, NCPolynomial::monomial({0, 1})});
  auto rep = check_termination(p);
  EXPECT_FALSE(rep.pass);
  EXPECT_EQ(rep.violations.size(), 1u);
}

TEST(Termination, EmptyRuleSetPasses) {
  EXPECT_TRUE(check_termination(small_algebra("")).pass);
}

TEST(Confluence, BuiltinsHaveNoUnresolvedPairs) {
  EXPECT_TRUE(check_local_confluence(lorentz()).empty());
  EXPECT_TRUE(check_local_confluence(minkowski()).empty());
}

TEST(Confluence, OverlapOfTwoSwapsIsUnresolved) {
  // c b a reduces to b c a and to c a b; with no rule for c a both are
  // normal, so the overlap of c b -> b c and b a -> a b stays open.
  Presentation p = small_algebra("rel b a = a b; rel c b = b c;");
  auto pairs = check_local_confluence(p);
  ASSERT_EQ(pairs.size(), 1u);
  EXPECT_EQ(p.word_string(pairs.front().word), "c b a");
}

TEST(Confluence, ThirdSwapResolvesOverlap) {
  Presentation q =
      small_algebra("rel b a = a b; rel c b = b c; rel c a = q a c;");
  EXPECT_TRUE(check_local_confluence(q).empty());
}

TEST(Orient, RejectsNonUnitLeadingCoefficient) {
  Presentation p = small_algebra("");
  EXPECT_THROW(orient(P(p, "(1 + q) b a - a b"), p), OrientationError);
  EXPECT_THROW(orient(NCPolynomial(), p), OrientationError);
  RewriteRule r = orient(P(p, "q^2 b a - a b"), p);
  EXPECT_EQ(p.rule_string(r), "b a -> q^-2 a b");
}

// ---- completion ---------------------------------------------------------------

TEST(Complete, ConfluentInputIsUnchanged) {
  auto res = complete(lorentz(), 5);
  EXPECT_TRUE(res.confluent);
  EXPECT_TRUE(res.added.empty());
  EXPECT_EQ(res.presentation, lorentz());
}

TEST(Complete, RestoresStarDerivedRule) {
  Presentation p = lorentz();
  const std::string target = "a' c -> q^-4 c a'";
  std::size_t idx = p.rules().size();
  for (std::size_t k = 0; k < p.rules().size(); ++k) {
    if (p.rule_string(p.rules()[k]) == target) {
      idx = k;
    }
  }
  ASSERT_LT(idx, p.rules().size());
  p.remove_rule(idx);
  auto res = complete(p, 5);
  EXPECT_TRUE(res.confluent);
  EXPECT_NE(rules_text(res.presentation).find(target), std::string::npos);
}

TEST(Complete, ZeroBudgetReportsAndKeepsRules) {
  Presentation p = small_algebra("rel b a = a b; rel c b = b c;");
  auto res = complete(p, 0);
  EXPECT_FALSE(res.confluent);
  EXPECT_TRUE(res.limit_reached);
  EXPECT_EQ(res.presentation.rules(), p.rules());
}

TEST(Complete, OrientsCriticalPairUpToBudget) {
  // Under this order the completion of {b a -> a b, c b -> b c} is infinite.
  Presentation p = small_algebra("rel b a = a b; rel c b = b c;");
  auto res = complete(p, 3);
  ASSERT_EQ(res.added.size(), 3u);
  EXPECT_EQ(res.added.front(), "c a b -> b c a");
  EXPECT_TRUE(res.limit_reached);
  EXPECT_FALSE(res.confluent);
}

// ---- tensor -------------------------------------------------------------------

TEST(Tensor, GeneratorCountAndLegs) {
  Presentation t = tensor(lorentz(), lorentz());
  EXPECT_EQ(t.size(), 16u);
  EXPECT_EQ(t.legs(), 2u);
  EXPECT_EQ(t.name(), "lorentz*lorentz");
  EXPECT_EQ(t.display_name(8), "a@1");
}

TEST(Tensor, LegsCommute) {
  Presentation t = tensor(lorentz(), lorentz());
  EXPECT_EQ(nf(t, "c@1 a@0"), "a@0 c@1");
  EXPECT_EQ(nf(t, "d@1 a@1 d@0 a@0"), "1 + b@0 c@0 + b@1 c@1 + b@0 c@0 b@1 c@1");
}

TEST(Tensor, CoactionCodomainIsConfluent) {
  Presentation t = tensor(minkowski(), lorentz());
  EXPECT_EQ(t.size(), 12u);
  EXPECT_TRUE(check_termination(t).pass);
  EXPECT_TRUE(check_local_confluence(t).empty());
  EXPECT_EQ(nf(t, "w@0 x@0 a@1"), "q^-4 x@0 w@0 a@1");
}

// ---- classical limit and homogeneity ------------------------------------------

namespace {

/// Values of the Lorentz generators in a commutative model with
/// ad - bc = 1 and a'd' - b'c' = 1.
std::map<std::string, mpq_class> classical_point(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(1, 9);
  std::uniform_int_distribution<long> den(1, 5);
  auto r = [&] { return mpq_class(num(rng), den(rng)); };
  std::map<std::string, mpq_class> v;
  for (std::string suffix : {"", "'"}) {
    mpq_class a = r(), b = r(), c = -r();
    v["a" + suffix] = a;
    v["b" + suffix] = b;
    v["c" + suffix] = c;
    v["d" + suffix] = (1 + b * c) / a;
  }
  return v;
}

GaussianRational evaluate(const NCPolynomial& p, const Presentation& pres,
                          const std::map<std::string, mpq_class>& v) {
  GaussianRational sum;
  for (const auto& [w, c] : p.terms()) {
    mpq_class prod = 1;
    for (GenId g : w) {
      prod *= v.at(pres.display_name(g));
    }
    sum += c.at_q1() * GaussianRational(prod);
  }
  return sum;
}

}  // namespace

TEST(ClassicalLimit, NormalFormsAgreeWithCommutativeModel) {
  Presentation cl = specialize_q1(lorentz());
  std::mt19937_64 rng(25);
  for (int k = 0; k < 300; ++k) {
    auto v = classical_point(rng);
    NCPolynomial w = NCPolynomial::monomial(random_word(rng, cl, 8));
    NCPolynomial n = normalize(w, cl);
    EXPECT_EQ(evaluate(n, cl, v), evaluate(w, cl, v)) << cl.to_string(w);
    for (const auto& [word, c] : n.terms()) {
      for (std::size_t j = 1; j < word.size(); ++j) {
        EXPECT_LE(word[j - 1], word[j]) << "not commutatively sorted";
      }
    }
  }
}

TEST(Homogeneity, NormalizePreservesDegreeDifferences) {
  const Presentation& l = lorentz();
  auto grade = [&](const Word& w) {
    std::array<int, 4> g{};
    for (GenId x : w) {
      const std::string n = l.display_name(x);
      const int off = n.size() > 1 ? 2 : 0;
      if (n[0] == 'a') g[off] += 1;
      if (n[0] == 'd') g[off] -= 1;
      if (n[0] == 'b') g[off + 1] += 1;
      if (n[0] == 'c') g[off + 1] -= 1;
    }
    return g;
  };
  std::mt19937_64 rng(26);
  for (int k = 0; k < 500; ++k) {
    Word w = random_word(rng, l, 8);
    const NCPolynomial n = normalize(NCPolynomial::monomial(w), l);
    for (const auto& [u, c] : n.terms()) {
      EXPECT_EQ(grade(u), grade(w));
    }
  }
}
