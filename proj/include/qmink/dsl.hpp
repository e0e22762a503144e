#ifndef QMINK_DSL_HPP
#define QMINK_DSL_HPP

#include <cctype>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qmink/morphism.hpp"
#include "qmink/presentation.hpp"
#include "qmink/rewriting.hpp"
#include "qmink/scalar.hpp"

namespace qmink {

class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& msg)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " +
              msg),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Presentations and morphisms by name, in declaration order.
struct Library {
  std::map<std::string, PresentationPtr> algebras;
  std::map<std::string, Morphism> morphisms;
  std::vector<std::string> algebra_order;
  std::vector<std::string> morphism_order;

  const Presentation& algebra(const std::string& name) const {
    auto it = algebras.find(name);
    if (it == algebras.end()) {
      throw Error("unknown algebra '" + name + "'");
    }
    return *it->second;
  }
  PresentationPtr algebra_ptr(const std::string& name) const {
    algebra(name);
    return algebras.at(name);
  }
  const Morphism& morphism(const std::string& name) const {
    auto it = morphisms.find(name);
    if (it == morphisms.end()) {
      throw Error("unknown morphism '" + name + "'");
    }
    return it->second;
  }

  void put(PresentationPtr p) {
    const std::string name = p->name();
    if (algebras.find(name) == algebras.end()) {
      algebra_order.push_back(name);
    }
    algebras[name] = std::move(p);
  }
  void put(Morphism m) {
    const std::string name = m.name();
    if (morphisms.find(name) == morphisms.end()) {
      morphism_order.push_back(name);
    }
    morphisms[name] = std::move(m);
  }
  void merge(const Library& o) {
    for (const auto& n : o.algebra_order) {
      put(o.algebras.at(n));
    }
    for (const auto& n : o.morphism_order) {
      put(o.morphisms.at(n));
    }
  }
};

namespace dsl {

enum class Tok { ident, number, symbol, arrow, end };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

inline std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  std::size_t line = 1;
  std::size_t col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < src.size()) {
    unsigned char ch = static_cast<unsigned char>(src[i]);
    if (std::isspace(ch)) {
      advance(1);
      continue;
    }
    if (ch == '#') {
      while (i < src.size() && src[i] != '\n') {
        advance(1);
      }
      continue;
    }
    const std::size_t l = line;
    const std::size_t c = col;
    if (std::isalpha(ch) || ch == '_') {
      std::size_t j = i;
      while (j < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[j])) ||
              src[j] == '_')) {
        ++j;
      }
      while (j < src.size() && src[j] == '\'') {
        ++j;
      }
      if (j + 1 < src.size() && src[j] == '@' &&
          std::isdigit(static_cast<unsigned char>(src[j + 1]))) {
        ++j;
        while (j < src.size() &&
               std::isdigit(static_cast<unsigned char>(src[j]))) {
          ++j;
        }
      }
      out.push_back({Tok::ident, std::string(src.substr(i, j - i)), l, c});
      advance(j - i);
      continue;
    }
    if (std::isdigit(ch)) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) {
        ++j;
      }
      out.push_back({Tok::number, std::string(src.substr(i, j - i)), l, c});
      advance(j - i);
      continue;
    }
    if (ch == '-' && i + 1 < src.size() && src[i + 1] == '>') {
      out.push_back({Tok::arrow, "->", l, c});
      advance(2);
      continue;
    }
    static const std::string_view symbols = "{};,=+-*^()/:[]";
    if (symbols.find(static_cast<char>(ch)) != std::string_view::npos) {
      out.push_back({Tok::symbol, std::string(1, static_cast<char>(ch)), l, c});
      advance(1);
      continue;
    }
    throw ParseError(l, c, std::string("unexpected character '") +
                               static_cast<char>(ch) + "'");
  }
  out.push_back({Tok::end, "", line, col});
  return out;
}

inline bool is_reserved(const std::string& s) {
  static const std::set<std::string> kw = {
      "algebra", "morphism", "gen",  "selfadjoint", "heavy",
      "weight",  "rel",      "map",  "starclosed",  "q",
      "i"};
  return kw.count(s) > 0;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  bool at_end() const { return peek().kind == Tok::end; }
  std::size_t position() const { return pos_; }
  void seek(std::size_t p) { pos_ = p; }

  [[noreturn]] void fail(const Token& t, const std::string& msg) const {
    throw ParseError(t.line, t.column, msg);
  }

  bool is_symbol(const char* s) const {
    return peek().kind == Tok::symbol && peek().text == s;
  }
  bool accept(const char* s) {
    if (is_symbol(s)) {
      ++pos_;
      return true;
    }
    return false;
  }
  const Token& expect(const char* s) {
    if (!is_symbol(s)) {
      fail(peek(), std::string("expected '") + s + "'" + found());
    }
    return toks_[pos_++];
  }
  const Token& expect_ident() {
    if (peek().kind != Tok::ident) {
      fail(peek(), "expected identifier" + found());
    }
    return toks_[pos_++];
  }
  const Token& expect_keyword(const char* kw) {
    if (peek().kind != Tok::ident || peek().text != kw) {
      fail(peek(), std::string("expected '") + kw + "'" + found());
    }
    return toks_[pos_++];
  }
  std::string found() const {
    if (peek().kind == Tok::end) {
      return ", found end of input";
    }
    return ", found '" + peek().text + "'";
  }

  void skip_statement() {
    while (!at_end() && !is_symbol(";") && !is_symbol("}")) {
      ++pos_;
    }
    accept(";");
  }

  // ---- expressions -------------------------------------------------------
  //   expr    ::= ['+'|'-'] term (('+'|'-') term)*
  //   term    ::= factor (['*'] factor)*
  //   factor  ::= primary ['^' ['-'] NUMBER]
  //   primary ::= NUMBER ['/' NUMBER] | 'q' | 'i' | generator | '(' expr ')'

  NCPolynomial expression(const Presentation& pres) {
    NCPolynomial acc;
    bool negate = false;
    if (accept("-")) {
      negate = true;
    } else {
      accept("+");
    }
    NCPolynomial t = term(pres);
    acc = negate ? -t : t;
    while (true) {
      if (accept("+")) {
        acc += term(pres);
      } else if (accept("-")) {
        acc -= term(pres);
      } else {
        break;
      }
    }
    return acc;
  }

 private:
  bool starts_primary() const {
    const Token& t = peek();
    if (t.kind == Tok::number) {
      return true;
    }
    if (t.kind == Tok::ident) {
      return !is_reserved(t.text) || t.text == "q" || t.text == "i";
    }
    return is_symbol("(");
  }

  NCPolynomial term(const Presentation& pres) {
    NCPolynomial acc = factor(pres);
    while (true) {
      if (accept("*")) {
        acc = acc * factor(pres);
      } else if (starts_primary()) {
        acc = acc * factor(pres);
      } else {
        break;
      }
    }
    return acc;
  }

  NCPolynomial factor(const Presentation& pres) {
    const Token& start = peek();
    NCPolynomial base = primary(pres);
    if (!accept("^")) {
      return base;
    }
    bool neg = accept("-");
    const Token& e = peek();
    if (e.kind != Tok::number) {
      fail(e, "expected integer exponent" + found());
    }
    ++pos_;
    long n = 0;
    try {
      n = std::stol(e.text);
    } catch (const std::exception&) {
      fail(e, "exponent out of range");
    }
    if (n > 4096) {
      fail(e, "exponent out of range");
    }
    if (neg) {
      if (base.size() != 1 || !base.terms().begin()->first.empty() ||
          !base.terms().begin()->second.is_monomial()) {
        fail(start, "negative power of a non-unit");
      }
      base = NCPolynomial(base.terms().begin()->second.inverse());
    }
    NCPolynomial out(1);
    for (long k = 0; k < n; ++k) {
      out = out * base;
    }
    return out;
  }

  NCPolynomial primary(const Presentation& pres) {
    const Token& t = peek();
    if (t.kind == Tok::number) {
      ++pos_;
      mpq_class v(t.text);
      if (accept("/")) {
        const Token& d = peek();
        if (d.kind != Tok::number) {
          fail(d, "expected denominator" + found());
        }
        ++pos_;
        mpz_class den(d.text);
        if (den == 0) {
          fail(d, "zero denominator");
        }
        v /= mpq_class(den);
      }
      return NCPolynomial(Scalar(GaussianRational(v)));
    }
    if (t.kind == Tok::ident) {
      ++pos_;
      if (t.text == "q") {
        return NCPolynomial(Scalar::q_power(1));
      }
      if (t.text == "i") {
        return NCPolynomial(Scalar::i());
      }
      if (is_reserved(t.text)) {
        fail(t, "unexpected keyword '" + t.text + "'");
      }
      auto g = pres.find(t.text);
      if (!g) {
        fail(t, "unknown generator '" + t.text + "' in algebra '" +
                    pres.name() + "'");
      }
      return NCPolynomial::generator(*g);
    }
    if (accept("(")) {
      NCPolynomial inner = expression(pres);
      expect(")");
      return inner;
    }
    fail(t, "expected scalar, generator or '('" + found());
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

inline std::vector<std::string> ident_list(Parser& ps,
                                           std::vector<const Token*>* where) {
  std::vector<std::string> out;
  do {
    const Token& t = ps.expect_ident();
    out.push_back(t.text);
    if (where != nullptr) {
      where->push_back(&t);
    }
  } while (ps.accept(","));
  return out;
}

inline Presentation parse_algebra(Parser& ps) {
  ps.expect_keyword("algebra");
  const Token& name_tok = ps.expect_ident();
  if (is_reserved(name_tok.text)) {
    ps.fail(name_tok, "reserved word used as algebra name");
  }
  ps.expect("{");
  const std::size_t body = ps.position();

  // Pass 1: generators in declaration order, partners appended afterwards.
  Presentation pres(name_tok.text);
  std::vector<std::string> needs_partner;
  while (!ps.is_symbol("}")) {
    if (ps.at_end()) {
      ps.fail(ps.peek(), "unterminated algebra block");
    }
    const Token& kw = ps.expect_ident();
    if (kw.text == "gen" || kw.text == "selfadjoint") {
      std::vector<const Token*> where;
      auto names = ident_list(ps, &where);
      ps.expect(";");
      for (std::size_t k = 0; k < names.size(); ++k) {
        const auto& n = names[k];
        if (is_reserved(n) || n.find('\'') != std::string::npos ||
            n.find('@') != std::string::npos) {
          ps.fail(*where[k], "invalid generator name '" + n + "'");
        }
        if (pres.find(n)) {
          ps.fail(*where[k], "generator '" + n + "' declared twice");
        }
        Generator g;
        g.name = n;
        g.star_partner = static_cast<GenId>(pres.size());
        pres.add_generator(std::move(g));
        if (kw.text == "gen") {
          needs_partner.push_back(n);
        }
      }
    } else if (kw.text == "heavy" || kw.text == "weight" ||
               kw.text == "rel" || kw.text == "starclosed") {
      ps.skip_statement();
    } else {
      ps.fail(kw, "unknown declaration '" + kw.text + "'");
    }
  }
  for (const auto& n : needs_partner) {
    GenId g = *pres.find(n);
    Generator p;
    p.name = n + "'";
    p.declared = false;
    p.star_partner = g;
    GenId pid = pres.add_generator(std::move(p));
    pres.set_star_partner(g, pid);
  }

  // Pass 2: everything that refers to generators.
  ps.seek(body);
  bool star_closed_decl = false;
  const Token* star_closed_tok = nullptr;
  std::vector<std::pair<const Token*, NCPolynomial>> relations;
  std::map<GenId, std::vector<int>> weights;
  while (!ps.is_symbol("}")) {
    const Token& kw = ps.expect_ident();
    if (kw.text == "gen" || kw.text == "selfadjoint") {
      ps.skip_statement();
    } else if (kw.text == "heavy") {
      std::vector<const Token*> where;
      auto names = ident_list(ps, &where);
      ps.expect(";");
      for (std::size_t k = 0; k < names.size(); ++k) {
        auto g = pres.find(names[k]);
        if (!g) {
          ps.fail(*where[k], "unknown generator '" + names[k] + "'");
        }
        pres.set_heavy(*g, true);
      }
    } else if (kw.text == "weight") {
      const Token& gt = ps.expect_ident();
      auto g = pres.find(gt.text);
      if (!g) {
        ps.fail(gt, "unknown generator '" + gt.text + "'");
      }
      ps.expect("=");
      ps.expect("[");
      std::vector<int> w;
      if (!ps.is_symbol("]")) {
        do {
          bool neg = ps.accept("-");
          const Token& v = ps.peek();
          if (v.kind != Tok::number || v.text.size() > 6) {
            ps.fail(v, "expected small integer" + ps.found());
          }
          ps.seek(ps.position() + 1);
          int x = std::stoi(v.text);
          w.push_back(neg ? -x : x);
        } while (ps.accept(","));
      }
      ps.expect("]");
      ps.expect(";");
      if (w.size() % 2 != 0) {
        ps.fail(gt, "weight needs holomorphic and antiholomorphic halves");
      }
      const std::size_t h = w.size() / 2;
      std::vector<int> swapped(w.begin() + static_cast<std::ptrdiff_t>(h),
                               w.end());
      swapped.insert(swapped.end(), w.begin(),
                     w.begin() + static_cast<std::ptrdiff_t>(h));
      GenId partner = pres.generator(*g).star_partner;
      for (auto [id, val] : {std::pair{*g, w}, std::pair{partner, swapped}}) {
        auto it = weights.find(id);
        if (it != weights.end() && it->second != val) {
          ps.fail(gt, "weight of " + pres.display_name(id) +
                          " conflicts with its star partner");
        }
        weights[id] = val;
      }
    } else if (kw.text == "starclosed") {
      ps.expect(";");
      star_closed_decl = true;
      star_closed_tok = &kw;
    } else if (kw.text == "rel") {
      const Token& at = ps.peek();
      NCPolynomial lhs = ps.expression(pres);
      ps.expect("=");
      NCPolynomial rhs = ps.expression(pres);
      ps.expect(";");
      relations.emplace_back(&at, lhs - rhs);
    }
  }
  ps.expect("}");
  for (auto& [g, w] : weights) {
    pres.set_weight(g, w);
  }
  for (auto& [tok, rel] : relations) {
    if (rel.is_zero()) {
      ps.fail(*tok, "relation is trivially satisfied");
    }
    try {
      pres.add_rule(orient(rel, pres));
    } catch (const OrientationError& e) {
      ps.fail(*tok, e.what());
    }
  }
  auto term = check_termination(pres);
  if (!term.pass) {
    ps.fail(name_tok, "rule not order-decreasing: " + term.violations.front());
  }
  if (star_closed_decl) {
    if (!unresolved_star_pairs(pres).empty()) {
      ps.fail(*star_closed_tok, "algebra declared starclosed but the star "
                                "image of a rule does not reduce to zero");
    }
    pres.set_star_closed(true);
  }
  return pres;
}

inline PresentationPtr tensor_of(const std::vector<PresentationPtr>& factors) {
  Presentation acc = *factors.front();
  for (std::size_t k = 1; k < factors.size(); ++k) {
    acc = tensor(acc, *factors[k]);
  }
  return std::make_shared<const Presentation>(std::move(acc));
}

inline Morphism parse_morphism(Parser& ps, const Library& lib) {
  ps.expect_keyword("morphism");
  const Token& name_tok = ps.expect_ident();
  ps.expect(":");
  auto lookup = [&](const Token& t) {
    auto it = lib.algebras.find(t.text);
    if (it == lib.algebras.end()) {
      ps.fail(t, "unknown algebra '" + t.text + "'");
    }
    return it->second;
  };
  std::vector<PresentationPtr> dom_f{lookup(ps.expect_ident())};
  while (ps.accept("*")) {
    dom_f.push_back(lookup(ps.expect_ident()));
  }
  if (ps.peek().kind != Tok::arrow) {
    ps.fail(ps.peek(), "expected '->'" + ps.found());
  }
  ps.seek(ps.position() + 1);
  std::vector<PresentationPtr> cod_f{lookup(ps.expect_ident())};
  while (ps.accept("*")) {
    cod_f.push_back(lookup(ps.expect_ident()));
  }
  PresentationPtr dom = dom_f.size() == 1 ? dom_f.front() : tensor_of(dom_f);
  PresentationPtr cod = cod_f.size() == 1 ? cod_f.front() : tensor_of(cod_f);
  ps.expect("{");
  std::map<GenId, NCPolynomial> images;
  while (!ps.accept("}")) {
    ps.expect_keyword("map");
    const Token& gt = ps.expect_ident();
    auto g = dom->find(gt.text);
    if (!g) {
      ps.fail(gt, "unknown generator '" + gt.text + "' in algebra '" +
                      dom->name() + "'");
    }
    if (!dom->generator(*g).declared) {
      ps.fail(gt, "images of starred generators are induced by the star");
    }
    if (images.count(*g) != 0) {
      ps.fail(gt, "generator '" + gt.text + "' mapped twice");
    }
    ps.expect("=");
    images[*g] = ps.expression(*cod);
    ps.expect(";");
  }
  try {
    return Morphism::from_declared(name_tok.text, dom, cod, images);
  } catch (const Error& e) {
    ps.fail(name_tok, e.what());
  }
}

}  // namespace dsl

struct ParseOptions {
  bool star_close = false;  // apply star_closure to every parsed algebra
};

/// Parses .qalg text. Morphisms may refer to algebras of `base`; the
/// result contains base followed by the new declarations.
inline Library parse(std::string_view text, const Library& base = {},
                     const ParseOptions& opt = {}) {
  dsl::Parser ps(dsl::lex(text));
  Library lib = base;
  std::set<std::string> seen;
  while (!ps.at_end()) {
    const dsl::Token& kw = ps.peek();
    if (kw.kind == dsl::Tok::ident && kw.text == "algebra") {
      Presentation p = dsl::parse_algebra(ps);
      if (opt.star_close) {
        try {
          p = star_closure(p);
        } catch (const OrientationError& e) {
          ps.fail(kw, e.what());
        }
      }
      if (!seen.insert("algebra " + p.name()).second) {
        ps.fail(kw, "algebra '" + p.name() + "' defined twice");
      }
      lib.put(std::make_shared<const Presentation>(std::move(p)));
    } else if (kw.kind == dsl::Tok::ident && kw.text == "morphism") {
      Morphism m = dsl::parse_morphism(ps, lib);
      if (!seen.insert("morphism " + m.name()).second) {
        ps.fail(kw, "morphism '" + m.name() + "' defined twice");
      }
      lib.put(std::move(m));
    } else {
      ps.fail(kw, "expected 'algebra' or 'morphism'" + ps.found());
    }
  }
  return lib;
}

/// Parses a polynomial expression over pres; the whole text must be used.
inline NCPolynomial parse_expression(std::string_view text,
                                     const Presentation& pres) {
  dsl::Parser ps(dsl::lex(text));
  if (ps.at_end()) {
    ps.fail(ps.peek(), "empty expression");
  }
  NCPolynomial p = ps.expression(pres);
  if (!ps.at_end()) {
    ps.fail(ps.peek(), "unexpected trailing input" + ps.found());
  }
  return p;
}

// ---- serialization ------------------------------------------------------------

inline std::string serialize(const Presentation& pres) {
  if (pres.legs() > 1) {
    throw Error("tensor presentation '" + pres.name() +
                "' is serialized through its factors");
  }
  std::string out = "algebra " + pres.name() + " {\n";
  const auto& gens = pres.generators();
  std::size_t k = 0;
  while (k < gens.size()) {
    if (!gens[k].declared) {
      ++k;
      continue;
    }
    const bool self = gens[k].star_partner == k;
    std::string line = self ? "  selfadjoint " : "  gen ";
    bool first = true;
    while (k < gens.size() && gens[k].declared &&
           (gens[k].star_partner == k) == self) {
      line += (first ? "" : ", ") + gens[k].name;
      first = false;
      ++k;
    }
    out += line + ";\n";
  }
  std::string heavy;
  for (GenId g = 0; g < gens.size(); ++g) {
    if (gens[g].heavy) {
      heavy += (heavy.empty() ? "" : ", ") + pres.display_name(g);
    }
  }
  if (!heavy.empty()) {
    out += "  heavy " + heavy + ";\n";
  }
  for (GenId g = 0; g < gens.size(); ++g) {
    if (gens[g].declared && !gens[g].weight.empty()) {
      out += "  weight " + pres.display_name(g) + " = [";
      for (std::size_t j = 0; j < gens[g].weight.size(); ++j) {
        out += (j ? ", " : "") + std::to_string(gens[g].weight[j]);
      }
      out += "];\n";
    }
  }
  if (pres.star_closed()) {
    out += "  starclosed;\n";
  }
  for (const auto& r : pres.rules()) {
    out += "  rel " + pres.word_string(r.lhs) + " = " + pres.to_string(r.rhs) +
           ";\n";
  }
  return out + "}\n";
}

inline std::string tensor_label(const Presentation& p) {
  std::string s = p.name();
  std::string out;
  for (char c : s) {
    out += (c == '*') ? std::string(" * ") : std::string(1, c);
  }
  return out;
}

inline std::string serialize(const Morphism& m) {
  std::string out = "morphism " + m.name() + " : " +
                    tensor_label(m.domain()) + " -> " +
                    tensor_label(m.codomain()) + " {\n";
  for (GenId g = 0; g < m.domain().size(); ++g) {
    if (m.domain().generator(g).declared) {
      out += "  map " + m.domain().display_name(g) + " = " +
             m.codomain().to_string(m.image(g)) + ";\n";
    }
  }
  return out + "}\n";
}

/// Canonical text of the entries of lib not present in `base`.
inline std::string serialize(const Library& lib, const Library& base = {}) {
  std::string out;
  for (const auto& n : lib.algebra_order) {
    if (base.algebras.count(n) == 0) {
      out += (out.empty() ? "" : "\n") + serialize(*lib.algebras.at(n));
    }
  }
  for (const auto& n : lib.morphism_order) {
    if (base.morphisms.count(n) == 0) {
      out += (out.empty() ? "" : "\n") + serialize(lib.morphisms.at(n));
    }
  }
  return out;
}

}  // namespace qmink

#endif  // QMINK_DSL_HPP
