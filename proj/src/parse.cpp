#include <cctype>
#include <sstream>

#include "padicsa/lang.hpp"

namespace padicsa {

namespace {

enum class Tok { NUM, IDENT, OP, END };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

std::vector<Token> tokenize(const std::string& s) {
  std::vector<Token> out;
  std::size_t i = 0;
  static const char* two[] = {"<=", ">=", "&&", "||", "==", "!="};
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      out.push_back({Tok::NUM, s.substr(i, j - i), i});
      i = j;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      out.push_back({Tok::IDENT, s.substr(i, j - i), i});
      i = j;
      continue;
    }
    bool matched = false;
    for (const char* t : two) {
      if (s.compare(i, 2, t) == 0) {
        out.push_back({Tok::OP, t, i});
        i += 2;
        matched = true;
        break;
      }
    }
    if (matched) continue;
    if (std::string("+-*/^()|=<>!,").find(c) != std::string::npos) {
      out.push_back({Tok::OP, std::string(1, c), i});
      ++i;
      continue;
    }
    throw SyntaxError(std::string("unexpected character '") + c + "'", i);
  }
  out.push_back({Tok::END, "", s.size()});
  return out;
}

class Parser {
 public:
  Parser(const std::string& text, const LangContext& ctx) : toks_(tokenize(text)), ctx_(ctx) {}

  Formula formula_all() {
    Formula f = or_expr();
    expect_end();
    return f;
  }

  MPoly poly_all() {
    MPoly f = poly();
    expect_end();
    return f;
  }

  FactoredBasic factored_all() {
    std::size_t save = i_;
    FactoredBasic fb;
    if (is_ident("root")) {
      ++i_;
      expect("(");
      fb.e = positive_int("root index");
      expect(",");
      FactoredBasic inner = factored_product_or_poly();
      expect(")");
      expect_end();
      inner.e = fb.e;
      return inner;
    }
    i_ = save;
    fb = factored_product_or_poly();
    expect_end();
    return fb;
  }

 private:
  std::vector<Token> toks_;
  const LangContext& ctx_;
  std::size_t i_ = 0;

  const Token& peek() const { return toks_[i_]; }
  bool is_op(const char* s) const { return peek().kind == Tok::OP && peek().text == s; }
  bool is_ident(const char* s) const { return peek().kind == Tok::IDENT && peek().text == s; }

  [[noreturn]] void fail(const std::string& msg) const { throw SyntaxError(msg, peek().pos); }

  void expect(const char* s) {
    if (!is_op(s)) fail(std::string("expected '") + s + "'");
    ++i_;
  }

  void expect_end() {
    if (peek().kind != Tok::END) fail("unexpected trailing input '" + peek().text + "'");
  }

  long positive_int(const char* what) {
    if (peek().kind != Tok::NUM) fail(std::string("expected ") + what);
    long v = std::stol(peek().text);
    if (v < 1) fail(std::string(what) + " must be >= 1");
    ++i_;
    return v;
  }

  std::size_t nv() const { return ctx_.vars.size(); }

  // ---- polynomials
  MPoly poly() {
    bool neg = false;
    if (is_op("-")) {
      neg = true;
      ++i_;
    } else if (is_op("+")) {
      ++i_;
    }
    MPoly acc = term();
    if (neg) acc = -acc;
    while (is_op("+") || is_op("-")) {
      bool minus = is_op("-");
      ++i_;
      MPoly t = term();
      acc = minus ? acc - t : acc + t;
    }
    return acc;
  }

  MPoly term() {
    MPoly acc = factor();
    while (is_op("*") || is_op("/")) {
      bool div = is_op("/");
      ++i_;
      std::size_t pos = peek().pos;
      MPoly f = factor();
      if (div) {
        if (!f.is_constant() || f.is_zero())
          throw SyntaxError("division by a non-constant or zero polynomial", pos);
        acc = acc.scaled(1 / f.constant_term());
      } else {
        acc = acc * f;
      }
    }
    return acc;
  }

  MPoly factor() {
    MPoly b = base();
    if (is_op("^")) {
      ++i_;
      if (peek().kind != Tok::NUM) fail("expected a nonnegative integer exponent");
      int k = std::stoi(peek().text);
      ++i_;
      b = b.pow(k);
    }
    return b;
  }

  MPoly base() {
    const Token& t = peek();
    if (t.kind == Tok::NUM) {
      ++i_;
      return MPoly::constant(nv(), mpq_class(mpz_class(t.text)));
    }
    if (t.kind == Tok::IDENT) {
      for (std::size_t k = 0; k < ctx_.vars.size(); ++k)
        if (ctx_.vars[k] == t.text) {
          ++i_;
          return MPoly::variable(nv(), k);
        }
      if (t.text == "p") {
        ++i_;
        return MPoly::constant(nv(), mpq_class(ctx_.p));
      }
      throw ArityError("unknown variable '" + t.text + "' at offset " + std::to_string(t.pos));
    }
    if (is_op("(")) {
      ++i_;
      MPoly f = poly();
      expect(")");
      return f;
    }
    if (is_op("-")) {
      ++i_;
      return -factor();
    }
    fail("expected a polynomial");
  }

  // ---- factored terms
  FactoredBasic factored_product_or_poly() {
    std::size_t save = i_;
    try {
      FactoredBasic fb = factored_product();
      if (is_op(")") || peek().kind == Tok::END) return fb;
    } catch (const SyntaxError&) {
    }
    i_ = save;
    MPoly f = poly();
    FactoredBasic fb;
    add_factor(fb, f, 1);
    return fb;
  }

  void add_factor(FactoredBasic& fb, const MPoly& f, int k) {
    if (nv() != 1) throw ArityError("factored terms are univariate");
    if (f.is_zero()) fail("zero factor");
    if (f.is_constant()) {
      mpq_class c = f.constant_term();
      for (int j = 0; j < std::abs(k); ++j) fb.coeff = k > 0 ? mpq_class(fb.coeff * c) : mpq_class(fb.coeff / c);
      return;
    }
    UPoly u = f.to_univariate(0);
    // keep factors monic up to the coefficient
    mpq_class lc = u.lead();
    for (int j = 0; j < std::abs(k); ++j) fb.coeff = k > 0 ? mpq_class(fb.coeff * lc) : mpq_class(fb.coeff / lc);
    u = u.monic();
    for (auto& [q, e] : fb.factors)
      if (q == u) {
        e += k;
        return;
      }
    fb.factors.emplace_back(u, k);
  }

  FactoredBasic factored_product() {
    FactoredBasic fb;
    int sign = 1;
    if (is_op("-")) {
      ++i_;
      fb.coeff = -1;
    }
    for (;;) {
      MPoly b = fbase();
      int k = 1;
      if (is_op("^")) {
        ++i_;
        int s = 1;
        if (is_op("-")) {
          s = -1;
          ++i_;
        }
        if (peek().kind != Tok::NUM) fail("expected an integer exponent");
        k = s * std::stoi(peek().text);
        ++i_;
      }
      add_factor(fb, b, sign * k);
      if (is_op("*")) {
        sign = 1;
      } else if (is_op("/")) {
        sign = -1;
      } else {
        break;
      }
      ++i_;
    }
    for (std::size_t j = 0; j < fb.factors.size();) {
      if (fb.factors[j].second == 0)
        fb.factors.erase(fb.factors.begin() + static_cast<long>(j));
      else
        ++j;
    }
    return fb;
  }

  MPoly fbase() {
    if (is_op("(")) {
      ++i_;
      MPoly f = poly();
      expect(")");
      return f;
    }
    return base();
  }

  // ---- formulas
  Formula or_expr() {
    std::vector<Formula> kids{and_expr()};
    while (is_op("||")) {
      ++i_;
      kids.push_back(and_expr());
    }
    return kids.size() == 1 ? kids[0] : Formula::disj(std::move(kids));
  }

  Formula and_expr() {
    std::vector<Formula> kids{not_expr()};
    while (is_op("&&")) {
      ++i_;
      kids.push_back(not_expr());
    }
    return kids.size() == 1 ? kids[0] : Formula::conj(std::move(kids));
  }

  Formula not_expr() {
    if (is_op("!")) {
      ++i_;
      return Formula::negate(not_expr());
    }
    return primary();
  }

  Formula primary() {
    if (is_ident("true")) {
      ++i_;
      return Formula::truth(true);
    }
    if (is_ident("false")) {
      ++i_;
      return Formula::truth(false);
    }
    if (is_op("(")) {
      std::size_t save = i_;
      try {
        return atom();
      } catch (const SyntaxError& first) {
        i_ = save + 1;
        try {
          Formula f = or_expr();
          expect(")");
          return f;
        } catch (const SyntaxError& second) {
          if (first.position() >= second.position()) throw first;
          throw;
        }
      } catch (const ArityError&) {
        // `(false)` and friends read as a polynomial in an unknown variable first
        i_ = save + 1;
        Formula f = or_expr();
        expect(")");
        return f;
      }
    }
    return atom();
  }

  Formula atom() {
    if (is_op("|")) {
      ++i_;
      MPoly g = poly();
      expect("|");
      std::string op = peek().text;
      if (!(is_op("<=") || is_op("<") || is_op(">=") || is_op(">") || is_op("=")))
        fail("expected a norm comparison");
      ++i_;
      expect("|");
      MPoly f = poly();
      expect("|");
      if (op == "<=") return Formula::atom(BasicCondition::norm_le(g, f));
      if (op == ">=") return Formula::atom(BasicCondition::norm_le(f, g));
      if (op == "<") return Formula::negate(Formula::atom(BasicCondition::norm_le(f, g)));
      if (op == ">") return Formula::negate(Formula::atom(BasicCondition::norm_le(g, f)));
      return Formula::conj({Formula::atom(BasicCondition::norm_le(g, f)),
                            Formula::atom(BasicCondition::norm_le(f, g))});
    }
    MPoly f = poly();
    if (is_op("=") || is_op("==")) {
      ++i_;
      MPoly g = poly();
      return Formula::atom(BasicCondition::zero(f - g));
    }
    if (is_op("!=")) {
      ++i_;
      MPoly g = poly();
      return Formula::negate(Formula::atom(BasicCondition::zero(f - g)));
    }
    if (is_ident("in")) {
      ++i_;
      return set_membership(f);
    }
    fail("expected '=', '!=' or 'in'");
  }

  // P_N, P_N*, coset(r, P_N), Q(N, M)
  Formula set_membership(const MPoly& f) {
    const Token& t = peek();
    if (t.kind == Tok::IDENT && t.text.rfind("P_", 0) == 0) {
      long N = power_suffix(t);
      ++i_;
      bool star = false;
      if (is_op("*")) {
        star = true;
        ++i_;
      }
      return Formula::atom(BasicCondition::power_coset(f, N, 0, star));
    }
    if (is_ident("coset")) {
      ++i_;
      expect("(");
      if (peek().kind != Tok::NUM) fail("expected a coset index");
      int r = std::stoi(peek().text);
      ++i_;
      expect(",");
      const Token& s = peek();
      if (s.kind != Tok::IDENT || s.text.rfind("P_", 0) != 0) fail("expected P_N");
      long N = power_suffix(s);
      ++i_;
      bool star = false;
      if (is_op("*")) {
        star = true;
        ++i_;
      }
      expect(")");
      return Formula::atom(BasicCondition::power_coset(f, N, r, star && r == 0));
    }
    if (is_ident("Q")) {
      ++i_;
      expect("(");
      long N = positive_int("N");
      expect(",");
      long M = positive_int("M");
      expect(")");
      return Formula::atom(BasicCondition::qnm(f, N, M));
    }
    fail("expected P_N, coset(r, P_N) or Q(N, M)");
  }

  long power_suffix(const Token& t) {
    std::string digits = t.text.substr(2);
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
      throw SyntaxError("malformed power set '" + t.text + "'", t.pos);
    long N = std::stol(digits);
    if (N < 1) throw SyntaxError("power N must be >= 1", t.pos);
    return N;
  }
};

}  // namespace

Formula parse_formula(const std::string& text, const LangContext& ctx) {
  return Parser(text, ctx).formula_all();
}

MPoly parse_poly(const std::string& text, const LangContext& ctx) { return Parser(text, ctx).poly_all(); }

FactoredBasic parse_factored(const std::string& text, const LangContext& ctx) {
  return Parser(text, ctx).factored_all();
}

// ---------------------------------------------------------------------------
// printing

std::string print_condition(const BasicCondition& c, const std::vector<std::string>& vars) {
  auto P = [&](const MPoly& m) { return m.to_string(vars); };
  switch (c.kind) {
    case CondKind::ZERO: return P(c.f) + " = 0";
    case CondKind::NORM_LE: return "|" + P(c.g) + "| <= |" + P(c.f) + "|";
    case CondKind::POWER_COSET: {
      std::string set = "P_" + std::to_string(c.N) + (c.star ? "*" : "");
      if (c.r == 0) return "(" + P(c.f) + ") in " + set;
      return "(" + P(c.f) + ") in coset(" + std::to_string(c.r) + ", " + set + ")";
    }
    case CondKind::QNM:
      return "(" + P(c.f) + ") in Q(" + std::to_string(c.N) + ", " + std::to_string(c.M) + ")";
  }
  return "";
}

std::string print_formula(const Formula& f, const std::vector<std::string>& vars) {
  switch (f.op) {
    case Formula::Op::TRUE: return "true";
    case Formula::Op::FALSE: return "false";
    case Formula::Op::LEAF: return print_condition(f.leaf, vars);
    case Formula::Op::NOT: return "!(" + print_formula(f.kids[0], vars) + ")";
    case Formula::Op::AND:
    case Formula::Op::OR: {
      std::string sep = f.op == Formula::Op::AND ? " && " : " || ";
      std::string out;
      for (std::size_t i = 0; i < f.kids.size(); ++i) {
        if (i) out += sep;
        out += "(" + print_formula(f.kids[i], vars) + ")";
      }
      return out;
    }
  }
  return "";
}

std::string print_normal_form(const NormalForm& nf, const std::vector<std::string>& vars) {
  if (nf.conjuncts.empty()) return "false";
  std::string out;
  for (std::size_t i = 0; i < nf.conjuncts.size(); ++i) {
    if (i) out += " || ";
    const auto& cj = nf.conjuncts[i];
    if (cj.empty()) {
      out += "true";
      continue;
    }
    out += "(";
    for (std::size_t j = 0; j < cj.size(); ++j) {
      if (j) out += " && ";
      out += "(" + print_condition(cj[j], vars) + ")";
    }
    out += ")";
  }
  return out;
}

}  // namespace padicsa
