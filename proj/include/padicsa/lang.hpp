#pragma once

#include <string>
#include <vector>

#include "padicsa/padic.hpp"
#include "padicsa/poly.hpp"

namespace padicsa {

/// Leaf predicates. QNM is surface syntax only; normalize rewrites it into
/// POWER_COSET leaves.
enum class CondKind { ZERO, NORM_LE, POWER_COSET, QNM };

/// One atomic condition on polynomial terms.
///
///   ZERO        f = 0
///   NORM_LE     |g| <= |f|
///   POWER_COSET f in r P_N. The identity coset (r = 0) contains 0 unless
///               `star` is set; other cosets never contain 0.
///   QNM         f in Q_{N,M}
struct BasicCondition {
  CondKind kind = CondKind::ZERO;
  MPoly f;
  MPoly g;
  long N = 1;
  int r = 0;
  bool star = false;
  long M = 1;

  static BasicCondition zero(MPoly f);
  static BasicCondition norm_le(MPoly g, MPoly f);
  static BasicCondition power_coset(MPoly f, long N, int r, bool star = false);
  static BasicCondition qnm(MPoly f, long N, long M);

  bool operator==(const BasicCondition& o) const;
  bool operator<(const BasicCondition& o) const;
};

/// Boolean tree over basic conditions.
struct Formula {
  enum class Op { TRUE, FALSE, LEAF, AND, OR, NOT };
  Op op = Op::TRUE;
  BasicCondition leaf;
  std::vector<Formula> kids;

  static Formula truth(bool v);
  static Formula atom(BasicCondition c);
  static Formula conj(std::vector<Formula> kids);
  static Formula disj(std::vector<Formula> kids);
  static Formula negate(Formula f);

  bool operator==(const Formula& o) const;
  /// Maximum nesting of connectives (a leaf has depth 0).
  int depth() const;
};

/// Disjunction of conjunctions, every POWER_COSET leaf at the common power N.
/// No conjunctions means false; an empty conjunction means true.
struct NormalForm {
  long N = 1;
  std::vector<std::vector<BasicCondition>> conjuncts;
};

/// h * prod q_j^{k_j}, optionally read as the function whose e-th power it
/// is (written root(e, ...)).
struct FactoredBasic {
  mpq_class coeff = 1;
  std::vector<std::pair<UPoly, int>> factors;
  long e = 1;

  /// The factored expression (the e-th power of the function).
  PadicNumber eval_power(const PadicNumber& t) const;
  mpq_class eval_power(const mpq_class& t) const;
  /// Expanded numerator and denominator of the factored expression.
  UPoly numerator() const;
  UPoly denominator() const;
  std::string to_string() const;
};

/// Context shared by parsing and printing: variable names and the prime
/// substituted for the symbol `p`.
struct LangContext {
  std::vector<std::string> vars{"t"};
  long p = 5;
};

Formula parse_formula(const std::string& text, const LangContext& ctx);
MPoly parse_poly(const std::string& text, const LangContext& ctx);
FactoredBasic parse_factored(const std::string& text, const LangContext& ctx);

std::string print_condition(const BasicCondition& c, const std::vector<std::string>& vars);
std::string print_formula(const Formula& f, const std::vector<std::string>& vars);
std::string print_normal_form(const NormalForm& nf, const std::vector<std::string>& vars);

/// NOT-free formula equivalent to the negation of c.
Formula complement_basic(const BasicCondition& c, const PadicConfig& cfg);

struct NormalizeOptions {
  std::size_t max_conjuncts = 200000;
  long power = 1;  // the common power is a multiple of this
};

NormalForm normalize(const Formula& f, const PadicConfig& cfg, const NormalizeOptions& opt = {});

/// Reference semantics on exact or approximate points.
bool decide_condition(const BasicCondition& c, const std::vector<PadicNumber>& point, const PadicConfig& cfg);
bool decide(const Formula& f, const std::vector<PadicNumber>& point, const PadicConfig& cfg);
bool decide(const NormalForm& nf, const std::vector<PadicNumber>& point, const PadicConfig& cfg);

/// Every distinct polynomial occurring in the formula, in first-seen order.
std::vector<MPoly> collect_polys(const Formula& f);
std::vector<MPoly> collect_polys(const NormalForm& nf);

}  // namespace padicsa
