#pragma once

#include <gmpxx.h>

#include <climits>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "padicsa/error.hpp"

namespace padicsa {

/// Prime and working precision shared by a computation.
struct PadicConfig {
  long p = 5;
  int work_prec = 16;  // stored unit digits, base p

  PadicConfig() = default;
  PadicConfig(long prime, int work_precision);
};

bool is_prime(long n);

/// p^k as a GMP integer (k >= 0).
mpz_class pow_p(long p, long k);

/// Multiplicity of p in n (n != 0).
long vp(const mpz_class& n, long p);
long vp(long n, long p);

/// An element of Q_p.
///
/// Two representations share the type. An exact element carries the rational
/// it stands for; its digits are produced on demand to any length. An
/// approximate element is p^v * (u + O(p^k)) with p not dividing u and k the
/// tracked relative precision. Arithmetic on approximate inputs never
/// increases precision; a sum whose known digits cancel entirely raises
/// InsufficientPrecision instead of inventing a zero.
class PadicNumber {
 public:
  static constexpr long kInfiniteValuation = LONG_MAX;
  static constexpr int kExactPrecision = INT_MAX;

  /// Exact zero over an unspecified prime.
  PadicNumber() = default;

  static PadicNumber zero(long p);
  static PadicNumber from_rational(long p, const mpq_class& q);
  static PadicNumber from_integer(long p, long long n);
  /// p^k, exact.
  static PadicNumber uniformizer_power(long p, long k);
  /// p^v * unit with `prec` known digits; unit is reduced mod p^prec.
  static PadicNumber approximate(long p, long v, const mpz_class& unit, int prec);

  long prime() const { return p_; }
  bool is_zero() const { return zero_; }
  bool is_exact() const { return exact_; }
  /// kInfiniteValuation for zero.
  long valuation() const { return zero_ ? kInfiniteValuation : v_; }
  /// Relative precision; kExactPrecision for exact elements.
  int precision() const { return exact_ ? kExactPrecision : prec_; }
  /// v + precision, saturating for exact elements.
  long absolute_precision() const;

  /// Unit part modulo p^digits. Throws InsufficientPrecision when more
  /// digits are requested than are known. Zero has no unit (DomainError).
  mpz_class unit(int digits) const;
  /// Unit digits as stored (approximate) or to `digits` (exact).
  std::vector<long> unit_digits(int digits) const;

  /// The rational value, for exact elements.
  const mpq_class& rational() const;

  /// Same element truncated to at most `digits` relative digits.
  PadicNumber truncated(int digits) const;
  /// Exact rational whose digits agree with this element on
  /// positions < absolute position `abs_pos` (an element of Z[1/p]).
  mpq_class truncation_below(long abs_pos) const;
  /// Digit at absolute position `pos` (coefficient of p^pos).
  long digit_at(long pos) const;

  PadicNumber operator-() const;
  friend PadicNumber operator+(const PadicNumber& a, const PadicNumber& b);
  friend PadicNumber operator-(const PadicNumber& a, const PadicNumber& b);
  friend PadicNumber operator*(const PadicNumber& a, const PadicNumber& b);
  friend PadicNumber operator/(const PadicNumber& a, const PadicNumber& b);
  PadicNumber& operator+=(const PadicNumber& o) { return *this = *this + o; }
  PadicNumber& operator-=(const PadicNumber& o) { return *this = *this - o; }
  PadicNumber& operator*=(const PadicNumber& o) { return *this = *this * o; }
  PadicNumber& operator/=(const PadicNumber& o) { return *this = *this / o; }
  PadicNumber pow(long n) const;
  PadicNumber inverse() const;

  /// Structural identity: same representation kind, value and precision.
  bool identical(const PadicNumber& o) const;
  /// Values agree on every digit known to both.
  bool agrees_with(const PadicNumber& o) const;
  /// Exact equality when decidable; throws InsufficientPrecision otherwise.
  bool equals(const PadicNumber& o) const;

  /// "a/b" for exact elements, "p^v * (d0 + d1*p + ... + O(p^k))" otherwise.
  std::string to_string() const;

 private:
  long p_ = 0;
  bool zero_ = true;
  bool exact_ = true;
  long v_ = 0;
  int prec_ = 0;
  mpz_class unit_;     // approximate: unit mod p^prec
  mpq_class q_;        // exact: value
  mpz_class num_unit_; // exact: numerator with p removed
  mpz_class den_unit_; // exact: denominator with p removed

  static PadicNumber exact_from(long p, mpq_class q);
  static void check_primes(const PadicNumber& a, const PadicNumber& b, long& p);
};

/// v(x), or PadicNumber::kInfiniteValuation for 0.
long valuation(const PadicNumber& x);

/// Digits of the unit needed to decide membership in P_N.
int pn_decision_digits(long p, long N);

/// x is an N-th power in Q_p.
bool in_PN(const PadicNumber& x, long N);

/// x lies in Q_{N,M} = {0} u U_k p^{kN}(1 + p^M Z_p).
bool in_QNM(const PadicNumber& x, long N, long M);

/// The N-th root of x in Q_{1, v_p(N)+1}, for x in Q_{N, 2v_p(N)+1}.
/// Exact inputs are materialised at `work_prec` digits.
PadicNumber nth_root(const PadicNumber& x, long N, int work_prec);

/// Some e-th root of x, for any x in P_e (residue root chosen as the
/// smallest residue, then lifted). Throws RootExtractionError if x is not
/// an e-th power.
PadicNumber root_of_power(const PadicNumber& x, long e, int work_prec);

/// Representatives of K^*/P_N^*: p^i u with 0 <= i < N and u a unit
/// residue, deduplicated by the in_PN quotient test. 1 comes first.
std::vector<PadicNumber> coset_reps(long N, const PadicConfig& cfg);

/// The e-th roots of unity of Q_p to `digits` digits.
std::vector<PadicNumber> roots_of_unity(long e, long p, int digits);

/// x lies in (1 + p^n Z_p) * U_e.
bool in_Uen(const PadicNumber& x, long e, long n);

/// Kind of multiplicative subgroup used by cells.
enum class SubgroupKind { FULL, PN, QNM, UNIT_BALL_Ue };

struct SubgroupSpec {
  SubgroupKind kind = SubgroupKind::FULL;
  long N = 1;
  long M = 1;
  long e = 1;
  long n = 1;

  static SubgroupSpec full() { return {}; }
  static SubgroupSpec pn(long N);
  static SubgroupSpec qnm(long N, long M);
  static SubgroupSpec unit_ball(long e, long n);

  /// x is in the group (in particular x != 0).
  bool contains(const PadicNumber& x) const;
  /// Unit digits needed by `contains`.
  int decision_digits(long p) const;
  /// v(G) = modulus * Z.
  long valuation_modulus() const;
  /// Representatives of K^*/G for FULL, PN and QNM.
  std::vector<PadicNumber> coset_reps(const PadicConfig& cfg) const;

  std::string to_string() const;
  bool operator==(const SubgroupSpec&) const = default;
};

/// Residue-level classifier for K^*/G: maps (v mod modulus, unit mod p^m)
/// to the index of the coset representative. Built once per (p, G) and
/// shared through a process-wide cache.
class CosetTable {
 public:
  static std::shared_ptr<const CosetTable> get(long p, const SubgroupSpec& g,
                                               const PadicConfig& cfg);

  long prime() const { return p_; }
  int digits() const { return m_; }
  const mpz_class& modulus_pm() const { return pm_; }
  std::uint64_t modulus_pm_u64() const { return pm_u64_; }
  const std::vector<PadicNumber>& reps() const { return reps_; }
  std::size_t index() const { return reps_.size(); }

  /// Coset index of a nonzero element given its valuation and unit residue.
  int classify(long v, std::uint64_t unit_mod_pm) const;
  int classify(const PadicNumber& x) const;
  /// x/y in G, for nonzero x, y given by residues.
  bool same_coset(long vx, std::uint64_t ux, long vy, std::uint64_t uy) const;

 private:
  long p_ = 0;
  int m_ = 0;
  long modulus_ = 1;
  mpz_class pm_;
  std::uint64_t pm_u64_ = 0;
  std::vector<PadicNumber> reps_;
  // table_[(v mod modulus) * pm + u] = rep index, -1 for non-units
  std::vector<int> table_;
};

/// Modular inverse helper on uint64 residues (p^m < 2^62).
std::uint64_t inverse_mod_u64(std::uint64_t a, std::uint64_t m);

}  // namespace padicsa
