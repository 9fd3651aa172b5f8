#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "padicsa/eval.hpp"
#include "padicsa/lang.hpp"
#include "padicsa/oracle.hpp"
#include "padicsa/padic.hpp"
#include "padicsa/refine.hpp"

namespace padicsa {

/// ZERO, INFINITY, or a nonzero constant (cells live over the one-point base).
struct Bound {
  enum class Kind { ZERO, INF, TERM };
  Kind kind = Kind::ZERO;
  PadicNumber value;

  static Bound zero() { return {}; }
  static Bound infinity() { return {Kind::INF, {}}; }
  static Bound term(PadicNumber v) { return {Kind::TERM, std::move(v)}; }
  /// The p-power with this valuation (ZERO for +inf, INF for -inf).
  static Bound of_valuation(long p, long w);
};

/// {t : |nu| <= |t - center| <= |mu|, t - center in lambda G}. Type 0 cells
/// (lambda = 0) are the single point {center}.
struct PresentedCell {
  PadicNumber center;
  Bound nu = Bound::zero();
  Bound mu = Bound::infinity();
  PadicNumber lambda;
  SubgroupSpec group;

  static PresentedCell point(PadicNumber c);
  int type() const { return lambda.is_zero() ? 0 : 1; }
  /// Valuation range of t - center: [v(mu), v(nu)], infinite ends as kNegInf / kPosInf.
  long w_lo() const;
  long w_hi() const;
  std::string to_string() const;
};

bool contains(const PresentedCell& A, const PadicNumber& t);

struct CellList {
  long N = 1;
  std::vector<PresentedCell> cells;
  std::vector<int> conjunct;  // conjunct of the source normal form each cell lies in
};

struct DecomposeOptions {
  int unit_level = 1;  // raised to 2 v_p(N) + 1 when smaller
};

/// Disjoint cells mod P_N^* whose union is the set defined by nf.
CellList decompose1(const NormalForm& nf, const PadicConfig& cfg, const DecomposeOptions& opt = {});

/// Membership of sample points in a list of cells, with a word-sized fast
/// path. Falls back to `contains` when the fast path cannot decide.
class CellMatcher {
 public:
  CellMatcher(const std::vector<PresentedCell>& cells, long window, const PadicConfig& cfg);
  bool member(std::size_t cell, const SamplePoint& t) const;
  std::size_t size() const { return compiled_.size(); }

 private:
  struct Compiled {
    bool fast = false;
    std::uint64_t modulus = 1;  // p^(S+A)
    std::uint64_t cres = 0;     // p^S * center mod modulus
    long w_lo = 0, w_hi = 0;
    long lambda_v = 0;
    std::uint64_t lambda_inv = 0;  // inverse of the unit of lambda mod p^m
    std::shared_ptr<const CosetTable> table;
    int m = 0;
    std::uint64_t pm = 1;
    const PresentedCell* cell = nullptr;
  };
  long p_;
  long S_;
  std::vector<std::uint64_t> pow_;  // p^i for fast arithmetic
  std::vector<Compiled> compiled_;
  PadicConfig cfg_;
};

struct PartitionReport {
  std::vector<SamplePoint> overlapping;  // in two or more cells
  std::vector<SamplePoint> uncovered;    // satisfy nf, in no cell
  std::vector<SamplePoint> extraneous;   // in some cell, fail nf
  std::vector<std::pair<SamplePoint, std::string>> errors;
  std::uint64_t checked = 0;
  bool ok() const { return overlapping.empty() && uncovered.empty() && extraneous.empty() && errors.empty(); }
};

PartitionReport check_partition(const CellList& cl, const NormalForm& nf, const TruncatedSample& sample);

/// The translation t -> shift + t.
struct Translation {
  PadicNumber shift;
  PadicNumber apply(const PadicNumber& s) const { return shift + s; }
  bool is_identity() const { return shift.is_zero(); }
};

struct Untwisted {
  PresentedCell standard;
  Translation map;
};

/// Random points of a cell: t = c + lambda * g with g drawn from G at
/// valuations inside the cell, preferring |v| <= window. A type 0 cell
/// yields its center.
std::vector<PadicNumber> sample_cell(const PresentedCell& A, std::size_t count, Rng& rng, long window,
                                     const PadicConfig& cfg);

/// Moves the cell to center 0; contains(A, map(s)) iff contains(standard, s).
Untwisted untwist(const PresentedCell& A);

}  // namespace padicsa
