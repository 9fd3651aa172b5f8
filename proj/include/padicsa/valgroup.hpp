#pragma once

#include <optional>
#include <string>
#include <vector>

#include "padicsa/cells.hpp"
#include "padicsa/lang.hpp"
#include "padicsa/oracle.hpp"
#include "padicsa/padic.hpp"

namespace padicsa {

/// zeta[slot] + sum_j a[j] * (X_j - c_j) / n_j over the earlier rows j.
struct PresburgerBound {
  int slot = 0;
  std::vector<long> a;
};

/// Row i: optional bounds on X_i and the congruence X_i = c mod n.
struct PresburgerRow {
  std::optional<PresburgerBound> lower;
  std::optional<PresburgerBound> upper;
  long c = 0;
  long n = 1;
};

/// A cell of Z^d cut out by the rows, evaluated against a parameter
/// vector zeta of length 2d.
struct PresburgerCell {
  int d = 1;
  std::vector<PresburgerRow> rows;
};

bool pres_member(const PresburgerCell& cell, const std::vector<long>& zeta, const std::vector<long>& x);

/// pi^pi_exp * prod t_i^t[i] * prod z_j^z[j], exponents of any sign.
struct Monomial {
  std::vector<long> t;
  std::vector<long> z;
  long pi_exp = 0;

  PadicNumber eval(const std::vector<PadicNumber>& tv, const std::vector<PadicNumber>& zv, long p) const;
  std::string to_string() const;
};

/// NORM_LE(g, f): |g| <= |f|.  CONG(f, c, n): v(f) = c mod n.
struct RingCondition {
  enum class Kind { NORM_LE, CONG };
  Kind kind = Kind::NORM_LE;
  Monomial g;
  Monomial f;
  long c = 0;
  long n = 1;

  std::string to_string() const;
};

bool eval_ring(const RingCondition& rc, const std::vector<PadicNumber>& t, const std::vector<PadicNumber>& z, long p);
bool eval_ring(const std::vector<RingCondition>& rcs, const std::vector<PadicNumber>& t,
               const std::vector<PadicNumber>& z, long p);

/// Conditions on (t, z) in (K^*)^d x (K^*)^{2d} that hold exactly when
/// pres_member holds at (v(t), v(z)).
std::vector<RingCondition> translate(const PresburgerCell& cell);

/// The valuations v(t - c) for t in a type 1 cell, with its parameters.
struct ValuationImage {
  PresburgerCell cell;
  std::vector<long> zeta;
};

ValuationImage image_valuation(const PresentedCell& A);

/// Least member of a one-dimensional cell. Throws Unbounded or EmptySet.
long zmin(const PresburgerCell& cell, const std::vector<long>& zeta);

/// The valuation of the next larger norm.
inline long succ_norm(long w) { return w - 1; }

struct EvpResult {
  long valuation = 0;   // max of v(f) over the domain
  SamplePoint witness;  // where it is attained
  std::uint64_t points = 0;
};

/// Minimum of |f| over the sample points of a bounded domain (a union of
/// cells). Each point stands for the ball t + p^(v(t)+k) Z_p (0 for
/// p^(B+1) Z_p); v(f) must be constant on that ball, otherwise
/// InsufficientPrecision. Throws VanishingFunction when f has a zero at a
/// sample point and UnboundedDomain for an unbounded cell.
EvpResult evp_min(const FactoredBasic& f, const std::vector<PresentedCell>& domain, const TruncatedSample& sample);
EvpResult evp_min(const FactoredBasic& f, const PresentedCell& domain, const TruncatedSample& sample);

}  // namespace padicsa
