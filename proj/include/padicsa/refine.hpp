#pragma once

#include <climits>
#include <vector>

#include "padicsa/padic.hpp"
#include "padicsa/poly.hpp"
#include "padicsa/roots.hpp"

namespace padicsa {

constexpr long kNegInf = LONG_MIN;
constexpr long kPosInf = LONG_MAX;

/// One region of the refinement of K: either the single point {center}, or
/// the annulus {t : w_lo <= v(t - center) <= w_hi} (bounds may be infinite).
///
/// For every polynomial f_i of the input and every t in the region,
///   f_i(t) = U * h[i] * (t - center)^alpha[i]   with U in 1 + p^n Z_p.
/// On a point region alpha[i] is the multiplicity of the center as a root of
/// f_i and h[i] the value of f_i / (t - center)^alpha[i] there.
struct RefinePiece {
  bool point = false;
  PadicNumber center;
  int center_root = -1;  // root index of the center, -1 if not a root
  long w_lo = kNegInf;
  long w_hi = kPosInf;
  std::vector<int> alpha;
  std::vector<PadicNumber> h;
};

struct Refinement {
  SplitSystem system;
  int level = 1;
  std::vector<RefinePiece> pieces;
};

/// Partitions K into point and annulus regions on which every polynomial is
/// a unit of 1 + p^n Z_p times a constant times a power of (t - center).
/// Centers are roots of the polynomials where a region contains one, and
/// exact rationals otherwise. Throws UnsupportedSplitting when some
/// polynomial does not split over Q_p.
Refinement refine(const std::vector<UPoly>& polys, int n, const PadicConfig& cfg);

}  // namespace padicsa
