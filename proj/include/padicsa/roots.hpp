#pragma once

#include <utility>
#include <vector>

#include "padicsa/padic.hpp"
#include "padicsa/poly.hpp"

namespace padicsa {

/// Yun's algorithm: pairs (a_i, i) with f = lead * prod a_i^i, a_i monic,
/// squarefree and pairwise coprime.
std::vector<std::pair<UPoly, int>> squarefree_decomposition(const UPoly& f);

/// Pairwise coprime monic squarefree polynomials whose products reproduce
/// the squarefree parts of the inputs.
std::vector<UPoly> coprime_basis(const std::vector<UPoly>& polys);

/// Roots in Q_p of a squarefree polynomial with rational coefficients.
/// Rational roots come back exact; the others carry cfg.work_prec digits.
/// May return fewer roots than the degree.
std::vector<PadicNumber> padic_roots(const UPoly& f, const PadicConfig& cfg);

/// A family of polynomials over one shared set of distinct roots.
struct SplitSystem {
  struct Factored {
    bool zero = false;              // the polynomial is identically 0
    mpq_class lead;                 // leading coefficient
    std::vector<std::pair<int, int>> root_mult;  // (root index, multiplicity)
  };
  long p = 0;
  std::vector<UPoly> basis;
  std::vector<PadicNumber> roots;
  std::vector<int> root_basis;  // basis index for each root
  std::vector<Factored> polys;

  /// f_i(x) as a p-adic number, exact 0 at its own roots.
  PadicNumber value_at_root(std::size_t poly, std::size_t root) const;
  /// Multiplicity of a root in a polynomial.
  int multiplicity(std::size_t poly, std::size_t root) const;
};

/// Splits every polynomial into linear factors over Q_p. Throws
/// UnsupportedSplitting if some factor has no root in Q_p.
SplitSystem split_system(const std::vector<UPoly>& polys, const PadicConfig& cfg);

/// a/b with a = b*x mod m and |a|, |b| <= sqrt(m/2), if one exists.
bool rational_reconstruction(const mpz_class& x, const mpz_class& m, mpq_class& out);

}  // namespace padicsa
