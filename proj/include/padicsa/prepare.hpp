#pragma once

#include <string>
#include <variant>
#include <vector>

#include "padicsa/cells.hpp"
#include "padicsa/lang.hpp"
#include "padicsa/oracle.hpp"
#include "padicsa/padic.hpp"
#include "padicsa/poly.hpp"

namespace padicsa {

/// On `cell`, theta(t) = U * h * [lambda^{-1} (t - c)]^{alpha/e} with U in
/// (1 + p^n Z_p) U_e. Type 0 cells use alpha = 0 and theta(c) = U * h.
struct PreparedPiece {
  PresentedCell cell;
  PadicNumber h;
  long alpha = 0;
  long e = 1;
  long n = 1;
};

/// Pieces for a polynomial over cells mod K^* (e = 1) partitioning K.
std::vector<PreparedPiece> prepare_poly(const UPoly& f, int n, const PadicConfig& cfg);

struct PrepareOptions {
  /// Throw RootExtractionError instead of dropping cells where the e-th
  /// power is not an e-th power (such cells lie outside the domain).
  bool strict = false;
};

/// Pieces over cells mod Q_{N,M}^* (N = e, M = n + 3 v_p(e)) for the function
/// whose e-th power is the factored expression. Poles are left out.
std::vector<PreparedPiece> prepare_param(const FactoredBasic& theta, int n, const PadicConfig& cfg,
                                         const PrepareOptions& opt = {});

/// Value of the function theta at t: an e-th root of the factored expression.
/// Throws DomainError at poles and RootExtractionError outside the domain.
PadicNumber eval_theta(const FactoredBasic& theta, const PadicNumber& t, const PadicConfig& cfg);

struct PointFailure {
  PadicNumber point;
  std::string reason;
};

struct ResidualReport {
  std::vector<PointFailure> failures;
  std::vector<PointFailure> errors;  // precision failures, not verdicts
  std::uint64_t checked = 0;
  bool ok() const { return failures.empty() && errors.empty(); }
};

/// The residual theta / (h [lambda^{-1}(t - c)]^{alpha/e}) at one point.
PadicNumber unit_residual(const PreparedPiece& piece, const FactoredBasic& theta, const PadicNumber& t,
                          const PadicConfig& cfg);

/// Tests the residual at every point of the sample lying in the piece's cell.
ResidualReport verify_unit_residual(const PreparedPiece& piece, const FactoredBasic& theta,
                                    const TruncatedSample& sample);
/// Same test at the given points (points outside the cell are skipped).
ResidualReport verify_unit_residual(const PreparedPiece& piece, const FactoredBasic& theta,
                                    const std::vector<PadicNumber>& points, const PadicConfig& cfg);

/// |theta|^e = |p_A / q_A| on the region.
struct NormWitness {
  long e = 1;
  UPoly pA;
  UPoly qA;
  std::variant<PresentedCell, NormalForm> region;
};

ResidualReport verify_norm_factor(const FactoredBasic& theta, const NormWitness& w, const TruncatedSample& sample);

}  // namespace padicsa
