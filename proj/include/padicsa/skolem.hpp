#pragma once

#include <string>
#include <vector>

#include "padicsa/cells.hpp"
#include "padicsa/oracle.hpp"

namespace padicsa {

/// A point of a cell, given by one of
///   CENTER  tau = c            (type 0)
///   LAMBDA  tau = c + lambda   (no bounds)
///   NU      tau = c + nu / a
///   MU      tau = c + mu * a
/// with 0 <= v(a) < N. Over the one-point base there is a single piece.
struct SectionDescriptor {
  enum class Kind { CENTER, LAMBDA, NU, MU };
  Kind kind = Kind::CENTER;
  PadicNumber a;
  PadicNumber tau;
};

const char* section_kind_name(SectionDescriptor::Kind k);

/// Computes tau from the descriptor's formula and the cell's data.
PadicNumber section_point(const PresentedCell& A, const SectionDescriptor& s);

SectionDescriptor section(const PresentedCell& A, const PadicConfig& cfg);

struct SectionReport {
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

/// Checks that the descriptor's point lies in the cell, that a has
/// 0 <= v(a) < N and that the stored tau matches the formula.
SectionReport verify_section(const PresentedCell& A, const SectionDescriptor& s, const PadicConfig& cfg);

}  // namespace padicsa
