#include "padicsa/skolem.hpp"

namespace padicsa {

const char* section_kind_name(SectionDescriptor::Kind k) {
  switch (k) {
    case SectionDescriptor::Kind::CENTER: return "center";
    case SectionDescriptor::Kind::LAMBDA: return "lambda";
    case SectionDescriptor::Kind::NU: return "nu";
    case SectionDescriptor::Kind::MU: return "mu";
  }
  return "";
}

PadicNumber section_point(const PresentedCell& A, const SectionDescriptor& s) {
  switch (s.kind) {
    case SectionDescriptor::Kind::CENTER: return A.center;
    case SectionDescriptor::Kind::LAMBDA: return A.center + A.lambda;
    case SectionDescriptor::Kind::NU: return A.center + A.nu.value / s.a;
    case SectionDescriptor::Kind::MU: return A.center + A.mu.value * s.a;
  }
  return A.center;
}

namespace {

// Representative r of the coset of x modulo the cell's group.
PadicNumber coset_rep(const PresentedCell& A, const PadicNumber& x, const PadicConfig& cfg) {
  const long p = cfg.p;
  if (A.group.kind == SubgroupKind::FULL) return PadicNumber::from_rational(p, 1);
  auto tab = CosetTable::get(p, A.group, cfg);
  return tab->reps()[static_cast<std::size_t>(tab->classify(x))];
}

}  // namespace

SectionDescriptor section(const PresentedCell& A, const PadicConfig& cfg) {
  SectionDescriptor s;
  const long p = cfg.p;
  s.a = PadicNumber::from_rational(p, 1);
  if (A.type() == 0) {
    s.kind = SectionDescriptor::Kind::CENTER;
  } else if (A.group.kind == SubgroupKind::UNIT_BALL_Ue) {
    // every element of the group has valuation 0
    long w = A.lambda.valuation();
    if ((A.w_lo() != kNegInf && w < A.w_lo()) || (A.w_hi() != kPosInf && w > A.w_hi()))
      throw EmptyCell("cell has no points: " + A.to_string());
    s.kind = SectionDescriptor::Kind::LAMBDA;
  } else if (A.nu.kind == Bound::Kind::TERM) {
    s.kind = SectionDescriptor::Kind::NU;
    s.a = coset_rep(A, A.nu.value / A.lambda, cfg);
  } else if (A.mu.kind == Bound::Kind::TERM) {
    s.kind = SectionDescriptor::Kind::MU;
    s.a = coset_rep(A, A.lambda / A.mu.value, cfg);
  } else {
    s.kind = SectionDescriptor::Kind::LAMBDA;
  }
  s.tau = section_point(A, s);
  if (!contains(A, s.tau)) throw EmptyCell("cell has no points: " + A.to_string());
  return s;
}

SectionReport verify_section(const PresentedCell& A, const SectionDescriptor& s, const PadicConfig& cfg) {
  (void)cfg;
  SectionReport rep;
  try {
    PadicNumber tau = section_point(A, s);
    if (!tau.agrees_with(s.tau)) rep.failures.push_back("stored point differs from the formula");
    if (s.kind == SectionDescriptor::Kind::NU || s.kind == SectionDescriptor::Kind::MU) {
      long N = std::max<long>(1, A.group.valuation_modulus());
      long va = s.a.valuation();
      if (va < 0 || va >= N) rep.failures.push_back("v(a) = " + std::to_string(va) + " outside [0, N)");
    }
    if (A.type() == 1) {
      PadicNumber d = tau - A.center;
      if (d.is_zero()) {
        rep.failures.push_back("point equals the center");
        return rep;
      }
      long w = d.valuation();
      if (A.w_hi() != kPosInf && w > A.w_hi()) rep.failures.push_back("below the lower norm bound |nu|");
      if (A.w_lo() != kNegInf && w < A.w_lo()) rep.failures.push_back("above the upper norm bound |mu|");
      if (!A.group.contains(d / A.lambda)) rep.failures.push_back("t - c not in lambda G");
    } else if (!contains(A, tau)) {
      rep.failures.push_back("point differs from the center");
    }
  } catch (const Error& e) {
    rep.failures.push_back(e.what());
  }
  return rep;
}

}  // namespace padicsa
