#include "padicsa/valgroup.hpp"

#include <numeric>
#include <sstream>

namespace padicsa {

namespace {

long mod_pos(long a, long n) { return ((a % n) + n) % n; }

long bound_value(const PresburgerBound& b, const PresburgerCell& cell, const std::vector<long>& zeta,
                 const std::vector<long>& x) {
  long acc = zeta.at(static_cast<std::size_t>(b.slot));
  for (std::size_t j = 0; j < b.a.size(); ++j) {
    if (b.a[j] == 0) continue;
    const auto& rj = cell.rows[j];
    acc += b.a[j] * ((x[j] - rj.c) / rj.n);
  }
  return acc;
}

}  // namespace

bool pres_member(const PresburgerCell& cell, const std::vector<long>& zeta, const std::vector<long>& x) {
  if (x.size() != static_cast<std::size_t>(cell.d) || cell.rows.size() != x.size())
    throw ArityError("point arity does not match the cell");
  for (std::size_t i = 0; i < x.size(); ++i)
    if (mod_pos(x[i] - cell.rows[i].c, cell.rows[i].n) != 0) return false;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const auto& r = cell.rows[i];
    if (r.lower && x[i] < bound_value(*r.lower, cell, zeta, x)) return false;
    if (r.upper && x[i] > bound_value(*r.upper, cell, zeta, x)) return false;
  }
  return true;
}

PadicNumber Monomial::eval(const std::vector<PadicNumber>& tv, const std::vector<PadicNumber>& zv, long p) const {
  PadicNumber acc = PadicNumber::uniformizer_power(p, pi_exp);
  for (std::size_t i = 0; i < t.size(); ++i)
    if (t[i] != 0) acc *= tv.at(i).pow(t[i]);
  for (std::size_t j = 0; j < z.size(); ++j)
    if (z[j] != 0) acc *= zv.at(j).pow(z[j]);
  return acc;
}

std::string Monomial::to_string() const {
  std::ostringstream os;
  bool first = true;
  auto factor = [&](const std::string& name, long e) {
    if (e == 0) return;
    if (!first) os << "*";
    first = false;
    os << name;
    if (e != 1) os << "^" << e;
  };
  if (pi_exp != 0) factor("p", pi_exp);
  for (std::size_t i = 0; i < t.size(); ++i) factor("t" + std::to_string(i + 1), t[i]);
  for (std::size_t j = 0; j < z.size(); ++j) factor("z" + std::to_string(j + 1), z[j]);
  if (first) os << "1";
  return os.str();
}

std::string RingCondition::to_string() const {
  if (kind == Kind::CONG)
    return "CONG(" + f.to_string() + ", " + std::to_string(c) + ", " + std::to_string(n) + ")";
  return "|" + g.to_string() + "| <= |" + f.to_string() + "|";
}

bool eval_ring(const RingCondition& rc, const std::vector<PadicNumber>& t, const std::vector<PadicNumber>& z,
               long p) {
  if (rc.kind == RingCondition::Kind::CONG) {
    PadicNumber v = rc.f.eval(t, z, p);
    if (v.is_zero()) throw DomainError("CONG of zero");
    return mod_pos(v.valuation() - rc.c, rc.n) == 0;
  }
  PadicNumber g = rc.g.eval(t, z, p), f = rc.f.eval(t, z, p);
  if (g.is_zero()) return true;
  if (f.is_zero()) return false;
  return g.valuation() >= f.valuation();
}

bool eval_ring(const std::vector<RingCondition>& rcs, const std::vector<PadicNumber>& t,
               const std::vector<PadicNumber>& z, long p) {
  for (const auto& rc : rcs)
    if (!eval_ring(rc, t, z, p)) return false;
  return true;
}

std::vector<RingCondition> translate(const PresburgerCell& cell) {
  const std::size_t d = static_cast<std::size_t>(cell.d);
  std::vector<RingCondition> out;
  for (std::size_t i = 0; i < d; ++i) {
    const auto& r = cell.rows[i];
    if (r.n > 1 || r.c != 0) {
      RingCondition rc;
      rc.kind = RingCondition::Kind::CONG;
      rc.f.t.assign(d, 0);
      rc.f.z.assign(2 * d, 0);
      rc.f.t[i] = 1;
      rc.f.pi_exp = -r.c;
      rc.c = 0;
      rc.n = r.n;
      out.push_back(rc);
    }
    for (int side = 0; side < 2; ++side) {
      const auto& b = side == 0 ? r.lower : r.upper;
      if (!b) continue;
      // L * X_i against L*zeta + sum (L a_j / n_j) X_j - sum L a_j c_j / n_j
      long L = 1;
      for (std::size_t j = 0; j < b->a.size(); ++j)
        if (b->a[j] != 0) L = std::lcm(L, cell.rows[j].n);
      Monomial lhs, rhs;
      lhs.t.assign(d, 0);
      lhs.z.assign(2 * d, 0);
      rhs = lhs;
      lhs.t[i] = L;
      rhs.z[static_cast<std::size_t>(b->slot)] = L;
      for (std::size_t j = 0; j < b->a.size(); ++j) {
        if (b->a[j] == 0) continue;
        long coef = L / cell.rows[j].n * b->a[j];
        rhs.t[j] += coef;
        rhs.pi_exp -= coef * cell.rows[j].c;
      }
      RingCondition rc;
      rc.kind = RingCondition::Kind::NORM_LE;
      // valuation lower bound v(lhs) >= v(rhs) is |lhs| <= |rhs|
      if (side == 0) {
        rc.g = lhs;
        rc.f = rhs;
      } else {
        rc.g = rhs;
        rc.f = lhs;
      }
      out.push_back(rc);
    }
  }
  return out;
}

ValuationImage image_valuation(const PresentedCell& A) {
  if (A.type() == 0) throw TypeZeroCell("a type 0 cell has no valuations of t - c");
  ValuationImage im;
  im.cell.d = 1;
  im.cell.rows.resize(1);
  im.zeta.assign(2, 0);
  auto& r = im.cell.rows[0];
  long vl = A.lambda.valuation();
  long mod = A.group.valuation_modulus();
  if (mod == 0) {
    r.lower = PresburgerBound{0, {}};
    r.upper = PresburgerBound{1, {}};
    im.zeta = {vl, vl};
    // intersected with the cell bounds
    if (A.w_lo() != kNegInf) im.zeta[0] = std::max(vl, A.w_lo());
    if (A.w_hi() != kPosInf) im.zeta[1] = std::min(vl, A.w_hi());
    return im;
  }
  r.n = mod;
  r.c = mod_pos(vl, mod);
  if (A.w_lo() != kNegInf) {
    r.lower = PresburgerBound{0, {}};
    im.zeta[0] = A.w_lo();
  }
  if (A.w_hi() != kPosInf) {
    r.upper = PresburgerBound{1, {}};
    im.zeta[1] = A.w_hi();
  }
  return im;
}

long zmin(const PresburgerCell& cell, const std::vector<long>& zeta) {
  if (cell.d != 1 || cell.rows.size() != 1) throw ArityError("zmin needs a one-dimensional cell");
  const auto& r = cell.rows[0];
  if (!r.lower) throw Unbounded("cell has no lower bound");
  long lo = zeta.at(static_cast<std::size_t>(r.lower->slot));
  long x = lo + mod_pos(r.c - lo, r.n);
  if (r.upper && x > zeta.at(static_cast<std::size_t>(r.upper->slot))) throw EmptySet("cell is empty");
  return x;
}

namespace {

// v(q) is constant on t + p^rho Z_p; throws VanishingFunction at a zero.
bool stable_at(const UPoly& q, const mpq_class& t, long rho, long p) {
  UPoly s = q.shifted(t);
  const auto& c = s.coeffs();
  if (c.empty() || c[0] == 0) throw VanishingFunction("function vanishes at " + rational_to_string(t));
  long v0 = PadicNumber::from_rational(p, c[0]).valuation();
  for (std::size_t i = 1; i < c.size(); ++i) {
    if (c[i] == 0) continue;
    long vi = PadicNumber::from_rational(p, c[i]).valuation();
    if (v0 >= vi + static_cast<long>(i) * rho) return false;
  }
  return true;
}

}  // namespace

EvpResult evp_min(const FactoredBasic& f, const std::vector<PresentedCell>& domain, const TruncatedSample& sample) {
  const PadicConfig& cfg = sample.config();
  const long p = cfg.p;
  const long B = sample.window();
  for (const auto& A : domain) {
    if (A.type() == 0) {
      if (!A.center.is_zero() && A.center.valuation() < -B)
        throw InsufficientPrecision("domain lies outside the sample window");
      continue;
    }
    if (A.mu.kind != Bound::Kind::TERM) throw UnboundedDomain("domain cell is unbounded: " + A.to_string());
    long lowest = A.w_lo();
    if (!A.center.is_zero()) lowest = std::min(lowest, A.center.valuation());
    if (lowest < -B) throw InsufficientPrecision("domain lies outside the sample window");
  }
  if (f.coeff == 0) throw VanishingFunction("function is identically zero");
  CellMatcher matcher(domain, B, cfg);
  EvpResult best;
  bool found = false;
  sample.for_each([&](const SamplePoint& t) {
    bool in = false;
    for (std::size_t i = 0; i < matcher.size() && !in; ++i) in = matcher.member(i, t);
    if (!in) return;
    ++best.points;
    mpq_class tq = t.to_rational(p);
    long rho = t.zero ? B + 1 : t.v + sample.digits();
    long v = PadicNumber::from_rational(p, f.coeff).valuation();
    for (const auto& [q, k] : f.factors) {
      if (!stable_at(q, tq, rho, p))
        throw InsufficientPrecision("valuation not constant around the sample point; more digits needed");
      v += k * PadicNumber::from_rational(p, q.eval(tq)).valuation();
    }
    if (!found || v > best.valuation) {
      best.valuation = v;
      best.witness = t;
      found = true;
    }
  });
  if (!found) throw InsufficientPrecision("no sample point lies in the domain");
  // the function is the e-th root of the factored expression
  if (best.valuation % f.e != 0) throw DomainError("valuation not divisible by the root index");
  best.valuation /= f.e;
  return best;
}

EvpResult evp_min(const FactoredBasic& f, const PresentedCell& domain, const TruncatedSample& sample) {
  return evp_min(f, std::vector<PresentedCell>{domain}, sample);
}

}  // namespace padicsa
