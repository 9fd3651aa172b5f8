#include "padicsa/cells.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "padicsa/refine.hpp"

namespace padicsa {

Bound Bound::of_valuation(long p, long w) {
  if (w == kPosInf) return zero();
  if (w == kNegInf) return infinity();
  return term(PadicNumber::uniformizer_power(p, w));
}

PresentedCell PresentedCell::point(PadicNumber c) {
  PresentedCell A;
  A.lambda = PadicNumber::zero(c.prime());
  A.center = std::move(c);
  A.nu = Bound::zero();
  A.mu = Bound::zero();
  return A;
}

long PresentedCell::w_lo() const {
  if (mu.kind == Bound::Kind::INF) return kNegInf;
  if (mu.kind == Bound::Kind::ZERO) return kPosInf;
  return mu.value.valuation();
}

long PresentedCell::w_hi() const {
  if (nu.kind == Bound::Kind::ZERO) return kPosInf;
  if (nu.kind == Bound::Kind::INF) return kNegInf;
  return nu.value.valuation();
}

namespace {
std::string bound_string(const Bound& b) {
  switch (b.kind) {
    case Bound::Kind::ZERO: return "0";
    case Bound::Kind::INF: return "inf";
    case Bound::Kind::TERM: return b.value.to_string();
  }
  return "";
}
}  // namespace

std::string PresentedCell::to_string() const {
  std::ostringstream os;
  if (type() == 0) {
    os << "{" << center.to_string() << "}";
    return os.str();
  }
  os << "|" << bound_string(nu) << "| <= |t - (" << center.to_string() << ")| <= |" << bound_string(mu)
     << "|, t - (" << center.to_string() << ") in " << lambda.to_string() << " * " << group.to_string();
  return os.str();
}

bool contains(const PresentedCell& A, const PadicNumber& t) {
  if (A.type() == 0) return t.agrees_with(A.center);
  PadicNumber d = t - A.center;
  if (d.is_zero()) return false;
  long w = d.valuation();
  long lo = A.w_lo(), hi = A.w_hi();
  if (lo != kNegInf && w < lo) return false;
  if (hi != kPosInf && w > hi) return false;
  return A.group.contains(d / A.lambda);
}

namespace {

long floor_div(long a, long b) {
  long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}
long ceil_div(long a, long b) { return -floor_div(-a, b); }

// Smallest w >= lo with w = r mod N, and the largest w <= hi likewise.
long snap_up(long lo, long r, long N) {
  if (lo == kNegInf) return kNegInf;
  return lo + (((r - lo) % N) + N) % N;
}
long snap_down(long hi, long r, long N) {
  if (hi == kPosInf) return kPosInf;
  return hi - (((hi - r) % N) + N) % N;
}

bool decide_on_values(const BasicCondition& c, const std::vector<MPoly>& polys,
                      const std::vector<PadicNumber>& vals, const PadicConfig& cfg) {
  auto value = [&](const MPoly& m) -> const PadicNumber& {
    auto it = std::find(polys.begin(), polys.end(), m);
    return vals[static_cast<std::size_t>(it - polys.begin())];
  };
  const PadicNumber& fv = value(c.f);
  switch (c.kind) {
    case CondKind::ZERO: return fv.is_zero();
    case CondKind::NORM_LE: {
      const PadicNumber& gv = value(c.g);
      if (gv.is_zero()) return true;
      if (fv.is_zero()) return false;
      return gv.valuation() >= fv.valuation();
    }
    case CondKind::POWER_COSET: {
      if (fv.is_zero()) return c.r == 0 && !c.star;
      const auto& reps = CosetTable::get(cfg.p, SubgroupSpec::pn(c.N), cfg)->reps();
      if (c.r >= static_cast<int>(reps.size())) throw DomainError("coset index out of range");
      return in_PN(fv / reps[c.r], c.N);
    }
    case CondKind::QNM: return in_QNM(fv, c.N, c.M);
  }
  return false;
}

int first_true_conjunct(const NormalForm& nf, const std::vector<MPoly>& polys, const std::vector<PadicNumber>& vals,
                        const PadicConfig& cfg) {
  for (std::size_t k = 0; k < nf.conjuncts.size(); ++k) {
    bool all = true;
    for (const auto& c : nf.conjuncts[k])
      if (!decide_on_values(c, polys, vals, cfg)) {
        all = false;
        break;
      }
    if (all) return static_cast<int>(k);
  }
  return -1;
}

}  // namespace

CellList decompose1(const NormalForm& nf, const PadicConfig& cfg, const DecomposeOptions& opt) {
  CellList out;
  out.N = nf.N;
  if (nf.conjuncts.empty()) return out;
  const long p = cfg.p;
  const long N = nf.N;

  std::vector<MPoly> polys = collect_polys(nf);
  std::vector<UPoly> upolys;
  for (const auto& m : polys) {
    if (m.nvars() > 1 && !m.is_univariate_in(0)) throw ArityError("decompose1 needs a formula in one variable");
    upolys.push_back(m.nvars() == 0 ? UPoly::constant(m.constant_term()) : m.to_univariate(0));
  }

  int n = std::max<int>(opt.unit_level, static_cast<int>(2 * vp(N, p) + 1));
  Refinement R = refine(upolys, n, cfg);
  SubgroupSpec G = N == 1 ? SubgroupSpec::full() : SubgroupSpec::pn(N);
  const auto reps = CosetTable::get(p, SubgroupSpec::pn(N), cfg)->reps();

  // NORM_LE conditions as (g index, f index) pairs.
  std::vector<std::pair<std::size_t, std::size_t>> norms;
  auto index_of = [&](const MPoly& m) {
    return static_cast<std::size_t>(std::find(polys.begin(), polys.end(), m) - polys.begin());
  };
  for (const auto& cj : nf.conjuncts)
    for (const auto& c : cj)
      if (c.kind == CondKind::NORM_LE) norms.emplace_back(index_of(c.g), index_of(c.f));

  for (const auto& piece : R.pieces) {
    if (piece.point) {
      std::vector<PadicNumber> vals;
      for (std::size_t i = 0; i < polys.size(); ++i)
        vals.push_back(piece.alpha[i] > 0 ? PadicNumber::zero(p) : piece.h[i]);
      int k = first_true_conjunct(nf, polys, vals, cfg);
      if (k >= 0) {
        out.cells.push_back(PresentedCell::point(piece.center));
        out.conjunct.push_back(k);
      }
      continue;
    }
    for (const auto& lam : reps) {
      const long vl = lam.valuation();
      long w1 = snap_up(piece.w_lo, vl, N);
      long w2 = snap_down(piece.w_hi, vl, N);
      if (w1 != kNegInf && w2 != kPosInf && w1 > w2) continue;

      // Starts of segments on which every NORM_LE condition is constant.
      std::set<long> starts;
      for (auto [gi, fi] : norms) {
        if (piece.h[gi].is_zero() || piece.h[fi].is_zero()) continue;
        long a = piece.alpha[gi] - piece.alpha[fi];
        long b = piece.h[gi].valuation() - piece.h[fi].valuation();
        long s;
        if (a > 0)
          s = ceil_div(-b, a);
        else if (a < 0)
          s = floor_div(-b, a) + 1;
        else
          continue;
        if ((w1 == kNegInf || s > w1) && (w2 == kPosInf || s <= w2)) starts.insert(s);
      }
      std::vector<std::pair<long, long>> segs;
      long cur = w1;
      for (long s : starts) {
        segs.emplace_back(cur, s - 1);
        cur = s;
      }
      segs.emplace_back(cur, w2);

      struct Run {
        long lo, hi;
        int k;
      };
      std::vector<Run> runs;
      for (auto [lo0, hi0] : segs) {
        long lo = snap_up(lo0, vl, N), hi = snap_down(hi0, vl, N);
        if (lo != kNegInf && hi != kPosInf && lo > hi) continue;
        long w = lo != kNegInf ? lo : (hi != kPosInf ? hi : vl);
        std::vector<PadicNumber> vals;
        for (std::size_t i = 0; i < polys.size(); ++i) {
          if (piece.h[i].is_zero()) {
            vals.push_back(PadicNumber::zero(p));
            continue;
          }
          int a = piece.alpha[i];
          vals.push_back(piece.h[i] * lam.pow(a) * PadicNumber::uniformizer_power(p, a * (w - vl)));
        }
        int k = first_true_conjunct(nf, polys, vals, cfg);
        if (k < 0) continue;
        if (!runs.empty() && runs.back().k == k && runs.back().hi != kPosInf && runs.back().hi + N == lo)
          runs.back().hi = hi;
        else
          runs.push_back({lo, hi, k});
      }
      for (const auto& r : runs) {
        PresentedCell A;
        A.center = piece.center;
        A.nu = Bound::of_valuation(p, r.hi);
        A.mu = Bound::of_valuation(p, r.lo);
        A.lambda = lam;
        A.group = G;
        out.cells.push_back(std::move(A));
        out.conjunct.push_back(r.k);
      }
    }
  }
  return out;
}

CellMatcher::CellMatcher(const std::vector<PresentedCell>& cells, long window, const PadicConfig& cfg)
    : p_(cfg.p), S_(window), cfg_(cfg) {
  pow_.push_back(1);
  while (pow_.back() <= (std::uint64_t{1} << 62) / static_cast<std::uint64_t>(p_))
    pow_.push_back(pow_.back() * static_cast<std::uint64_t>(p_));
  const long D = static_cast<long>(pow_.size()) - 1;  // p^D < 2^62

  for (const auto& A : cells) {
    Compiled c;
    c.cell = &A;
    const PadicNumber& ctr = A.center;
    long vc = ctr.is_zero() ? kPosInf : ctr.valuation();
    long A_abs = D - S_;
    if (!ctr.is_zero() && !ctr.is_exact()) A_abs = std::min(A_abs, ctr.absolute_precision());
    bool ok = A_abs > -S_ && (ctr.is_zero() || vc >= -S_);
    if (ok && A.type() == 1) {
      if (A.group.kind == SubgroupKind::UNIT_BALL_Ue) ok = false;
      if (!A.lambda.is_exact()) ok = false;
    }
    if (ok) {
      c.modulus = pow_[static_cast<std::size_t>(S_ + A_abs)];
      if (ctr.is_zero() || vc >= A_abs) {
        c.cres = 0;
      } else {
        long digs = A_abs - vc;
        mpz_class u = ctr.unit(static_cast<int>(digs));
        c.cres = static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(u.get_ui()) * pow_[static_cast<std::size_t>(vc + S_)]) % c.modulus);
      }
      if (A.type() == 1) {
        c.w_lo = A.w_lo();
        c.w_hi = A.w_hi();
        c.lambda_v = A.lambda.valuation();
        bool full = A.group.kind == SubgroupKind::FULL || (A.group.kind == SubgroupKind::PN && A.group.N == 1);
        if (!full) {
          c.table = CosetTable::get(p_, A.group, cfg);
          c.m = c.table->digits();
          c.pm = c.table->modulus_pm_u64();
          if (c.m > 0) c.lambda_inv = inverse_mod_u64(A.lambda.unit(c.m).get_ui(), c.pm);
        }
      }
      c.fast = true;
    }
    // Remaining digit budget is kept in `modulus`; S_ is shared.
    compiled_.push_back(std::move(c));
  }
}

bool CellMatcher::member(std::size_t i, const SamplePoint& t) const {
  const Compiled& c = compiled_[i];
  const PresentedCell& A = *c.cell;
  auto slow = [&] { return contains(A, t.to_padic(p_)); };
  if (!c.fast) return slow();
  std::uint64_t T = 0;
  if (!t.zero) {
    long e = t.v + S_;
    if (e < 0) return slow();
    if (static_cast<std::size_t>(e) >= pow_.size() || pow_[static_cast<std::size_t>(e)] >= c.modulus) {
      T = 0;
    } else {
      T = static_cast<std::uint64_t>((static_cast<unsigned __int128>(t.u % c.modulus) *
                                      pow_[static_cast<std::size_t>(e)]) % c.modulus);
    }
  }
  std::uint64_t X = (T + c.modulus - c.cres) % c.modulus;
  if (A.type() == 0) {
    if (X != 0) return false;
    return slow();
  }
  if (X == 0) return slow();
  long vX = 0;
  while (X % static_cast<std::uint64_t>(p_) == 0) {
    X /= static_cast<std::uint64_t>(p_);
    ++vX;
  }
  long w = vX - S_;
  if (c.w_lo != kNegInf && w < c.w_lo) return false;
  if (c.w_hi != kPosInf && w > c.w_hi) return false;
  if (!c.table) return true;
  // X now holds the unit digits that are known: modulus / p^(vX+S) of them.
  std::uint64_t known = c.modulus / pow_[static_cast<std::size_t>(vX)];
  if (c.m > 0 && known < c.pm) return slow();
  std::uint64_t ud = c.m > 0 ? X % c.pm : 0;
  std::uint64_t ul = c.m > 0 ? static_cast<std::uint64_t>((static_cast<unsigned __int128>(ud) * c.lambda_inv) % c.pm) : 0;
  return c.table->classify(w - c.lambda_v, ul) == 0;
}

PartitionReport check_partition(const CellList& cl, const NormalForm& nf, const TruncatedSample& sample) {
  PartitionReport rep;
  const PadicConfig& cfg = sample.config();
  CellMatcher matcher(cl.cells, sample.window(), cfg);
  FastEvaluator ev(nf, cfg);
  sample.for_each([&](const SamplePoint& t) {
    ++rep.checked;
    try {
      int count = 0;
      for (std::size_t i = 0; i < matcher.size(); ++i)
        if (matcher.member(i, t)) ++count;
      bool in_nf = ev.eval(t);
      if (count >= 2) rep.overlapping.push_back(t);
      if (in_nf && count == 0) rep.uncovered.push_back(t);
      if (!in_nf && count > 0) rep.extraneous.push_back(t);
    } catch (const Error& e) {
      rep.errors.emplace_back(t, e.what());
    }
  });
  return rep;
}

std::vector<PadicNumber> sample_cell(const PresentedCell& A, std::size_t count, Rng& rng, long window,
                                     const PadicConfig& cfg) {
  if (A.type() == 0) return {A.center};
  const long p = cfg.p;
  long mod = A.group.valuation_modulus();
  const long vl = A.lambda.valuation();
  const long step = mod == 0 ? 1 : mod;
  long lo = A.w_lo(), hi = A.w_hi();
  std::vector<long> ws;
  if (mod == 0) {
    if ((lo == kNegInf || vl >= lo) && (hi == kPosInf || vl <= hi)) ws.push_back(vl);
  } else {
    long a = lo == kNegInf ? -window : std::max(lo, -window);
    long b = hi == kPosInf ? window : std::min(hi, window);
    for (long w = snap_up(a, vl, step); w <= b; w += step) ws.push_back(w);
    if (ws.empty()) {
      long w = (hi != kPosInf && hi < -window) ? snap_down(hi, vl, step) : snap_up(lo, vl, step);
      if ((lo == kNegInf || w >= lo) && (hi == kPosInf || w <= hi)) ws.push_back(w);
    }
  }
  if (ws.empty()) throw EmptyCell("cell has no points: " + A.to_string());

  int digits = cfg.work_prec;
  std::uint64_t pk = 1;
  int used = 0;
  while (used < digits && pk <= (std::uint64_t{1} << 60) / static_cast<std::uint64_t>(p)) {
    pk *= static_cast<std::uint64_t>(p);
    ++used;
  }
  auto random_unit = [&] {
    std::uint64_t y;
    do y = rng.below(pk);
    while (y % static_cast<std::uint64_t>(p) == 0);
    return PadicNumber::from_rational(p, mpq_class(mpz_class(static_cast<unsigned long>(y))));
  };
  std::vector<PadicNumber> zetas;
  if (A.group.kind == SubgroupKind::UNIT_BALL_Ue) zetas = roots_of_unity(A.group.e, p, cfg.work_prec);

  std::vector<PadicNumber> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    long w = ws[rng.below(ws.size())];
    PadicNumber u;
    switch (A.group.kind) {
      case SubgroupKind::FULL: u = random_unit(); break;
      case SubgroupKind::PN: u = random_unit().pow(A.group.N); break;
      case SubgroupKind::QNM:
        u = PadicNumber::from_rational(p, 1) +
            PadicNumber::uniformizer_power(p, A.group.M) *
                PadicNumber::from_rational(p, mpq_class(mpz_class(static_cast<unsigned long>(rng.below(pk)))));
        break;
      case SubgroupKind::UNIT_BALL_Ue:
        u = zetas[rng.below(zetas.size())] *
            (PadicNumber::from_rational(p, 1) +
             PadicNumber::uniformizer_power(p, A.group.n) *
                 PadicNumber::from_rational(p, mpq_class(mpz_class(static_cast<unsigned long>(rng.below(pk))))));
        break;
    }
    out.push_back(A.center + A.lambda * PadicNumber::uniformizer_power(p, w - vl) * u);
  }
  return out;
}

Untwisted untwist(const PresentedCell& A) {
  Untwisted u;
  u.standard = A;
  u.standard.center = PadicNumber::zero(A.center.prime());
  u.map.shift = A.center;
  return u;
}

}  // namespace padicsa
