#include "padicsa/prepare.hpp"

#include "padicsa/refine.hpp"

namespace padicsa {

namespace {

long snap_up(long lo, long r, long N) {
  if (lo == kNegInf) return kNegInf;
  return lo + (((r - lo) % N) + N) % N;
}
long snap_down(long hi, long r, long N) {
  if (hi == kPosInf) return kPosInf;
  return hi - (((hi - r) % N) + N) % N;
}

}  // namespace

std::vector<PreparedPiece> prepare_param(const FactoredBasic& theta, int n, const PadicConfig& cfg,
                                         const PrepareOptions& opt) {
  if (n < 1) throw DomainError("unit level must be at least 1");
  if (theta.e < 1) throw DomainError("root index must be at least 1");
  const long p = cfg.p;
  const long e = theta.e;
  const long N = e;
  const long M = n + 3 * vp(e, p);

  std::vector<UPoly> polys;
  for (const auto& [q, k] : theta.factors) polys.push_back(q);
  Refinement R = refine(polys, static_cast<int>(M), cfg);

  SubgroupSpec G = e == 1 ? SubgroupSpec::full() : SubgroupSpec::qnm(N, M);
  std::vector<PadicNumber> reps =
      e == 1 ? std::vector<PadicNumber>{PadicNumber::from_rational(p, 1)} : CosetTable::get(p, G, cfg)->reps();

  auto extract = [&](const PadicNumber& g, bool& ok) -> PadicNumber {
    ok = true;
    try {
      return root_of_power(g, e, cfg.work_prec);
    } catch (const RootExtractionError&) {
      if (opt.strict) throw;
      ok = false;
      return {};
    }
  };

  std::vector<PreparedPiece> out;
  for (const auto& piece : R.pieces) {
    PadicNumber H = PadicNumber::from_rational(p, theta.coeff);
    long alpha = 0;
    bool pole = false, vanishes = theta.coeff == 0;
    for (std::size_t j = 0; j < theta.factors.size(); ++j) {
      long k = theta.factors[j].second;
      H *= piece.h[j].pow(k);
      alpha += k * piece.alpha[j];
      if (piece.point && piece.alpha[j] > 0) (k < 0 ? pole : vanishes) = true;
    }
    if (piece.point) {
      if (pole) continue;
      PreparedPiece pp;
      pp.cell = PresentedCell::point(piece.center);
      pp.e = e;
      pp.n = n;
      pp.alpha = 0;
      if (vanishes) {
        pp.h = PadicNumber::zero(p);
      } else {
        bool ok;
        pp.h = extract(H, ok);
        if (!ok) continue;
      }
      out.push_back(std::move(pp));
      continue;
    }
    for (const auto& lam : reps) {
      const long vl = lam.valuation();
      long w1 = snap_up(piece.w_lo, vl, N), w2 = snap_down(piece.w_hi, vl, N);
      if (w1 != kNegInf && w2 != kPosInf && w1 > w2) continue;
      PreparedPiece pp;
      pp.cell.center = piece.center;
      pp.cell.nu = Bound::of_valuation(p, w2);
      pp.cell.mu = Bound::of_valuation(p, w1);
      pp.cell.lambda = lam;
      pp.cell.group = G;
      pp.alpha = alpha;
      pp.e = e;
      pp.n = n;
      if (H.is_zero()) {
        pp.h = H;
      } else {
        bool ok;
        pp.h = extract(H * lam.pow(alpha), ok);
        if (!ok) continue;
      }
      out.push_back(std::move(pp));
    }
  }
  return out;
}

std::vector<PreparedPiece> prepare_poly(const UPoly& f, int n, const PadicConfig& cfg) {
  FactoredBasic theta;
  if (f.is_zero()) {
    theta.coeff = 0;
  } else {
    theta.coeff = f.lead();
    if (f.degree() > 0) theta.factors.emplace_back(f.monic(), 1);
  }
  theta.e = 1;
  return prepare_param(theta, n, cfg);
}

PadicNumber eval_theta(const FactoredBasic& theta, const PadicNumber& t, const PadicConfig& cfg) {
  return root_of_power(theta.eval_power(t), theta.e, cfg.work_prec);
}

PadicNumber unit_residual(const PreparedPiece& piece, const FactoredBasic& theta, const PadicNumber& t,
                          const PadicConfig& cfg) {
  const long p = cfg.p;
  PadicNumber th = eval_theta(theta, t, cfg);
  PadicNumber model = piece.h;
  if (piece.cell.type() == 1 && piece.alpha != 0) {
    PadicNumber q = (t - piece.cell.center) / piece.cell.lambda;
    PadicNumber qa = q.pow(piece.alpha);
    model *= piece.e == 1 ? qa : nth_root(qa, piece.e, cfg.work_prec);
  }
  if (th.is_zero() && model.is_zero()) return PadicNumber::from_rational(p, 1);
  if (th.is_zero() || model.is_zero()) throw DomainError("function and model disagree on vanishing");
  return th / model;
}

ResidualReport verify_unit_residual(const PreparedPiece& piece, const FactoredBasic& theta,
                                    const std::vector<PadicNumber>& points, const PadicConfig& cfg) {
  ResidualReport rep;
  for (const auto& t : points) {
    try {
      if (!contains(piece.cell, t)) continue;
      ++rep.checked;
      PadicNumber r = unit_residual(piece, theta, t, cfg);
      if (!in_Uen(r, piece.e, piece.n)) rep.failures.push_back({t, "residual " + r.to_string() + " outside (1+p^n)U_e"});
    } catch (const InsufficientPrecision& ex) {
      rep.errors.push_back({t, ex.what()});
    } catch (const Error& ex) {
      rep.failures.push_back({t, ex.what()});
    }
  }
  return rep;
}

ResidualReport verify_unit_residual(const PreparedPiece& piece, const FactoredBasic& theta,
                                    const TruncatedSample& sample) {
  std::vector<PadicNumber> pts;
  sample.for_each([&](const SamplePoint& s) { pts.push_back(s.to_padic(sample.prime())); });
  return verify_unit_residual(piece, theta, pts, sample.config());
}

ResidualReport verify_norm_factor(const FactoredBasic& theta, const NormWitness& w, const TruncatedSample& sample) {
  ResidualReport rep;
  const PadicConfig& cfg = sample.config();
  const long p = cfg.p;
  sample.for_each([&](const SamplePoint& s) {
    PadicNumber t = s.to_padic(p);
    try {
      bool in_region = std::holds_alternative<PresentedCell>(w.region)
                           ? contains(std::get<PresentedCell>(w.region), t)
                           : decide(std::get<NormalForm>(w.region), std::vector<PadicNumber>{t}, cfg);
      if (!in_region) return;
      ++rep.checked;
      PadicNumber qv = w.qA.eval(t);
      if (qv.is_zero()) {
        rep.failures.push_back({t, "q_A vanishes"});
        return;
      }
      PadicNumber g = theta.eval_power(t);
      PadicNumber pv = w.pA.eval(t);
      if (g.is_zero() || pv.is_zero()) {
        if (!(g.is_zero() && pv.is_zero())) rep.failures.push_back({t, "vanishing mismatch"});
        return;
      }
      if (w.e * g.valuation() != theta.e * (pv.valuation() - qv.valuation()))
        rep.failures.push_back({t, "valuation identity fails"});
    } catch (const InsufficientPrecision& ex) {
      rep.errors.push_back({t, ex.what()});
    } catch (const Error& ex) {
      rep.failures.push_back({t, ex.what()});
    }
  });
  return rep;
}

}  // namespace padicsa
