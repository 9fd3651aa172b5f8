#include "padicsa/lang.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <tuple>

namespace padicsa {

// ---------------------------------------------------------------------------
// conditions and formulas

BasicCondition BasicCondition::zero(MPoly f) {
  BasicCondition c;
  c.kind = CondKind::ZERO;
  c.f = std::move(f);
  return c;
}

BasicCondition BasicCondition::norm_le(MPoly g, MPoly f) {
  BasicCondition c;
  c.kind = CondKind::NORM_LE;
  c.g = std::move(g);
  c.f = std::move(f);
  return c;
}

BasicCondition BasicCondition::power_coset(MPoly f, long N, int r, bool star) {
  if (N < 1) throw DomainError("power N must be >= 1");
  if (r < 0) throw DomainError("coset index must be >= 0");
  BasicCondition c;
  c.kind = CondKind::POWER_COSET;
  c.f = std::move(f);
  c.N = N;
  c.r = r;
  c.star = star && r == 0;
  return c;
}

BasicCondition BasicCondition::qnm(MPoly f, long N, long M) {
  if (N < 1 || M < 1) throw DomainError("Q(N, M) needs N, M >= 1");
  BasicCondition c;
  c.kind = CondKind::QNM;
  c.f = std::move(f);
  c.N = N;
  c.M = M;
  return c;
}

namespace {
auto cond_key(const BasicCondition& c) {
  return std::tie(c.kind, c.f, c.g, c.N, c.r, c.star, c.M);
}
}  // namespace

bool BasicCondition::operator==(const BasicCondition& o) const { return cond_key(*this) == cond_key(o); }
bool BasicCondition::operator<(const BasicCondition& o) const { return cond_key(*this) < cond_key(o); }

Formula Formula::truth(bool v) {
  Formula f;
  f.op = v ? Op::TRUE : Op::FALSE;
  return f;
}

Formula Formula::atom(BasicCondition c) {
  Formula f;
  f.op = Op::LEAF;
  f.leaf = std::move(c);
  return f;
}

Formula Formula::conj(std::vector<Formula> kids) {
  if (kids.empty()) return truth(true);
  if (kids.size() == 1) return kids[0];
  Formula f;
  f.op = Op::AND;
  f.kids = std::move(kids);
  return f;
}

Formula Formula::disj(std::vector<Formula> kids) {
  if (kids.empty()) return truth(false);
  if (kids.size() == 1) return kids[0];
  Formula f;
  f.op = Op::OR;
  f.kids = std::move(kids);
  return f;
}

Formula Formula::negate(Formula g) {
  Formula f;
  f.op = Op::NOT;
  f.kids.push_back(std::move(g));
  return f;
}

bool Formula::operator==(const Formula& o) const {
  if (op != o.op) return false;
  if (op == Op::LEAF) return leaf == o.leaf;
  return kids == o.kids;
}

int Formula::depth() const {
  int d = 0;
  for (const auto& k : kids) d = std::max(d, 1 + k.depth());
  return d;
}

// ---------------------------------------------------------------------------
// factored terms

PadicNumber FactoredBasic::eval_power(const PadicNumber& t) const {
  long p = t.prime();
  PadicNumber acc = PadicNumber::from_rational(p, coeff);
  for (const auto& [q, k] : factors) {
    PadicNumber v = q.eval(t);
    if (v.is_zero() && k < 0) throw DomainError("factored term has a pole at this point");
    acc = acc * v.pow(k);
  }
  return acc;
}

mpq_class FactoredBasic::eval_power(const mpq_class& t) const {
  mpq_class acc = coeff;
  for (const auto& [q, k] : factors) {
    mpq_class v = q.eval(t);
    if (v == 0) {
      if (k < 0) throw DomainError("factored term has a pole at this point");
      return 0;
    }
    for (int j = 0; j < std::abs(k); ++j) acc = k > 0 ? mpq_class(acc * v) : mpq_class(acc / v);
  }
  return acc;
}

UPoly FactoredBasic::numerator() const {
  UPoly acc = UPoly::constant(coeff);
  for (const auto& [q, k] : factors)
    if (k > 0) acc = acc * q.pow(k);
  return acc;
}

UPoly FactoredBasic::denominator() const {
  UPoly acc = UPoly::constant(1);
  for (const auto& [q, k] : factors)
    if (k < 0) acc = acc * q.pow(-k);
  return acc;
}

std::string FactoredBasic::to_string() const {
  std::string body;
  if (coeff != 1 || factors.empty()) body = coeff.get_str();
  for (const auto& [q, k] : factors) {
    if (!body.empty()) body += "*";
    body += "(" + q.to_string() + ")";
    if (k != 1) body += "^" + std::to_string(k);
  }
  if (e != 1) return "root(" + std::to_string(e) + ", " + body + ")";
  return body;
}

// ---------------------------------------------------------------------------
// complement and normalization

namespace {

std::shared_ptr<const CosetTable> pn_table(long N, const PadicConfig& cfg) {
  return CosetTable::get(cfg.p, SubgroupSpec::pn(N), cfg);
}

Formula desugar_qnm(const BasicCondition& c, const PadicConfig& cfg) {
  long p = cfg.p;
  // P_{N'}^* lies inside Q_{N,M}^* for N' = lcm(N, p^{M-1}(p-1)).
  mpz_class pm1 = pow_p(p, c.M - 1) * (p - 1);
  if (pm1 > 1'000'000) throw SizeCap("Q(N, M) rewrite needs too large a power");
  long Np = std::lcm(c.N, pm1.get_si());
  auto tab = pn_table(Np, cfg);
  std::vector<Formula> kids;
  for (std::size_t j = 0; j < tab->reps().size(); ++j)
    if (in_QNM(tab->reps()[j], c.N, c.M))
      kids.push_back(Formula::atom(BasicCondition::power_coset(c.f, Np, static_cast<int>(j))));
  return Formula::disj(std::move(kids));
}

}  // namespace

Formula complement_basic(const BasicCondition& c, const PadicConfig& cfg) {
  switch (c.kind) {
    case CondKind::ZERO:
      return Formula::atom(BasicCondition::power_coset(c.f, 1, 0, true));
    case CondKind::NORM_LE: {
      MPoly pg = c.g.scaled(mpq_class(cfg.p));
      return Formula::conj({Formula::atom(BasicCondition::norm_le(c.f, pg)),
                            Formula::atom(BasicCondition::power_coset(c.g, 1, 0, true))});
    }
    case CondKind::POWER_COSET: {
      auto tab = pn_table(c.N, cfg);
      int idx = static_cast<int>(tab->index());
      if (c.r >= idx) throw DomainError("coset index out of range");
      std::vector<Formula> kids;
      if (c.r == 0 && c.star) kids.push_back(Formula::atom(BasicCondition::zero(c.f)));
      if (c.r != 0) kids.push_back(Formula::atom(BasicCondition::power_coset(c.f, c.N, 0, false)));
      for (int s = 1; s < idx; ++s)
        if (s != c.r) kids.push_back(Formula::atom(BasicCondition::power_coset(c.f, c.N, s)));
      return Formula::disj(std::move(kids));
    }
    case CondKind::QNM: {
      Formula d = desugar_qnm(c, cfg);
      if (d.op == Formula::Op::LEAF) return complement_basic(d.leaf, cfg);
      std::vector<Formula> kids;
      for (const auto& k : d.kids) kids.push_back(complement_basic(k.leaf, cfg));
      return Formula::conj(std::move(kids));
    }
  }
  return Formula::truth(true);
}

namespace {

Formula to_nnf(const Formula& f, bool neg, const PadicConfig& cfg) {
  switch (f.op) {
    case Formula::Op::TRUE:
    case Formula::Op::FALSE: return Formula::truth((f.op == Formula::Op::TRUE) != neg);
    case Formula::Op::LEAF:
      if (f.leaf.kind == CondKind::QNM) return to_nnf(desugar_qnm(f.leaf, cfg), neg, cfg);
      return neg ? complement_basic(f.leaf, cfg) : f;
    case Formula::Op::NOT: return to_nnf(f.kids[0], !neg, cfg);
    case Formula::Op::AND:
    case Formula::Op::OR: {
      std::vector<Formula> kids;
      for (const auto& k : f.kids) kids.push_back(to_nnf(k, neg, cfg));
      bool is_and = (f.op == Formula::Op::AND) != neg;
      return is_and ? Formula::conj(std::move(kids)) : Formula::disj(std::move(kids));
    }
  }
  return f;
}

void collect_powers(const Formula& f, long& N) {
  if (f.op == Formula::Op::LEAF && f.leaf.kind == CondKind::POWER_COSET) N = std::lcm(N, f.leaf.N);
  for (const auto& k : f.kids) collect_powers(k, N);
}

using Conj = std::vector<BasicCondition>;

// Adds c to a sorted conjunction; false when the result is unsatisfiable.
bool add_cond(Conj& cj, const BasicCondition& c) {
  if (c.kind == CondKind::ZERO && c.f.is_constant()) return c.f.is_zero();
  for (auto it = cj.begin(); it != cj.end(); ++it) {
    BasicCondition& o = *it;
    if (o == c) return true;
    if (!(o.f == c.f)) continue;
    if (c.kind == CondKind::POWER_COSET && o.kind == CondKind::POWER_COSET && c.N == o.N) {
      if (c.r != o.r) return false;
      o.star = o.star || c.star;
      return true;
    }
    if (c.kind == CondKind::ZERO && o.kind == CondKind::POWER_COSET) {
      if (o.r != 0 || o.star) return false;
      cj.erase(it);
      return add_cond(cj, c);
    }
    if (c.kind == CondKind::POWER_COSET && o.kind == CondKind::ZERO) {
      return !(c.r != 0 || c.star);
    }
  }
  cj.insert(std::upper_bound(cj.begin(), cj.end(), c), c);
  return true;
}

struct DnfBuilder {
  long N;
  const PadicConfig& cfg;
  std::size_t cap;
  std::map<long, std::vector<std::vector<int>>> lift;  // N0 -> class -> reps of N

  const std::vector<std::vector<int>>& lifting(long N0) {
    auto it = lift.find(N0);
    if (it != lift.end()) return it->second;
    auto big = pn_table(N, cfg);
    auto small = pn_table(N0, cfg);
    std::vector<std::vector<int>> cls(small->index());
    for (std::size_t j = 0; j < big->reps().size(); ++j)
      cls[small->classify(big->reps()[j])].push_back(static_cast<int>(j));
    return lift.emplace(N0, std::move(cls)).first->second;
  }

  std::vector<Conj> build(const Formula& f) {
    switch (f.op) {
      case Formula::Op::TRUE: return {Conj{}};
      case Formula::Op::FALSE: return {};
      case Formula::Op::LEAF: {
        const BasicCondition& c = f.leaf;
        std::vector<Conj> out;
        if (c.kind != CondKind::POWER_COSET) {
          Conj cj;
          if (add_cond(cj, c)) out.push_back(cj);
          return out;
        }
        for (int s : lifting(c.N).at(c.r)) {
          Conj cj;
          if (add_cond(cj, BasicCondition::power_coset(c.f, N, s, c.star && s == 0))) out.push_back(cj);
        }
        return out;
      }
      case Formula::Op::OR: {
        std::vector<Conj> out;
        for (const auto& k : f.kids) {
          auto sub = build(k);
          out.insert(out.end(), sub.begin(), sub.end());
          dedupe(out);
          if (out.size() > cap) throw SizeCap("normal form exceeds the conjunction cap");
        }
        return out;
      }
      case Formula::Op::AND: {
        std::vector<Conj> acc{Conj{}};
        for (const auto& k : f.kids) {
          auto sub = build(k);
          if (acc.size() * sub.size() > cap * 8) throw SizeCap("normal form exceeds the conjunction cap");
          std::vector<Conj> next;
          for (const auto& a : acc)
            for (const auto& b : sub) {
              Conj cj = a;
              bool ok = true;
              for (const auto& c : b)
                if (!add_cond(cj, c)) {
                  ok = false;
                  break;
                }
              if (ok) next.push_back(std::move(cj));
            }
          dedupe(next);
          if (next.size() > cap) throw SizeCap("normal form exceeds the conjunction cap");
          acc = std::move(next);
          if (acc.empty()) break;
        }
        return acc;
      }
      case Formula::Op::NOT: throw DomainError("internal: NOT survived negation normal form");
    }
    return {};
  }

  static void dedupe(std::vector<Conj>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  }
};

}  // namespace

NormalForm normalize(const Formula& f, const PadicConfig& cfg, const NormalizeOptions& opt) {
  Formula n = to_nnf(f, false, cfg);
  long N = 1;
  collect_powers(n, N);
  if (opt.power < 1) throw DomainError("power N must be >= 1");
  N = std::lcm(N, opt.power);
  DnfBuilder b{N, cfg, opt.max_conjuncts, {}};
  NormalForm nf;
  nf.N = N;
  nf.conjuncts = b.build(n);
  // a true conjunct absorbs everything else
  for (const auto& cj : nf.conjuncts)
    if (cj.empty()) {
      nf.conjuncts = {Conj{}};
      break;
    }
  return nf;
}

// ---------------------------------------------------------------------------
// reference semantics

bool decide_condition(const BasicCondition& c, const std::vector<PadicNumber>& point, const PadicConfig& cfg) {
  long p = cfg.p;
  PadicNumber fv = c.f.eval(point, p);
  switch (c.kind) {
    case CondKind::ZERO: return fv.is_zero();
    case CondKind::NORM_LE: {
      PadicNumber gv = c.g.eval(point, p);
      if (gv.is_zero()) return true;
      if (fv.is_zero()) return false;
      return gv.valuation() >= fv.valuation();
    }
    case CondKind::POWER_COSET: {
      if (fv.is_zero()) return c.r == 0 && !c.star;
      const auto& reps = pn_table(c.N, cfg)->reps();
      if (c.r >= static_cast<int>(reps.size())) throw DomainError("coset index out of range");
      return in_PN(fv / reps[c.r], c.N);
    }
    case CondKind::QNM: return in_QNM(fv, c.N, c.M);
  }
  return false;
}

bool decide(const Formula& f, const std::vector<PadicNumber>& point, const PadicConfig& cfg) {
  switch (f.op) {
    case Formula::Op::TRUE: return true;
    case Formula::Op::FALSE: return false;
    case Formula::Op::LEAF: return decide_condition(f.leaf, point, cfg);
    case Formula::Op::NOT: return !decide(f.kids[0], point, cfg);
    case Formula::Op::AND:
      for (const auto& k : f.kids)
        if (!decide(k, point, cfg)) return false;
      return true;
    case Formula::Op::OR:
      for (const auto& k : f.kids)
        if (decide(k, point, cfg)) return true;
      return false;
  }
  return false;
}

bool decide(const NormalForm& nf, const std::vector<PadicNumber>& point, const PadicConfig& cfg) {
  for (const auto& cj : nf.conjuncts) {
    bool all = true;
    for (const auto& c : cj)
      if (!decide_condition(c, point, cfg)) {
        all = false;
        break;
      }
    if (all) return true;
  }
  return false;
}

namespace {
void push_unique(std::vector<MPoly>& out, const MPoly& m) {
  if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(m);
}
void collect(const Formula& f, std::vector<MPoly>& out) {
  if (f.op == Formula::Op::LEAF) {
    push_unique(out, f.leaf.f);
    if (f.leaf.kind == CondKind::NORM_LE) push_unique(out, f.leaf.g);
  }
  for (const auto& k : f.kids) collect(k, out);
}
}  // namespace

std::vector<MPoly> collect_polys(const Formula& f) {
  std::vector<MPoly> out;
  collect(f, out);
  return out;
}

std::vector<MPoly> collect_polys(const NormalForm& nf) {
  std::vector<MPoly> out;
  for (const auto& cj : nf.conjuncts)
    for (const auto& c : cj) {
      push_unique(out, c.f);
      if (c.kind == CondKind::NORM_LE) push_unique(out, c.g);
    }
  return out;
}

}  // namespace padicsa
