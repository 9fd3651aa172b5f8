#include "padicsa/eval.hpp"

#include <algorithm>

namespace padicsa {

PadicNumber SamplePoint::to_padic(long p) const {
  if (zero) return PadicNumber::zero(p);
  return PadicNumber::from_rational(p, to_rational(p));
}

mpq_class SamplePoint::to_rational(long p) const {
  if (zero) return 0;
  mpz_class uz;
  mpz_import(uz.get_mpz_t(), 1, 1, sizeof(u), 0, 0, &u);
  mpq_class q(uz);
  if (v >= 0)
    q *= pow_p(p, v);
  else
    q /= pow_p(p, -v);
  q.canonicalize();
  return q;
}

namespace {

constexpr __int128 kLimit = static_cast<__int128>(1) << 100;

mpz_class from_u64(std::uint64_t x) {
  mpz_class z;
  mpz_import(z.get_mpz_t(), 1, 1, sizeof(x), 0, 0, &x);
  return z;
}

std::uint64_t mpz_mod_u64(const mpz_class& x, std::uint64_t m) {
  mpz_class mz = from_u64(m), r;
  mpz_mod(r.get_mpz_t(), x.get_mpz_t(), mz.get_mpz_t());
  std::uint64_t out = 0;
  mpz_export(&out, nullptr, 1, sizeof(out), 0, 0, r.get_mpz_t());
  return out;
}

bool pow128(long p, long e, __int128& out) {
  __int128 r = 1;
  for (long i = 0; i < e; ++i)
    if (__builtin_mul_overflow(r, static_cast<__int128>(p), &r)) return false;
  out = r;
  return true;
}

}  // namespace

PolyKernel::PolyKernel(const UPoly& f, long p, int digits) : p_(p), digits_(std::max(1, digits)) {
  mpz_class pD = pow_p(p, digits_);
  if (pD >= (mpz_class(1) << 62)) throw SizeCap("p^digits does not fit a machine word");
  pD_ = pD.get_ui();
  if (f.is_zero()) {
    zero_poly_ = true;
    return;
  }
  mpq_class scale;
  coeffs_ = f.primitive(scale);
  degree_ = f.degree();
  PadicNumber s = PadicNumber::from_rational(p, scale);
  scale_v_ = s.valuation();
  scale_u_ = s.unit(digits_).get_ui();
  fits128_ = true;
  for (const auto& c : coeffs_) {
    if (mpz_sizeinbase(c.get_mpz_t(), 2) > 100) {
      fits128_ = false;
      break;
    }
  }
  if (fits128_)
    for (const auto& c : coeffs_) {
      mpz_class a = abs(c);
      std::uint64_t hi = 0, lo = 0;
      mpz_class h = a >> 64, l = a - (h << 64);
      mpz_export(&hi, nullptr, 1, sizeof(hi), 0, 0, h.get_mpz_t());
      mpz_export(&lo, nullptr, 1, sizeof(lo), 0, 0, l.get_mpz_t());
      __int128 v = (static_cast<__int128>(hi) << 64) | lo;
      coeffs128_.push_back(c < 0 ? -v : v);
    }
}

AtomValue PolyKernel::finish(long vX, std::uint64_t unitX, long S) const {
  AtomValue a;
  a.zero = false;
  a.v = scale_v_ + vX - S * degree_;
  a.u = static_cast<std::uint64_t>((static_cast<unsigned __int128>(scale_u_) * unitX) % pD_);
  return a;
}

AtomValue PolyKernel::eval(const SamplePoint& t) const {
  if (zero_poly_) return AtomValue{};
  if (t.zero) {
    const mpz_class& c0 = coeffs_[0];
    if (c0 == 0) return AtomValue{};
    mpz_class x = c0;
    mpz_class pz = p_;
    long vX = static_cast<long>(mpz_remove(x.get_mpz_t(), x.get_mpz_t(), pz.get_mpz_t()));
    return finish(vX, mpz_mod_u64(x, pD_), 0);
  }
  long S = t.v < 0 ? -t.v : 0;
  long up = t.v > 0 ? t.v : 0;
  if (fits128_) {
    bool ok = true;
    __int128 U = static_cast<__int128>(t.u), pu;
    ok = pow128(p_, up, pu) && !__builtin_mul_overflow(U, pu, &U);
    __int128 acc = 0;
    if (ok) {
      acc = coeffs128_[degree_];
      for (int i = degree_ - 1; i >= 0 && ok; --i) {
        __int128 ps;
        ok = pow128(p_, S * (degree_ - i), ps);
        __int128 term;
        ok = ok && !__builtin_mul_overflow(coeffs128_[i], ps, &term);
        ok = ok && !__builtin_mul_overflow(acc, U, &acc);
        ok = ok && !__builtin_add_overflow(acc, term, &acc);
      }
    }
    if (ok) {
      if (acc == 0) return AtomValue{};
      long vX = 0;
      while (acc % p_ == 0) {
        acc /= p_;
        ++vX;
      }
      __int128 m = acc % static_cast<__int128>(pD_);
      if (m < 0) m += pD_;
      return finish(vX, static_cast<std::uint64_t>(m), S);
    }
  }
  mpz_class U = from_u64(t.u) * pow_p(p_, up);
  mpz_class acc = coeffs_[degree_];
  for (int i = degree_ - 1; i >= 0; --i) acc = acc * U + coeffs_[i] * pow_p(p_, S * (degree_ - i));
  if (acc == 0) return AtomValue{};
  mpz_class pz = p_;
  long vX = static_cast<long>(mpz_remove(acc.get_mpz_t(), acc.get_mpz_t(), pz.get_mpz_t()));
  return finish(vX, mpz_mod_u64(acc, pD_), S);
}

// ---------------------------------------------------------------------------

FastEvaluator::FastEvaluator(const Formula& f, const PadicConfig& cfg) : cfg_(cfg) {
  root_ = add_node(f);
  compile_kernels();
}

FastEvaluator::FastEvaluator(const NormalForm& nf, const PadicConfig& cfg) : cfg_(cfg), is_nf_(true) {
  for (const auto& cj : nf.conjuncts) {
    std::vector<int> ids;
    for (const auto& c : cj) ids.push_back(add_cond(c));
    nf_.push_back(std::move(ids));
  }
  compile_kernels();
}

int FastEvaluator::poly_index(const MPoly& m) {
  for (std::size_t i = 0; i < polys_.size(); ++i)
    if (polys_[i] == m) return static_cast<int>(i);
  if (m.nvars() > 1 && !m.is_univariate_in(0))
    throw ArityError("fast evaluation supports one variable");
  polys_.push_back(m);
  return static_cast<int>(polys_.size()) - 1;
}

int FastEvaluator::add_cond(const BasicCondition& c) {
  Cond k;
  k.kind = c.kind;
  k.f = poly_index(c.f);
  if (c.kind == CondKind::NORM_LE) k.g = poly_index(c.g);
  k.N = c.N;
  k.r = c.r;
  k.star = c.star;
  k.M = c.M;
  if (c.kind == CondKind::POWER_COSET) {
    k.table = CosetTable::get(cfg_.p, SubgroupSpec::pn(c.N), cfg_);
    if (c.r >= static_cast<int>(k.table->index())) throw DomainError("coset index out of range");
    digits_ = std::max(digits_, k.table->digits());
  }
  if (c.kind == CondKind::QNM) {
    k.pM = pow_p(cfg_.p, c.M).get_ui();
    digits_ = std::max(digits_, static_cast<int>(c.M));
  }
  conds_.push_back(std::move(k));
  return static_cast<int>(conds_.size()) - 1;
}

int FastEvaluator::add_node(const Formula& f) {
  Node n;
  n.op = f.op;
  if (f.op == Formula::Op::LEAF) n.cond = add_cond(f.leaf);
  for (const auto& k : f.kids) n.kids.push_back(add_node(k));
  nodes_.push_back(std::move(n));
  return static_cast<int>(nodes_.size()) - 1;
}

void FastEvaluator::compile_kernels() {
  for (const auto& m : polys_) {
    UPoly u = m.nvars() == 0 ? UPoly::constant(m.constant_term()) : m.to_univariate(0);
    kernels_.emplace_back(u, cfg_.p, digits_);
  }
  vals_.resize(polys_.size());
  have_.assign(polys_.size(), 0);
}

const AtomValue& FastEvaluator::atom(int i) {
  if (!have_[i]) {
    vals_[i] = kernels_[i].eval(*cur_);
    have_[i] = 1;
  }
  return vals_[i];
}

bool FastEvaluator::cond(int i) {
  const Cond& c = conds_[i];
  switch (c.kind) {
    case CondKind::ZERO: return atom(c.f).zero;
    case CondKind::NORM_LE: {
      const AtomValue& g = atom(c.g);
      if (g.zero) return true;
      const AtomValue& f = atom(c.f);
      if (f.zero) return false;
      return g.v >= f.v;
    }
    case CondKind::POWER_COSET: {
      const AtomValue& a = atom(c.f);
      if (a.zero) return c.r == 0 && !c.star;
      return c.table->classify(a.v, a.u) == c.r;
    }
    case CondKind::QNM: {
      const AtomValue& a = atom(c.f);
      if (a.zero) return true;
      if (((a.v % c.N) + c.N) % c.N != 0) return false;
      return a.u % c.pM == 1 % c.pM;
    }
  }
  return false;
}

bool FastEvaluator::node(int i) {
  const Node& n = nodes_[i];
  switch (n.op) {
    case Formula::Op::TRUE: return true;
    case Formula::Op::FALSE: return false;
    case Formula::Op::LEAF: return cond(n.cond);
    case Formula::Op::NOT: return !node(n.kids[0]);
    case Formula::Op::AND:
      for (int k : n.kids)
        if (!node(k)) return false;
      return true;
    case Formula::Op::OR:
      for (int k : n.kids)
        if (node(k)) return true;
      return false;
  }
  return false;
}

bool FastEvaluator::eval(const SamplePoint& t) {
  cur_ = &t;
  std::fill(have_.begin(), have_.end(), 0);
  if (!is_nf_) return node(root_);
  for (const auto& cj : nf_) {
    bool all = true;
    for (int c : cj)
      if (!cond(c)) {
        all = false;
        break;
      }
    if (all) return true;
  }
  return false;
}

}  // namespace padicsa
