#include "padicsa/roots.hpp"

#include <cmath>

namespace padicsa {

std::vector<std::pair<UPoly, int>> squarefree_decomposition(const UPoly& f) {
  std::vector<std::pair<UPoly, int>> out;
  if (f.degree() < 1) return out;
  UPoly a = f.monic();
  UPoly b = gcd(a, a.derivative());
  UPoly q, r;
  UPoly::divmod(a, b, q, r);
  UPoly c = q;  // squarefree part
  UPoly d;
  UPoly::divmod(a.derivative(), b, d, r);
  d = d - c.derivative();
  int i = 1;
  while (c.degree() >= 1) {
    UPoly g = gcd(c, d);
    if (g.degree() >= 1) out.emplace_back(g, i);
    UPoly c2, d2;
    UPoly::divmod(c, g, c2, r);
    UPoly::divmod(d, g, d2, r);
    c = c2;
    d = d2 - c.derivative();
    ++i;
  }
  return out;
}

std::vector<UPoly> coprime_basis(const std::vector<UPoly>& polys) {
  std::vector<UPoly> s;
  for (const auto& f : polys)
    for (const auto& [a, mult] : squarefree_decomposition(f)) s.push_back(a.monic());
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < s.size() && !changed; ++i) {
      for (std::size_t j = i + 1; j < s.size() && !changed; ++j) {
        UPoly g = gcd(s[i], s[j]);
        if (g.degree() < 1) continue;
        UPoly qi, qj, r;
        UPoly::divmod(s[i], g, qi, r);
        UPoly::divmod(s[j], g, qj, r);
        std::vector<UPoly> next;
        for (std::size_t k = 0; k < s.size(); ++k)
          if (k != i && k != j) next.push_back(s[k]);
        for (const UPoly& x : {g, qi, qj})
          if (x.degree() >= 1) next.push_back(x.monic());
        s = std::move(next);
        changed = true;
      }
    }
  }
  // deterministic order: by degree, then coefficients
  std::sort(s.begin(), s.end(), [](const UPoly& a, const UPoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (int i = a.degree(); i >= 0; --i)
      if (a.coeff(i) != b.coeff(i)) return a.coeff(i) < b.coeff(i);
    return false;
  });
  return s;
}

bool rational_reconstruction(const mpz_class& x, const mpz_class& m, mpq_class& out) {
  mpz_class bound;
  mpz_class half = m / 2;
  mpz_sqrt(bound.get_mpz_t(), half.get_mpz_t());
  mpz_class r0 = m, r1, t0 = 0, t1 = 1;
  mpz_mod(r1.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
  while (r1 > bound) {
    mpz_class q = r0 / r1;
    mpz_class r2 = r0 - q * r1;
    mpz_class t2 = t0 - q * t1;
    r0 = r1;
    r1 = r2;
    t0 = t1;
    t1 = t2;
  }
  if (t1 == 0 || abs(t1) > bound) return false;
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), t1.get_mpz_t(), m.get_mpz_t());
  if (g != 1) return false;
  out = mpq_class(r1, t1);
  out.canonicalize();
  return true;
}

namespace {

using IntPoly = std::vector<mpz_class>;

mpz_class eval_mod(const IntPoly& P, const mpz_class& x, const mpz_class& m) {
  mpz_class acc = 0;
  for (int i = static_cast<int>(P.size()) - 1; i >= 0; --i) {
    acc = acc * x + P[i];
    mpz_mod(acc.get_mpz_t(), acc.get_mpz_t(), m.get_mpz_t());
  }
  return acc;
}

IntPoly derivative(const IntPoly& P) {
  IntPoly d;
  for (std::size_t i = 1; i < P.size(); ++i) d.push_back(P[i] * static_cast<unsigned long>(i));
  return d;
}

// Roots of P in Z_p, as residues modulo p^K.
void zp_roots(IntPoly P, long p, int K, std::vector<mpz_class>& out) {
  mpz_class g = 0;
  for (const auto& c : P) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  if (g == 0) throw DomainError("zero polynomial has no isolated roots");
  long c = vp(g, p);
  if (c > 0) {
    mpz_class pc = pow_p(p, c);
    for (auto& a : P) a /= pc;
  }
  if (K <= 0) throw InsufficientPrecision("roots cluster beyond the internal lifting precision");
  mpz_class pz = p;
  mpz_class mod = pow_p(p, K);
  IntPoly D = derivative(P);
  for (long r = 0; r < p; ++r) {
    if (eval_mod(P, r, pz) != 0) continue;
    if (eval_mod(D, r, pz) != 0) {
      mpz_class x = r;
      for (int it = 0; it < 200; ++it) {
        mpz_class fx = eval_mod(P, x, mod);
        if (fx == 0) break;
        mpz_class dx = eval_mod(D, x, mod), inv;
        mpz_invert(inv.get_mpz_t(), dx.get_mpz_t(), mod.get_mpz_t());
        x = x - fx * inv;
        mpz_mod(x.get_mpz_t(), x.get_mpz_t(), mod.get_mpz_t());
      }
      out.push_back(x);
      continue;
    }
    // P(r + p s): shift then scale
    IntPoly Q = P;
    int n = static_cast<int>(Q.size());
    for (int i = 0; i < n; ++i)
      for (int j = n - 2; j >= i; --j) Q[j] += Q[j + 1] * r;
    mpz_class pp = 1;
    for (int i = 0; i < n; ++i) {
      Q[i] *= pp;
      pp *= p;
    }
    std::vector<mpz_class> sub;
    zp_roots(Q, p, K - 1, sub);
    for (const auto& s : sub) {
      mpz_class x = r + pz * s;
      mpz_mod(x.get_mpz_t(), x.get_mpz_t(), mod.get_mpz_t());
      out.push_back(x);
    }
  }
}

}  // namespace

std::vector<PadicNumber> padic_roots(const UPoly& f, const PadicConfig& cfg) {
  std::vector<PadicNumber> roots;
  if (f.degree() < 1) return roots;
  long p = cfg.p;
  int K = std::max(cfg.work_prec + 2, static_cast<int>(std::ceil(256.0 / std::log2(static_cast<double>(p)))));
  mpz_class mod = pow_p(p, K);
  mpq_class scale;
  IntPoly P = f.primitive(scale);

  auto finish = [&](const mpz_class& x, bool invert) {
    mpq_class q;
    if (rational_reconstruction(x, mod, q)) {
      mpq_class cand = q;
      if (invert) {
        if (cand == 0) return;
        cand = 1 / cand;
      }
      if (f.eval(cand) == 0) {
        roots.push_back(PadicNumber::from_rational(p, cand));
        return;
      }
    }
    if (x == 0) throw InsufficientPrecision("root too close to 0 for the lifting precision");
    PadicNumber a = PadicNumber::approximate(p, 0, x, K);
    if (invert) a = a.inverse();
    roots.push_back(a.truncated(cfg.work_prec));
  };

  std::vector<mpz_class> zr;
  zp_roots(P, p, K, zr);
  for (const auto& x : zr) finish(x, false);

  IntPoly R(P.rbegin(), P.rend());
  std::vector<mpz_class> rr;
  zp_roots(R, p, K, rr);
  mpz_class pz = p;
  for (const auto& s : rr) {
    mpz_class low;
    mpz_mod(low.get_mpz_t(), s.get_mpz_t(), pz.get_mpz_t());
    if (low != 0) continue;  // already found as a root in Z_p
    finish(s, true);
  }
  return roots;
}

PadicNumber SplitSystem::value_at_root(std::size_t poly, std::size_t root) const {
  const Factored& f = polys.at(poly);
  if (f.zero) return PadicNumber::zero(p);
  PadicNumber acc = PadicNumber::from_rational(p, f.lead);
  for (const auto& [j, m] : f.root_mult) {
    if (static_cast<std::size_t>(j) == root) return PadicNumber::zero(p);
    acc = acc * (roots[root] - roots[j]).pow(m);
  }
  return acc;
}

int SplitSystem::multiplicity(std::size_t poly, std::size_t root) const {
  for (const auto& [j, m] : polys.at(poly).root_mult)
    if (static_cast<std::size_t>(j) == root) return m;
  return 0;
}

SplitSystem split_system(const std::vector<UPoly>& polys, const PadicConfig& cfg) {
  SplitSystem s;
  s.p = cfg.p;
  std::vector<UPoly> nonconst;
  for (const auto& f : polys)
    if (f.degree() >= 1) nonconst.push_back(f);
  s.basis = coprime_basis(nonconst);
  std::vector<std::vector<int>> basis_roots(s.basis.size());
  for (std::size_t b = 0; b < s.basis.size(); ++b) {
    std::vector<PadicNumber> r = padic_roots(s.basis[b], cfg);
    if (static_cast<int>(r.size()) < s.basis[b].degree())
      throw UnsupportedSplitting("factor " + s.basis[b].to_string() + " does not split into linear factors over Q_" +
                                 std::to_string(cfg.p));
    for (auto& x : r) {
      basis_roots[b].push_back(static_cast<int>(s.roots.size()));
      s.roots.push_back(std::move(x));
      s.root_basis.push_back(static_cast<int>(b));
    }
  }
  for (const auto& f : polys) {
    SplitSystem::Factored fac;
    if (f.is_zero()) {
      fac.zero = true;
      s.polys.push_back(fac);
      continue;
    }
    fac.lead = f.lead();
    UPoly g = f;
    for (std::size_t b = 0; b < s.basis.size(); ++b) {
      int k = 0;
      while (g.degree() >= s.basis[b].degree()) {
        UPoly q, r;
        UPoly::divmod(g, s.basis[b], q, r);
        if (!r.is_zero()) break;
        g = q;
        ++k;
      }
      if (k > 0)
        for (int j : basis_roots[b]) fac.root_mult.emplace_back(j, k);
    }
    if (g.degree() != 0) throw DomainError("internal: factorization over the root basis is incomplete");
    s.polys.push_back(fac);
  }
  return s;
}

}  // namespace padicsa
