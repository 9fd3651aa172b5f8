#include "padicsa/padic.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <tuple>

namespace padicsa {

PadicConfig::PadicConfig(long prime, int work_precision) : p(prime), work_prec(work_precision) {
  if (!is_prime(p)) throw DomainError("p = " + std::to_string(p) + " is not prime");
  if (work_prec < 1) throw DomainError("work precision must be >= 1");
}

bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

mpz_class pow_p(long p, long k) {
  if (k < 0) throw DomainError("negative exponent in pow_p");
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(k));
  return r;
}

long vp(const mpz_class& n, long p) {
  if (n == 0) return PadicNumber::kInfiniteValuation;
  mpz_class t = n;
  mpz_class pz = p;
  return static_cast<long>(mpz_remove(t.get_mpz_t(), t.get_mpz_t(), pz.get_mpz_t()));
}

long vp(long n, long p) {
  if (n == 0) return PadicNumber::kInfiniteValuation;
  long v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

namespace {

mpz_class mod_pos(const mpz_class& a, const mpz_class& m) {
  mpz_class r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

mpz_class inv_mod(const mpz_class& a, const mpz_class& m) {
  mpz_class r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
    throw DomainError("element is not invertible modulo p^k");
  return r;
}

mpz_class powm(const mpz_class& b, const mpz_class& e, const mpz_class& m) {
  mpz_class r;
  mpz_powm(r.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------
// construction

PadicNumber PadicNumber::zero(long p) {
  PadicNumber z;
  z.p_ = p;
  return z;
}

PadicNumber PadicNumber::exact_from(long p, mpq_class q) {
  q.canonicalize();
  PadicNumber x;
  x.p_ = p;
  if (q == 0) return x;
  x.zero_ = false;
  x.exact_ = true;
  x.q_ = q;
  mpz_class pz = p;
  x.num_unit_ = q.get_num();
  x.den_unit_ = q.get_den();
  long a = static_cast<long>(mpz_remove(x.num_unit_.get_mpz_t(), x.num_unit_.get_mpz_t(), pz.get_mpz_t()));
  long b = static_cast<long>(mpz_remove(x.den_unit_.get_mpz_t(), x.den_unit_.get_mpz_t(), pz.get_mpz_t()));
  x.v_ = a - b;
  return x;
}

PadicNumber PadicNumber::from_rational(long p, const mpq_class& q) { return exact_from(p, q); }

PadicNumber PadicNumber::from_integer(long p, long long n) {
  mpz_class z;
  mpz_set_si(z.get_mpz_t(), static_cast<long>(n));
  return exact_from(p, mpq_class(z));
}

PadicNumber PadicNumber::uniformizer_power(long p, long k) {
  if (k >= 0) return exact_from(p, mpq_class(pow_p(p, k)));
  return exact_from(p, mpq_class(mpz_class(1), pow_p(p, -k)));
}

PadicNumber PadicNumber::approximate(long p, long v, const mpz_class& unit, int prec) {
  if (prec < 1) throw InsufficientPrecision("approximate element without known digits");
  mpz_class m = pow_p(p, prec);
  mpz_class u = mod_pos(unit, m);
  if (u == 0) throw InsufficientPrecision("all known digits vanish");
  long e = vp(u, p);
  if (e > 0) {
    u /= pow_p(p, e);
    v += e;
    prec -= static_cast<int>(e);
  }
  PadicNumber x;
  x.p_ = p;
  x.zero_ = false;
  x.exact_ = false;
  x.v_ = v;
  x.prec_ = prec;
  x.unit_ = u;
  return x;
}

long PadicNumber::absolute_precision() const {
  if (exact_) return LONG_MAX;
  return v_ + prec_;
}

mpz_class PadicNumber::unit(int digits) const {
  if (zero_) throw DomainError("zero has no unit part");
  if (digits < 0) throw DomainError("negative digit count");
  mpz_class m = pow_p(p_, digits);
  if (exact_) return mod_pos(num_unit_ * inv_mod(den_unit_, m), m);
  if (digits > prec_)
    throw InsufficientPrecision("requested " + std::to_string(digits) + " unit digits, only " +
                                std::to_string(prec_) + " known");
  return mod_pos(unit_, m);
}

std::vector<long> PadicNumber::unit_digits(int digits) const {
  mpz_class u = unit(digits);
  std::vector<long> out;
  mpz_class pz = p_;
  for (int i = 0; i < digits; ++i) {
    mpz_class r = mod_pos(u, pz);
    out.push_back(r.get_si());
    u /= pz;
  }
  return out;
}

const mpq_class& PadicNumber::rational() const {
  if (!exact_) throw DomainError("approximate element has no exact rational value");
  return q_;
}

PadicNumber PadicNumber::truncated(int digits) const {
  if (zero_) return *this;
  int k = exact_ ? digits : std::min(digits, prec_);
  return approximate(p_, v_, unit(k), k);
}

mpq_class PadicNumber::truncation_below(long abs_pos) const {
  if (zero_ || abs_pos <= v_) return mpq_class(0);
  long digits = abs_pos - v_;
  if (!exact_ && digits > prec_)
    throw InsufficientPrecision("truncation beyond known digits");
  mpq_class r(unit(static_cast<int>(digits)));
  if (v_ >= 0)
    r *= pow_p(p_, v_);
  else
    r /= pow_p(p_, -v_);
  r.canonicalize();
  return r;
}

long PadicNumber::digit_at(long pos) const {
  if (zero_ || pos < v_) return 0;
  long k = pos - v_ + 1;
  if (!exact_ && k > prec_) throw InsufficientPrecision("digit beyond known precision");
  mpz_class u = unit(static_cast<int>(k));
  u /= pow_p(p_, k - 1);
  return u.get_si();
}

// ---------------------------------------------------------------------------
// arithmetic

void PadicNumber::check_primes(const PadicNumber& a, const PadicNumber& b, long& p) {
  if (a.p_ != 0 && b.p_ != 0 && a.p_ != b.p_)
    throw DomainError("mixing elements of different p-adic fields");
  p = a.p_ != 0 ? a.p_ : b.p_;
}

PadicNumber PadicNumber::operator-() const {
  if (zero_) return *this;
  if (exact_) return exact_from(p_, -q_);
  mpz_class m = pow_p(p_, prec_);
  return approximate(p_, v_, m - unit_, prec_);
}

PadicNumber operator+(const PadicNumber& a, const PadicNumber& b) {
  long p;
  PadicNumber::check_primes(a, b, p);
  if (a.zero_) {
    PadicNumber r = b;
    r.p_ = p;
    return r;
  }
  if (b.zero_) {
    PadicNumber r = a;
    r.p_ = p;
    return r;
  }
  if (a.exact_ && b.exact_) return PadicNumber::exact_from(p, a.q_ + b.q_);
  long A = std::min(a.absolute_precision(), b.absolute_precision());
  long vmin = std::min(a.v_, b.v_);
  long span = A - vmin;
  mpz_class mod = pow_p(p, span);
  mpz_class s = 0;
  for (const PadicNumber* x : {&a, &b}) {
    if (A > x->v_) s += x->unit(static_cast<int>(A - x->v_)) * pow_p(p, x->v_ - vmin);
  }
  s = mod_pos(s, mod);
  if (s == 0) throw InsufficientPrecision("cancellation exhausted all known digits");
  long e = vp(s, p);
  return PadicNumber::approximate(p, vmin + e, s / pow_p(p, e), static_cast<int>(span - e));
}

PadicNumber operator-(const PadicNumber& a, const PadicNumber& b) { return a + (-b); }

PadicNumber operator*(const PadicNumber& a, const PadicNumber& b) {
  long p;
  PadicNumber::check_primes(a, b, p);
  if (a.zero_ || b.zero_) return PadicNumber::zero(p);
  if (a.exact_ && b.exact_) return PadicNumber::exact_from(p, a.q_ * b.q_);
  int k = std::min(a.precision(), b.precision());
  mpz_class m = pow_p(p, k);
  return PadicNumber::approximate(p, a.v_ + b.v_, mod_pos(a.unit(k) * b.unit(k), m), k);
}

PadicNumber operator/(const PadicNumber& a, const PadicNumber& b) {
  long p;
  PadicNumber::check_primes(a, b, p);
  if (b.zero_) throw DomainError("division by zero");
  if (a.zero_) return PadicNumber::zero(p);
  if (a.exact_ && b.exact_) return PadicNumber::exact_from(p, a.q_ / b.q_);
  int k = std::min(a.precision(), b.precision());
  mpz_class m = pow_p(p, k);
  return PadicNumber::approximate(p, a.v_ - b.v_, mod_pos(a.unit(k) * inv_mod(b.unit(k), m), m), k);
}

PadicNumber PadicNumber::inverse() const {
  return PadicNumber::from_integer(p_, 1) / *this;
}

PadicNumber PadicNumber::pow(long n) const {
  if (n == 0) return from_integer(p_, 1);
  if (n < 0) return inverse().pow(-n);
  PadicNumber base = *this;
  PadicNumber acc = from_integer(p_, 1);
  while (n > 0) {
    if (n & 1) acc = acc * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return acc;
}

bool PadicNumber::identical(const PadicNumber& o) const {
  if (zero_ || o.zero_) return zero_ == o.zero_;
  if (exact_ != o.exact_) return false;
  if (exact_) return q_ == o.q_;
  return v_ == o.v_ && prec_ == o.prec_ && unit_ == o.unit_;
}

bool PadicNumber::agrees_with(const PadicNumber& o) const {
  if (zero_ || o.zero_) return zero_ == o.zero_;
  if (exact_ && o.exact_) return q_ == o.q_;
  if (v_ != o.v_) return false;
  int k = std::min(precision(), o.precision());
  return unit(k) == o.unit(k);
}

bool PadicNumber::equals(const PadicNumber& o) const {
  if (zero_ || o.zero_) return zero_ == o.zero_;
  if (exact_ && o.exact_) return q_ == o.q_;
  (void)(*this - o);  // throws when the difference is undetermined
  return false;
}

std::string PadicNumber::to_string() const {
  if (zero_) return "0";
  if (exact_) return q_.get_str();
  std::ostringstream os;
  if (v_ != 0) os << p_ << "^" << v_ << " * ";
  os << "(";
  std::vector<long> d = unit_digits(prec_);
  for (int i = 0; i < prec_; ++i) {
    if (i > 0) os << " + ";
    os << d[i];
    if (i == 1) os << "*" << p_;
    if (i > 1) os << "*" << p_ << "^" << i;
  }
  os << " + ...)";
  return os.str();
}

// ---------------------------------------------------------------------------
// predicates

long valuation(const PadicNumber& x) { return x.valuation(); }

int pn_decision_digits(long p, long N) { return static_cast<int>(2 * vp(N, p) + 1); }

namespace {

// Bitset of N-th powers among residues mod p^m, cached.
const std::vector<bool>& power_residues(long p, long N, int m) {
  static std::mutex mu;
  static std::map<std::tuple<long, long, int>, std::vector<bool>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_tuple(p, N, m);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  mpz_class pm = pow_p(p, m);
  if (pm > 50'000'000) throw SizeCap("residue table p^m too large");
  unsigned long mod = pm.get_ui();
  std::vector<bool> bits(mod, false);
  mpz_class e = N;
  for (unsigned long w = 1; w < mod; ++w) {
    if (w % p == 0) continue;
    mpz_class r = powm(mpz_class(w), e, pm);
    bits[r.get_ui()] = true;
  }
  return cache.emplace(key, std::move(bits)).first->second;
}

}  // namespace

bool in_PN(const PadicNumber& x, long N) {
  if (N < 1) throw DomainError("power N must be >= 1");
  if (x.is_zero()) return true;
  if (N == 1) return true;
  long p = x.prime();
  int m = pn_decision_digits(p, N);
  if (x.precision() < m)
    throw InsufficientPrecision("P_" + std::to_string(N) + " membership needs " + std::to_string(m) +
                                " unit digits");
  long v = x.valuation();
  if (((v % N) + N) % N != 0) return false;
  mpz_class u = x.unit(m);
  return power_residues(p, N, m)[u.get_ui()];
}

bool in_QNM(const PadicNumber& x, long N, long M) {
  if (N < 1 || M < 1) throw DomainError("Q_{N,M} needs N, M >= 1");
  if (x.is_zero()) return true;
  if (x.precision() < M) throw InsufficientPrecision("Q_{N,M} membership needs M unit digits");
  long v = x.valuation();
  if (((v % N) + N) % N != 0) return false;
  return x.unit(static_cast<int>(M)) == 1;
}

PadicNumber nth_root(const PadicNumber& x, long N, int work_prec) {
  if (N < 1) throw DomainError("root index must be >= 1");
  if (x.is_zero()) return x;
  long p = x.prime();
  long s = vp(N, p);
  if (!in_QNM(x, N, 2 * s + 1))
    throw DomainError("nth_root: argument not in Q_{N, 2v_p(N)+1}");
  if (N == 1) return x;
  int K = x.is_exact() ? work_prec : x.precision();
  int out_prec = static_cast<int>(K - s);
  if (out_prec < 1) throw InsufficientPrecision("nth_root would keep no digits");
  mpz_class u = x.unit(K);
  mpz_class modK = pow_p(p, K);
  mpz_class modR = pow_p(p, out_prec);
  mpz_class ps = pow_p(p, s);
  mpz_class Nprime = mpz_class(N) / ps;
  mpz_class Nz = N;
  mpz_class Nm1 = N - 1;
  mpz_class r = 1;
  for (int iter = 0; iter < 256; ++iter) {
    mpz_class f = mod_pos(powm(r, Nz, modK) - u, modK);
    if (f == 0) {
      return PadicNumber::approximate(p, x.valuation() / N, r, out_prec);
    }
    mpz_class deriv = mod_pos(Nprime * powm(r, Nm1, modR), modR);
    mpz_class delta = mod_pos((f / ps) * inv_mod(deriv, modR), modR);
    r = mod_pos(r - delta, modR);
  }
  throw InsufficientPrecision("nth_root: Newton iteration did not converge");
}

PadicNumber root_of_power(const PadicNumber& x, long e, int work_prec) {
  if (e < 1) throw DomainError("root index must be >= 1");
  if (x.is_zero() || e == 1) return x;
  long p = x.prime();
  long v = x.valuation();
  if (((v % e) + e) % e != 0) throw RootExtractionError("valuation not divisible by root index");
  int m = pn_decision_digits(p, e);
  if (x.precision() < m) throw InsufficientPrecision("root extraction needs more digits");
  mpz_class pm = pow_p(p, m);
  mpz_class u = x.unit(m);
  mpz_class ez = e;
  std::optional<mpz_class> seed;
  for (unsigned long w = 1; w < pm.get_ui(); ++w) {
    if (w % p == 0) continue;
    if (powm(mpz_class(w), ez, pm) == u) {
      seed = mpz_class(w);
      break;
    }
  }
  if (!seed) throw RootExtractionError("unit is not an e-th power residue");
  PadicNumber w = PadicNumber::from_rational(p, mpq_class(*seed));
  PadicNumber scale = PadicNumber::uniformizer_power(p, v / e) * w;
  PadicNumber rest = x / scale.pow(e);
  return scale * nth_root(rest, e, work_prec);
}

std::vector<PadicNumber> coset_reps(long N, const PadicConfig& cfg) {
  if (N < 1) throw DomainError("power N must be >= 1");
  long p = cfg.p;
  int m = pn_decision_digits(p, N);
  mpz_class pm = pow_p(p, m);
  if (pm * N > 4'000'000) throw SizeCap("coset enumeration too large");
  unsigned long mod = pm.get_ui();
  std::vector<PadicNumber> reps;
  std::vector<std::vector<std::size_t>> by_val(static_cast<std::size_t>(N));
  for (long i = 0; i < N; ++i) {
    PadicNumber pi = PadicNumber::uniformizer_power(p, i);
    for (unsigned long u = 1; u < mod; ++u) {
      if (u % p == 0) continue;
      PadicNumber x = pi * PadicNumber::from_integer(p, static_cast<long long>(u));
      bool fresh = true;
      for (std::size_t j : by_val[i]) {
        if (in_PN(x / reps[j], N)) {
          fresh = false;
          break;
        }
      }
      if (fresh) {
        by_val[i].push_back(reps.size());
        reps.push_back(x);
      }
    }
  }
  return reps;
}

std::vector<PadicNumber> roots_of_unity(long e, long p, int digits) {
  if (e < 1) throw DomainError("root of unity order must be >= 1");
  std::vector<PadicNumber> out;
  if (p == 2) {
    out.push_back(PadicNumber::from_integer(p, 1));
    if (e % 2 == 0) out.push_back(PadicNumber::from_integer(p, -1));
    return out;
  }
  // Q_p (p odd) contains exactly the (p-1)-th roots of unity.
  long g = std::gcd(e, p - 1);
  mpz_class pz = p;
  mpz_class gz = g;
  mpz_class mod = pow_p(p, digits);
  for (long z = 1; z < p; ++z) {
    if (powm(mpz_class(z), gz, pz) != 1) continue;
    if (z == 1) {
      out.push_back(PadicNumber::from_integer(p, 1));
      continue;
    }
    if (z == p - 1) {
      out.push_back(PadicNumber::from_integer(p, -1));
      continue;
    }
    // Teichmuller lift: Newton on x^g - 1, simple root since p does not divide g.
    mpz_class r = z;
    mpz_class gm1 = g - 1;
    for (int it = 0; it < 128; ++it) {
      mpz_class f = mod_pos(powm(r, gz, mod) - 1, mod);
      if (f == 0) break;
      mpz_class d = mod_pos(gz * powm(r, gm1, mod), mod);
      r = mod_pos(r - f * inv_mod(d, mod), mod);
    }
    out.push_back(PadicNumber::approximate(p, 0, r, digits));
  }
  return out;
}

bool in_Uen(const PadicNumber& x, long e, long n) {
  if (e < 1 || n < 1) throw DomainError("U_{e,n} needs e, n >= 1");
  if (x.is_zero() || x.valuation() != 0) return false;
  long p = x.prime();
  if (x.precision() < n) throw InsufficientPrecision("U_{e,n} membership needs n unit digits");
  mpz_class mod = pow_p(p, n);
  mpz_class u = x.unit(static_cast<int>(n));
  for (const PadicNumber& z : roots_of_unity(e, p, static_cast<int>(n))) {
    if (mod_pos(u * inv_mod(z.unit(static_cast<int>(n)), mod), mod) == 1) return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// subgroups

SubgroupSpec SubgroupSpec::pn(long N) {
  if (N < 1) throw DomainError("P_N needs N >= 1");
  SubgroupSpec g;
  g.kind = SubgroupKind::PN;
  g.N = N;
  return g;
}

SubgroupSpec SubgroupSpec::qnm(long N, long M) {
  if (N < 1 || M < 1) throw DomainError("Q_{N,M} needs N, M >= 1");
  SubgroupSpec g;
  g.kind = SubgroupKind::QNM;
  g.N = N;
  g.M = M;
  return g;
}

SubgroupSpec SubgroupSpec::unit_ball(long e, long n) {
  if (e < 1 || n < 1) throw DomainError("U_{e,n} needs e, n >= 1");
  SubgroupSpec g;
  g.kind = SubgroupKind::UNIT_BALL_Ue;
  g.e = e;
  g.n = n;
  return g;
}

bool SubgroupSpec::contains(const PadicNumber& x) const {
  if (x.is_zero()) return false;
  switch (kind) {
    case SubgroupKind::FULL: return true;
    case SubgroupKind::PN: return in_PN(x, N);
    case SubgroupKind::QNM: return in_QNM(x, N, M);
    case SubgroupKind::UNIT_BALL_Ue: return in_Uen(x, e, n);
  }
  return false;
}

int SubgroupSpec::decision_digits(long p) const {
  switch (kind) {
    case SubgroupKind::FULL: return 0;
    case SubgroupKind::PN: return N == 1 ? 0 : pn_decision_digits(p, N);
    case SubgroupKind::QNM: return static_cast<int>(M);
    case SubgroupKind::UNIT_BALL_Ue: return static_cast<int>(n);
  }
  return 0;
}

long SubgroupSpec::valuation_modulus() const {
  switch (kind) {
    case SubgroupKind::FULL: return 1;
    case SubgroupKind::PN:
    case SubgroupKind::QNM: return N;
    case SubgroupKind::UNIT_BALL_Ue: return 0;
  }
  return 1;
}

std::vector<PadicNumber> SubgroupSpec::coset_reps(const PadicConfig& cfg) const {
  switch (kind) {
    case SubgroupKind::FULL: return {PadicNumber::from_integer(cfg.p, 1)};
    case SubgroupKind::PN: return padicsa::coset_reps(N, cfg);
    case SubgroupKind::QNM: {
      mpz_class pm = pow_p(cfg.p, M);
      if (pm * N > 4'000'000) throw SizeCap("Q_{N,M} coset enumeration too large");
      std::vector<PadicNumber> reps;
      for (long i = 0; i < N; ++i)
        for (unsigned long u = 1; u < pm.get_ui(); ++u)
          if (u % cfg.p != 0)
            reps.push_back(PadicNumber::uniformizer_power(cfg.p, i) *
                           PadicNumber::from_integer(cfg.p, static_cast<long long>(u)));
      return reps;
    }
    case SubgroupKind::UNIT_BALL_Ue:
      throw DomainError("U_{e,n} has infinite index in K^*");
  }
  return {};
}

std::string SubgroupSpec::to_string() const {
  switch (kind) {
    case SubgroupKind::FULL: return "K*";
    case SubgroupKind::PN: return "P_" + std::to_string(N) + "*";
    case SubgroupKind::QNM: return "Q_{" + std::to_string(N) + "," + std::to_string(M) + "}*";
    case SubgroupKind::UNIT_BALL_Ue:
      return "(1+p^" + std::to_string(n) + "R)U_" + std::to_string(e);
  }
  return "?";
}

// ---------------------------------------------------------------------------
// coset tables

std::uint64_t inverse_mod_u64(std::uint64_t a, std::uint64_t m) {
  __int128 t = 0, nt = 1, r = static_cast<__int128>(m), nr = static_cast<__int128>(a % m);
  while (nr != 0) {
    __int128 q = r / nr;
    __int128 tmp = t - q * nt;
    t = nt;
    nt = tmp;
    tmp = r - q * nr;
    r = nr;
    nr = tmp;
  }
  if (r != 1) throw DomainError("residue not invertible");
  if (t < 0) t += m;
  return static_cast<std::uint64_t>(t);
}

std::shared_ptr<const CosetTable> CosetTable::get(long p, const SubgroupSpec& g,
                                                  const PadicConfig& cfg) {
  static std::mutex mu;
  static std::map<std::tuple<long, int, long, long>, std::shared_ptr<const CosetTable>> cache;
  if (g.kind == SubgroupKind::UNIT_BALL_Ue) throw DomainError("no coset table for U_{e,n}");
  auto key = std::make_tuple(p, static_cast<int>(g.kind), g.N, g.M);
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  auto t = std::make_shared<CosetTable>();
  t->p_ = p;
  SubgroupSpec eff = g;
  if (g.kind == SubgroupKind::PN && g.N == 1) eff = SubgroupSpec::full();
  t->m_ = eff.decision_digits(p);
  t->modulus_ = eff.valuation_modulus();
  t->pm_ = pow_p(p, t->m_);
  if (t->pm_ * t->modulus_ > 8'000'000) throw SizeCap("coset table too large");
  t->pm_u64_ = t->pm_.get_ui();
  PadicConfig local = cfg;
  local.p = p;
  t->reps_ = g.coset_reps(local);
  std::uint64_t pm = t->pm_u64_;
  t->table_.assign(static_cast<std::size_t>(t->modulus_) * pm, -1);
  std::vector<std::uint64_t> subgroup;  // unit residues of G
  if (eff.kind == SubgroupKind::PN) {
    const std::vector<bool>& bits = power_residues(p, eff.N, t->m_);
    for (std::uint64_t w = 0; w < pm; ++w)
      if (bits[w]) subgroup.push_back(w);
  } else {
    subgroup.push_back(1 % pm);
  }
  for (std::size_t j = 0; j < t->reps_.size(); ++j) {
    const PadicNumber& r = t->reps_[j];
    long i = ((r.valuation() % t->modulus_) + t->modulus_) % t->modulus_;
    std::uint64_t u = t->m_ == 0 ? 0 : r.unit(t->m_).get_ui();
    for (std::uint64_t w : subgroup) {
      std::uint64_t cls = static_cast<std::uint64_t>((static_cast<unsigned __int128>(u) * w) % pm);
      t->table_[static_cast<std::size_t>(i) * pm + cls] = static_cast<int>(j);
    }
  }
  for (long i = 0; i < t->modulus_; ++i)
    for (std::uint64_t u = 0; u < pm; ++u)
      if ((pm == 1 || u % p != 0) && t->table_[static_cast<std::size_t>(i) * pm + u] < 0)
        throw DomainError("coset table incomplete");
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(key, t).first->second;
}

int CosetTable::classify(long v, std::uint64_t unit_mod_pm) const {
  long i = ((v % modulus_) + modulus_) % modulus_;
  return table_[static_cast<std::size_t>(i) * pm_u64_ + (unit_mod_pm % pm_u64_)];
}

int CosetTable::classify(const PadicNumber& x) const {
  if (x.is_zero()) throw DomainError("zero has no coset");
  std::uint64_t u = m_ == 0 ? 0 : x.unit(m_).get_ui();
  return classify(x.valuation(), u);
}

bool CosetTable::same_coset(long vx, std::uint64_t ux, long vy, std::uint64_t uy) const {
  return classify(vx, ux) == classify(vy, uy);
}

}  // namespace padicsa
