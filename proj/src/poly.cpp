#include "padicsa/poly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace padicsa {

std::string rational_to_string(const mpq_class& q) { return q.get_str(); }

// ---------------------------------------------------------------------------
// UPoly

UPoly::UPoly(std::vector<mpq_class> coeffs) : c_(std::move(coeffs)) {
  for (auto& c : c_) c.canonicalize();
  trim();
}

void UPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

UPoly UPoly::constant(const mpq_class& c) { return UPoly(std::vector<mpq_class>{c}); }

UPoly UPoly::monomial(const mpq_class& c, int deg) {
  std::vector<mpq_class> v(static_cast<std::size_t>(deg) + 1, mpq_class(0));
  v[deg] = c;
  return UPoly(std::move(v));
}

UPoly UPoly::linear_root(const mpq_class& c) { return UPoly({mpq_class(-c), mpq_class(1)}); }

mpq_class UPoly::coeff(int i) const {
  if (i < 0 || i >= static_cast<int>(c_.size())) return 0;
  return c_[i];
}

UPoly operator+(const UPoly& a, const UPoly& b) {
  std::vector<mpq_class> r(std::max(a.c_.size(), b.c_.size()), mpq_class(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
  return UPoly(std::move(r));
}

UPoly UPoly::operator-() const {
  UPoly r = *this;
  for (auto& c : r.c_) c = -c;
  return r;
}

UPoly operator-(const UPoly& a, const UPoly& b) { return a + (-b); }

UPoly operator*(const UPoly& a, const UPoly& b) {
  if (a.is_zero() || b.is_zero()) return UPoly();
  std::vector<mpq_class> r(a.c_.size() + b.c_.size() - 1, mpq_class(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
  return UPoly(std::move(r));
}

UPoly UPoly::scaled(const mpq_class& s) const {
  UPoly r = *this;
  for (auto& c : r.c_) c *= s;
  r.trim();
  return r;
}

UPoly UPoly::pow(int n) const {
  if (n < 0) throw DomainError("negative polynomial power");
  UPoly acc = constant(1), base = *this;
  while (n > 0) {
    if (n & 1) acc = acc * base;
    n >>= 1;
    if (n) base = base * base;
  }
  return acc;
}

void UPoly::divmod(const UPoly& a, const UPoly& b, UPoly& q, UPoly& r) {
  if (b.is_zero()) throw DomainError("polynomial division by zero");
  std::vector<mpq_class> rem = a.c_;
  int db = b.degree();
  int da = a.degree();
  std::vector<mpq_class> quo(da >= db ? static_cast<std::size_t>(da - db + 1) : 0, mpq_class(0));
  for (int i = da; i >= db; --i) {
    if (rem[i] == 0) continue;
    mpq_class f = rem[i] / b.lead();
    quo[i - db] = f;
    for (int j = 0; j <= db; ++j) rem[i - db + j] -= f * b.c_[j];
  }
  q = UPoly(std::move(quo));
  r = UPoly(std::move(rem));
}

UPoly UPoly::derivative() const {
  if (c_.size() <= 1) return UPoly();
  std::vector<mpq_class> r(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * static_cast<long>(i);
  return UPoly(std::move(r));
}

UPoly UPoly::monic() const {
  if (is_zero()) return *this;
  return scaled(1 / lead());
}

UPoly UPoly::shifted(const mpq_class& s) const {
  // Horner in the shifted variable.
  UPoly r;
  UPoly lin({s, mpq_class(1)});
  for (int i = degree(); i >= 0; --i) r = r * lin + constant(c_[i]);
  return r;
}

UPoly UPoly::reversed() const {
  std::vector<mpq_class> r(c_.rbegin(), c_.rend());
  return UPoly(std::move(r));
}

mpq_class UPoly::eval(const mpq_class& x) const {
  mpq_class acc = 0;
  for (int i = degree(); i >= 0; --i) acc = acc * x + c_[i];
  return acc;
}

PadicNumber UPoly::eval(const PadicNumber& x) const {
  long p = x.prime();
  if (x.is_exact()) return PadicNumber::from_rational(p, eval(x.is_zero() ? mpq_class(0) : x.rational()));
  PadicNumber acc = PadicNumber::zero(p);
  for (int i = degree(); i >= 0; --i) acc = acc * x + PadicNumber::from_rational(p, c_[i]);
  return acc;
}

std::vector<mpz_class> UPoly::primitive(mpq_class& scale) const {
  if (is_zero()) {
    scale = 0;
    return {};
  }
  mpz_class den = 1;
  for (const auto& c : c_) {
    mpz_class d = c.get_den();
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), d.get_mpz_t());
  }
  std::vector<mpz_class> ints;
  mpz_class g = 0;
  for (const auto& c : c_) {
    mpz_class v = c.get_num() * (den / c.get_den());
    ints.push_back(v);
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
  }
  for (auto& v : ints) v /= g;
  scale = mpq_class(g, den);
  scale.canonicalize();
  return ints;
}

std::string UPoly::to_string(const std::string& var) const {
  return MPoly::from_univariate(*this, 1, 0).to_string({var});
}

UPoly gcd(const UPoly& a, const UPoly& b) {
  UPoly x = a, y = b;
  while (!y.is_zero()) {
    UPoly q, r;
    UPoly::divmod(x, y, q, r);
    x = y;
    y = r;
  }
  return x.monic();
}

// ---------------------------------------------------------------------------
// MPoly

void MPoly::add_term(const Exponents& e, const mpq_class& c) {
  if (c == 0) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
    return;
  }
  it->second += c;
  if (it->second == 0) terms_.erase(it);
}

MPoly MPoly::constant(std::size_t nvars, const mpq_class& c) {
  MPoly r(nvars);
  r.add_term(Exponents(nvars, 0), c);
  return r;
}

MPoly MPoly::variable(std::size_t nvars, std::size_t index) {
  MPoly r(nvars);
  Exponents e(nvars, 0);
  e[index] = 1;
  r.add_term(e, 1);
  return r;
}

MPoly MPoly::from_univariate(const UPoly& u, std::size_t nvars, std::size_t index) {
  MPoly r(nvars);
  for (int i = 0; i <= u.degree(); ++i) {
    Exponents e(nvars, 0);
    e[index] = i;
    r.add_term(e, u.coeff(i));
  }
  return r;
}

bool MPoly::is_constant() const {
  for (const auto& [e, c] : terms_)
    for (int k : e)
      if (k != 0) return false;
  return true;
}

mpq_class MPoly::constant_term() const {
  auto it = terms_.find(Exponents(nvars_, 0));
  return it == terms_.end() ? mpq_class(0) : it->second;
}

int MPoly::total_degree() const {
  int d = is_zero() ? -1 : 0;
  for (const auto& [e, c] : terms_) d = std::max(d, std::accumulate(e.begin(), e.end(), 0));
  return d;
}

int MPoly::degree_in(std::size_t index) const {
  int d = is_zero() ? -1 : 0;
  for (const auto& [e, c] : terms_) d = std::max(d, e[index]);
  return d;
}

MPoly operator+(const MPoly& a, const MPoly& b) {
  MPoly r(std::max(a.nvars_, b.nvars_));
  for (const auto& [e, c] : a.terms_) r.add_term(e, c);
  for (const auto& [e, c] : b.terms_) r.add_term(e, c);
  return r;
}

MPoly MPoly::operator-() const { return scaled(-1); }

MPoly operator-(const MPoly& a, const MPoly& b) { return a + (-b); }

MPoly operator*(const MPoly& a, const MPoly& b) {
  MPoly r(std::max(a.nvars_, b.nvars_));
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      MPoly::Exponents e(r.nvars_, 0);
      for (std::size_t i = 0; i < r.nvars_; ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  return r;
}

MPoly MPoly::scaled(const mpq_class& s) const {
  MPoly r(nvars_);
  for (const auto& [e, c] : terms_) r.add_term(e, c * s);
  return r;
}

MPoly MPoly::pow(int n) const {
  if (n < 0) throw DomainError("negative polynomial power");
  MPoly acc = constant(nvars_, 1), base = *this;
  while (n > 0) {
    if (n & 1) acc = acc * base;
    n >>= 1;
    if (n) base = base * base;
  }
  return acc;
}

bool MPoly::operator<(const MPoly& o) const {
  if (nvars_ != o.nvars_) return nvars_ < o.nvars_;
  return terms_ < o.terms_;
}

bool MPoly::is_univariate_in(std::size_t index) const {
  for (const auto& [e, c] : terms_)
    for (std::size_t i = 0; i < e.size(); ++i)
      if (i != index && e[i] != 0) return false;
  return true;
}

UPoly MPoly::to_univariate(std::size_t index) const {
  if (!is_univariate_in(index)) throw ArityError("polynomial involves more than one variable");
  std::vector<mpq_class> c(static_cast<std::size_t>(std::max(0, degree_in(index) + 1)), mpq_class(0));
  for (const auto& [e, k] : terms_) c[e[index]] += k;
  return UPoly(std::move(c));
}

PadicNumber MPoly::eval(const std::vector<PadicNumber>& point, long p) const {
  if (point.size() != nvars_) throw ArityError("point arity does not match polynomial");
  bool exact = std::all_of(point.begin(), point.end(), [](const PadicNumber& x) { return x.is_exact(); });
  if (exact) {
    std::vector<mpq_class> q;
    for (const auto& x : point) q.push_back(x.is_zero() ? mpq_class(0) : x.rational());
    return PadicNumber::from_rational(p, eval(q));
  }
  PadicNumber acc = PadicNumber::zero(p);
  for (const auto& [e, c] : terms_) {
    PadicNumber m = PadicNumber::from_rational(p, c);
    for (std::size_t i = 0; i < nvars_; ++i)
      if (e[i]) m = m * point[i].pow(e[i]);
    acc = acc + m;
  }
  return acc;
}

mpq_class MPoly::eval(const std::vector<mpq_class>& point) const {
  if (point.size() != nvars_) throw ArityError("point arity does not match polynomial");
  mpq_class acc = 0;
  for (const auto& [e, c] : terms_) {
    mpq_class m = c;
    for (std::size_t i = 0; i < nvars_; ++i)
      for (int k = 0; k < e[i]; ++k) m *= point[i];
    acc += m;
  }
  return acc;
}

std::string MPoly::to_string(const std::vector<std::string>& names) const {
  if (terms_.empty()) return "0";
  std::vector<std::pair<Exponents, mpq_class>> ts(terms_.begin(), terms_.end());
  std::stable_sort(ts.begin(), ts.end(), [](const auto& a, const auto& b) {
    int da = std::accumulate(a.first.begin(), a.first.end(), 0);
    int db = std::accumulate(b.first.begin(), b.first.end(), 0);
    if (da != db) return da > db;
    return a.first > b.first;
  });
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : ts) {
    mpq_class a = abs(c);
    bool neg = c < 0;
    if (first)
      os << (neg ? "-" : "");
    else
      os << (neg ? " - " : " + ");
    first = false;
    std::vector<std::string> parts;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      parts.push_back(e[i] == 1 ? names.at(i) : names.at(i) + "^" + std::to_string(e[i]));
    }
    if (parts.empty() || a != 1) {
      os << a.get_str();
      if (!parts.empty()) os << "*";
    }
    for (std::size_t i = 0; i < parts.size(); ++i) os << (i ? "*" : "") << parts[i];
  }
  return os.str();
}

}  // namespace padicsa
