#pragma once

#include <gmpxx.h>

#include <map>
#include <string>
#include <vector>

#include "padicsa/padic.hpp"

namespace padicsa {

/// Univariate polynomial over Q, coefficients low degree first.
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<mpq_class> coeffs);
  static UPoly constant(const mpq_class& c);
  static UPoly monomial(const mpq_class& c, int deg);
  /// t - c
  static UPoly linear_root(const mpq_class& c);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  mpq_class coeff(int i) const;
  const mpq_class& lead() const { return c_.back(); }
  const std::vector<mpq_class>& coeffs() const { return c_; }

  friend UPoly operator+(const UPoly& a, const UPoly& b);
  friend UPoly operator-(const UPoly& a, const UPoly& b);
  friend UPoly operator*(const UPoly& a, const UPoly& b);
  UPoly operator-() const;
  UPoly scaled(const mpq_class& s) const;
  UPoly pow(int n) const;
  bool operator==(const UPoly& o) const { return c_ == o.c_; }

  static void divmod(const UPoly& a, const UPoly& b, UPoly& q, UPoly& r);
  UPoly derivative() const;
  UPoly monic() const;
  /// f(t + s)
  UPoly shifted(const mpq_class& s) const;
  /// t^deg f(1/t)
  UPoly reversed() const;

  mpq_class eval(const mpq_class& x) const;
  PadicNumber eval(const PadicNumber& x) const;

  /// Primitive integer polynomial P and rational s with f = s * P.
  std::vector<mpz_class> primitive(mpq_class& scale) const;

  std::string to_string(const std::string& var = "t") const;

 private:
  std::vector<mpq_class> c_;
  void trim();
};

/// Monic gcd; gcd(0, 0) = 0.
UPoly gcd(const UPoly& a, const UPoly& b);

/// Multivariate polynomial over Q in a fixed number of variables.
class MPoly {
 public:
  using Exponents = std::vector<int>;

  MPoly() = default;
  explicit MPoly(std::size_t nvars) : nvars_(nvars) {}
  static MPoly constant(std::size_t nvars, const mpq_class& c);
  static MPoly variable(std::size_t nvars, std::size_t index);
  static MPoly from_univariate(const UPoly& u, std::size_t nvars, std::size_t index);

  std::size_t nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  mpq_class constant_term() const;
  int total_degree() const;
  /// Degree in one variable.
  int degree_in(std::size_t index) const;
  const std::map<Exponents, mpq_class>& terms() const { return terms_; }

  friend MPoly operator+(const MPoly& a, const MPoly& b);
  friend MPoly operator-(const MPoly& a, const MPoly& b);
  friend MPoly operator*(const MPoly& a, const MPoly& b);
  MPoly operator-() const;
  MPoly scaled(const mpq_class& s) const;
  MPoly pow(int n) const;
  bool operator==(const MPoly& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }
  bool operator<(const MPoly& o) const;

  /// Only variable `index` may occur.
  bool is_univariate_in(std::size_t index) const;
  UPoly to_univariate(std::size_t index) const;

  PadicNumber eval(const std::vector<PadicNumber>& point, long p) const;
  mpq_class eval(const std::vector<mpq_class>& point) const;

  /// Parseable rendering, highest degree first.
  std::string to_string(const std::vector<std::string>& names) const;

 private:
  std::size_t nvars_ = 0;
  std::map<Exponents, mpq_class> terms_;
  void add_term(const Exponents& e, const mpq_class& c);
};

/// "a" or "a/b"
std::string rational_to_string(const mpq_class& q);

}  // namespace padicsa
