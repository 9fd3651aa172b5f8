#include "doctest.h"
#include "padicsa/padic.hpp"
#include "padicsa/poly.hpp"
#include "padicsa/roots.hpp"

using namespace padicsa;

namespace {
UPoly P(std::initializer_list<long> c) {
  std::vector<mpq_class> v;
  for (long x : c) v.emplace_back(x);
  return UPoly(v);
}
}  // namespace

TEST_CASE("univariate arithmetic") {
  UPoly f = P({-1, 0, 1});  // t^2 - 1
  UPoly g = P({1, 1});
  UPoly q, r;
  UPoly::divmod(f, g, q, r);
  CHECK(q == P({-1, 1}));
  CHECK(r.is_zero());
  CHECK(gcd(f, P({-1, 1}).pow(2)) == P({-1, 1}));
  CHECK(f.shifted(1) == P({0, 2, 1}));
  CHECK(f.derivative() == P({0, 2}));
  CHECK(f.eval(mpq_class(3)) == 8);
  CHECK(f.to_string() == "t^2 - 1");
}

TEST_CASE("multivariate polynomials") {
  MPoly x = MPoly::variable(2, 0), t = MPoly::variable(2, 1);
  MPoly f = (x * t).scaled(mpq_class(3, 2)) - MPoly::constant(2, 1);
  CHECK(f.total_degree() == 2);
  CHECK(f.degree_in(1) == 1);
  CHECK(f.eval(std::vector<mpq_class>{2, 3}) == 8);
  CHECK(f.to_string({"x", "t"}) == "3/2*x*t - 1");
  CHECK_FALSE(f.is_univariate_in(1));
  CHECK(t.pow(2).is_univariate_in(1));
}

TEST_CASE("squarefree decomposition and coprime basis") {
  UPoly f = P({-1, 1}).pow(3) * P({2, 1});
  auto sf = squarefree_decomposition(f);
  UPoly prod = UPoly::constant(1);
  for (auto& [a, i] : sf) prod = prod * a.pow(i);
  CHECK(prod == f.monic());
  auto basis = coprime_basis({P({-1, 0, 1}), P({-1, 1}).pow(2)});
  CHECK(basis.size() == 2);
}

TEST_CASE("p-adic roots") {
  PadicConfig cfg(5, 12);
  auto rts = padic_roots(P({-1, 0, 1}), cfg);
  CHECK(rts.size() == 2);
  for (auto& r : rts) CHECK(r.is_exact());
  // t^2 + 1 over Q_5: the roots are approximate square roots of -1
  auto im = padic_roots(P({1, 0, 1}), cfg);
  REQUIRE(im.size() == 2);
  for (auto& r : im) {
    CHECK_FALSE(r.is_exact());
    CHECK((r * r).unit(10) == PadicNumber::from_integer(5, -1).unit(10));
  }
  CHECK(padic_roots(P({-2, 0, 1}), cfg).empty());
  // root of negative valuation
  auto neg = padic_roots(P({-1, 25}), cfg);
  REQUIRE(neg.size() == 1);
  CHECK(neg[0].valuation() == -2);
}

TEST_CASE("split systems") {
  PadicConfig cfg(5, 12);
  auto sys = split_system({P({-1, 0, 1}), P({-1, 1}).pow(2), UPoly()}, cfg);
  CHECK(sys.roots.size() == 2);
  CHECK(sys.polys[2].zero);
  for (std::size_t j = 0; j < sys.roots.size(); ++j) {
    CHECK(sys.value_at_root(0, j).is_zero());
    if (sys.roots[j].rational() == 1) CHECK(sys.multiplicity(1, j) == 2);
  }
  CHECK_THROWS_AS(split_system({P({-2, 0, 1})}, cfg), UnsupportedSplitting);
}

TEST_CASE("rational reconstruction") {
  mpq_class out;
  mpz_class m = 1;
  for (int i = 0; i < 20; ++i) m *= 5;
  mpz_class inv3;
  mpz_invert(inv3.get_mpz_t(), mpz_class(3).get_mpz_t(), m.get_mpz_t());
  mpz_class x = (2 * inv3) % m;
  CHECK(rational_reconstruction(x, m, out));
  CHECK(out == mpq_class(2, 3));
}
