#include "doctest.h"
#include "padicsa/oracle.hpp"
#include "padicsa/valgroup.hpp"

using namespace padicsa;

namespace {
PadicNumber Q(long p, long a, long b = 1) { return PadicNumber::from_rational(p, mpq_class(a, b)); }
}  // namespace

TEST_CASE("presburger membership") {
  PresburgerCell free1;
  free1.rows.resize(1);
  for (long x = -5; x <= 5; ++x) CHECK(pres_member(free1, {0, 0}, {x}));

  PresburgerCell c1;
  c1.rows.resize(1);
  c1.rows[0].lower = PresburgerBound{0, {}};
  c1.rows[0].upper = PresburgerBound{1, {}};
  c1.rows[0].c = 1;
  c1.rows[0].n = 2;
  CHECK(pres_member(c1, {2, 5}, {3}));
  CHECK_FALSE(pres_member(c1, {2, 5}, {4}));

  PresburgerCell c2;
  c2.d = 2;
  c2.rows.resize(2);
  c2.rows[0].n = 2;
  c2.rows[1].lower = PresburgerBound{1, {1}};
  std::vector<long> zeta{0, 0, 0, 0};
  CHECK(pres_member(c2, zeta, {4, 2}));
  CHECK_FALSE(pres_member(c2, zeta, {4, 1}));
}

TEST_CASE("translation examples") {
  PresburgerCell c;
  c.rows.resize(1);
  c.rows[0].n = 2;
  auto rc = translate(c);
  REQUIRE(rc.size() == 1);
  CHECK(rc[0].to_string() == "CONG(t1, 0, 2)");
  PresburgerCell lo;
  lo.rows.resize(1);
  lo.rows[0].lower = PresburgerBound{0, {}};
  auto r2 = translate(lo);
  REQUIRE(r2.size() == 1);
  CHECK(r2[0].to_string() == "|t1| <= |z1|");
}

TEST_CASE("translation agrees with presburger evaluation") {
  const long p = 3;
  PresburgerCell c;
  c.d = 2;
  c.rows.resize(2);
  c.rows[0].lower = PresburgerBound{0, {}};
  c.rows[0].upper = PresburgerBound{2, {}};
  c.rows[0].c = 1;
  c.rows[0].n = 2;
  c.rows[1].lower = PresburgerBound{1, {1}};
  c.rows[1].upper = PresburgerBound{3, {-3}};
  c.rows[1].c = 2;
  c.rows[1].n = 3;
  auto rcs = translate(c);
  Rng rng(11);
  int agree = 0, members = 0;
  for (int i = 0; i < 1000; ++i) {
    std::vector<long> vt{rng.range(-6, 6), rng.range(-6, 6)}, vz{rng.range(-3, 3), rng.range(-3, 3),
                                                                 rng.range(-3, 3), rng.range(-3, 3)};
    std::vector<PadicNumber> t, z;
    for (long v : vt) t.push_back(PadicNumber::uniformizer_power(p, v) * Q(p, rng.range(1, 2) == 1 ? 1 : 2));
    for (long v : vz) z.push_back(PadicNumber::uniformizer_power(p, v) * Q(p, 4));
    bool a = pres_member(c, vz, vt);
    bool b = eval_ring(rcs, t, z, p);
    agree += a == b;
    members += a;
  }
  CHECK(agree == 1000);
  CHECK(members > 0);
}

TEST_CASE("valuation images") {
  PresentedCell A;
  A.center = PadicNumber::zero(5);
  A.lambda = Q(5, 1);
  A.group = SubgroupSpec::pn(2);
  auto im = image_valuation(A);
  CHECK_FALSE(im.cell.rows[0].lower);
  CHECK_FALSE(im.cell.rows[0].upper);
  CHECK(im.cell.rows[0].n == 2);
  CHECK(im.cell.rows[0].c == 0);
  A.nu = Bound::term(Q(5, 5));
  im = image_valuation(A);
  REQUIRE(im.cell.rows[0].upper);
  CHECK(im.zeta[1] == 1);
  for (long w = -4; w <= 4; ++w) CHECK(pres_member(im.cell, im.zeta, {w}) == (w <= 1 && w % 2 == 0));
  A.lambda = Q(5, 5);
  CHECK(image_valuation(A).cell.rows[0].c == 1);
  CHECK_THROWS_AS(image_valuation(PresentedCell::point(Q(5, 1))), TypeZeroCell);
}

TEST_CASE("zmin and successor") {
  PresburgerCell c;
  c.rows.resize(1);
  c.rows[0].lower = PresburgerBound{0, {}};
  c.rows[0].c = 1;
  c.rows[0].n = 2;
  CHECK(zmin(c, {3, 0}) == 3);
  CHECK(zmin(c, {4, 0}) == 5);
  PresburgerCell e;
  e.rows.resize(1);
  e.rows[0].lower = PresburgerBound{0, {}};
  e.rows[0].upper = PresburgerBound{1, {}};
  e.rows[0].n = 5;
  CHECK_THROWS_AS(zmin(e, {3, 4}), EmptySet);
  PresburgerCell u;
  u.rows.resize(1);
  CHECK_THROWS_AS(zmin(u, {0, 0}), Unbounded);
  CHECK(succ_norm(0) == -1);
  CHECK(succ_norm(5) == 4);
  CHECK(PadicNumber::uniformizer_power(5, 4).valuation() < PadicNumber::uniformizer_power(5, 5).valuation());
}

TEST_CASE("extreme values") {
  PadicConfig cfg(5, 12);
  LangContext c{{"t"}, 5};
  PresentedCell zp;  // |t| <= 1 as the disjoint union {0} and 0 < |t| <= 1
  zp.center = PadicNumber::zero(5);
  zp.lambda = Q(5, 1);
  zp.mu = Bound::term(Q(5, 1));
  std::vector<PresentedCell> Z5{zp, PresentedCell::point(PadicNumber::zero(5))};
  TruncatedSample s(cfg, 3, 4);
  auto r = evp_min(parse_factored("t^2 + 5", c), Z5, s);
  CHECK(r.valuation == 1);
  CHECK((r.witness.zero || r.witness.v >= 1));
  CHECK(evp_min(parse_factored("1", c), Z5, s).valuation == 0);
  CHECK_THROWS_AS(evp_min(parse_factored("t", c), Z5, s), VanishingFunction);
  PresentedCell unb = zp;
  unb.mu = Bound::infinity();
  CHECK_THROWS_AS(evp_min(parse_factored("1", c), unb, s), UnboundedDomain);
}
