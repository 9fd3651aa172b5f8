#include "padicsa/serialize.hpp"

namespace padicsa {

json to_json(const PadicNumber& x) {
  if (x.is_exact()) return json{{"rational", rational_to_string(x.rational())}};
  return json{{"v", x.valuation()}, {"unit", x.unit(x.precision()).get_str()}, {"prec", x.precision()}};
}

PadicNumber padic_from_json(const json& j, long p) {
  if (j.contains("rational")) return PadicNumber::from_rational(p, mpq_class(j.at("rational").get<std::string>()));
  return PadicNumber::approximate(p, j.at("v").get<long>(), mpz_class(j.at("unit").get<std::string>()),
                                  j.at("prec").get<int>());
}

json to_json(const SubgroupSpec& g) {
  switch (g.kind) {
    case SubgroupKind::FULL: return json{{"kind", "FULL"}, {"N", 1}, {"M", 0}};
    case SubgroupKind::PN: return json{{"kind", "PN"}, {"N", g.N}, {"M", 0}};
    case SubgroupKind::QNM: return json{{"kind", "QNM"}, {"N", g.N}, {"M", g.M}};
    case SubgroupKind::UNIT_BALL_Ue: return json{{"kind", "UEN"}, {"e", g.e}, {"n", g.n}};
  }
  return {};
}

SubgroupSpec subgroup_from_json(const json& j) {
  std::string k = j.at("kind").get<std::string>();
  if (k == "FULL") return SubgroupSpec::full();
  if (k == "PN") return SubgroupSpec::pn(j.at("N").get<long>());
  if (k == "QNM") return SubgroupSpec::qnm(j.at("N").get<long>(), j.at("M").get<long>());
  if (k == "UEN") return SubgroupSpec::unit_ball(j.at("e").get<long>(), j.at("n").get<long>());
  throw DomainError("unknown group kind '" + k + "'");
}

namespace {
json bound_json(const Bound& b) {
  switch (b.kind) {
    case Bound::Kind::ZERO: return "0";
    case Bound::Kind::INF: return "inf";
    case Bound::Kind::TERM: return to_json(b.value);
  }
  return {};
}
Bound bound_from(const json& j, long p) {
  if (j.is_string()) {
    if (j.get<std::string>() == "0") return Bound::zero();
    if (j.get<std::string>() == "inf") return Bound::infinity();
    throw DomainError("bad bound");
  }
  return Bound::term(padic_from_json(j, p));
}
}  // namespace

json to_json(const PresentedCell& A) {
  return json{{"center", to_json(A.center)}, {"nu", bound_json(A.nu)},         {"mu", bound_json(A.mu)},
              {"lambda", to_json(A.lambda)}, {"group", to_json(A.group)}, {"type", A.type()}};
}

PresentedCell cell_from_json(const json& j, long p) {
  PresentedCell A;
  A.center = padic_from_json(j.at("center"), p);
  A.nu = bound_from(j.at("nu"), p);
  A.mu = bound_from(j.at("mu"), p);
  A.lambda = padic_from_json(j.at("lambda"), p);
  A.group = subgroup_from_json(j.at("group"));
  return A;
}

json to_json(const CellList& cl, const std::vector<std::string>& vars) {
  (void)vars;
  json cells = json::array();
  for (std::size_t i = 0; i < cl.cells.size(); ++i) {
    json c = to_json(cl.cells[i]);
    c["conjunct"] = cl.conjunct[i];
    cells.push_back(std::move(c));
  }
  return json{{"N", cl.N}, {"cells", std::move(cells)}};
}

json to_json(const PreparedPiece& piece) {
  json j = to_json(piece.cell);
  j["h"] = to_json(piece.h);
  j["alpha"] = piece.alpha;
  j["e"] = piece.e;
  j["n"] = piece.n;
  return j;
}

json to_json(const SectionDescriptor& s) {
  return json{{"formula", section_kind_name(s.kind)}, {"a", to_json(s.a)}, {"tau", to_json(s.tau)}};
}

namespace {
json pbound(const std::optional<PresburgerBound>& b) {
  if (!b) return nullptr;
  return json{{"slot", b->slot}, {"a", b->a}};
}
std::optional<PresburgerBound> pbound_from(const json& j) {
  if (j.is_null()) return std::nullopt;
  return PresburgerBound{j.at("slot").get<int>(), j.value("a", std::vector<long>{})};
}
}  // namespace

json to_json(const PresburgerCell& c) {
  json rows = json::array();
  for (const auto& r : c.rows)
    rows.push_back(json{{"lower", pbound(r.lower)}, {"upper", pbound(r.upper)}, {"cong", {r.c, r.n}}});
  return json{{"d", c.d}, {"rows", std::move(rows)}};
}

PresburgerCell presburger_from_json(const json& j) {
  PresburgerCell c;
  c.d = j.at("d").get<int>();
  for (const auto& r : j.at("rows")) {
    PresburgerRow row;
    row.lower = pbound_from(r.value("lower", json(nullptr)));
    row.upper = pbound_from(r.value("upper", json(nullptr)));
    row.c = r.at("cong").at(0).get<long>();
    row.n = r.at("cong").at(1).get<long>();
    if (row.n < 1 || row.c < 0 || row.c >= row.n) throw DomainError("congruence must satisfy 0 <= c < n");
    c.rows.push_back(row);
  }
  if (c.rows.size() != static_cast<std::size_t>(c.d)) throw ArityError("row count differs from d");
  return c;
}

json to_json(const RingCondition& rc) { return rc.to_string(); }

json to_json(const SamplePoint& s) {
  if (s.zero) return json{{"zero", true}};
  return json{{"v", s.v}, {"u", s.u}};
}

json to_json(const PartitionReport& r, std::size_t max_points) {
  auto pts = [&](const std::vector<SamplePoint>& v) {
    json a = json::array();
    for (std::size_t i = 0; i < v.size() && i < max_points; ++i) a.push_back(to_json(v[i]));
    return json{{"count", v.size()}, {"first", a}};
  };
  json errs = json::array();
  for (std::size_t i = 0; i < r.errors.size() && i < max_points; ++i)
    errs.push_back(json{{"point", to_json(r.errors[i].first)}, {"error", r.errors[i].second}});
  return json{{"checked", r.checked},
              {"overlapping", pts(r.overlapping)},
              {"uncovered", pts(r.uncovered)},
              {"extraneous", pts(r.extraneous)},
              {"errors", json{{"count", r.errors.size()}, {"first", errs}}},
              {"pass", r.ok()}};
}

json to_json(const ResidualReport& r, std::size_t max_points) {
  auto list = [&](const std::vector<PointFailure>& v) {
    json a = json::array();
    for (std::size_t i = 0; i < v.size() && i < max_points; ++i)
      a.push_back(json{{"point", to_json(v[i].point)}, {"reason", v[i].reason}});
    return json{{"count", v.size()}, {"first", a}};
  };
  return json{{"checked", r.checked}, {"failures", list(r.failures)}, {"errors", list(r.errors)}, {"pass", r.ok()}};
}

json to_json(const std::vector<Mismatch>& mm, std::size_t max_points) {
  json a = json::array();
  for (std::size_t i = 0; i < mm.size() && i < max_points; ++i)
    a.push_back(json{{"point", to_json(mm[i].point)}, {"verdictA", verdict_name(mm[i].a)}, {"verdictB", verdict_name(mm[i].b)}});
  return json{{"count", mm.size()}, {"first", a}, {"pass", mm.empty()}};
}

json to_json(const NormalForm& nf, const std::vector<std::string>& vars) {
  json conj = json::array();
  for (const auto& cj : nf.conjuncts) {
    json c = json::array();
    for (const auto& b : cj) c.push_back(print_condition(b, vars));
    conj.push_back(std::move(c));
  }
  return json{{"N", nf.N}, {"conjuncts", std::move(conj)}};
}

}  // namespace padicsa
