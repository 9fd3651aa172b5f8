#pragma once

#include <nlohmann/json.hpp>

#include "padicsa/cells.hpp"
#include "padicsa/lang.hpp"
#include "padicsa/oracle.hpp"
#include "padicsa/prepare.hpp"
#include "padicsa/skolem.hpp"
#include "padicsa/valgroup.hpp"

namespace padicsa {

using nlohmann::json;

/// Exact numbers as {"rational": "a/b"}; approximate ones as
/// {"v": int, "unit": "decimal unit mod p^prec", "prec": int}.
json to_json(const PadicNumber& x);
PadicNumber padic_from_json(const json& j, long p);

json to_json(const SubgroupSpec& g);
SubgroupSpec subgroup_from_json(const json& j);

json to_json(const PresentedCell& A);
PresentedCell cell_from_json(const json& j, long p);

json to_json(const CellList& cl, const std::vector<std::string>& vars);
json to_json(const PreparedPiece& piece);
json to_json(const SectionDescriptor& s);

json to_json(const PresburgerCell& c);
PresburgerCell presburger_from_json(const json& j);
json to_json(const RingCondition& rc);

json to_json(const SamplePoint& s);
json to_json(const PartitionReport& r, std::size_t max_points = 10);
json to_json(const ResidualReport& r, std::size_t max_points = 10);
json to_json(const std::vector<Mismatch>& mm, std::size_t max_points = 10);

json to_json(const NormalForm& nf, const std::vector<std::string>& vars);

}  // namespace padicsa
