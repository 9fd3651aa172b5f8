#include <sstream>

#include "doctest.h"
#include "padicsa/cli.hpp"
#include "padicsa/serialize.hpp"

using namespace padicsa;

namespace {

struct Run {
  int status;
  std::string out, err;
};

Run run(std::vector<std::string> args, const std::string& stdin_text = "") {
  args.insert(args.begin(), "padicsa");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::istringstream in(stdin_text);
  std::ostringstream out, err;
  int st = cli_main(static_cast<int>(argv.size()), argv.data(), in, out, err);
  return {st, out.str(), err.str()};
}

}  // namespace

TEST_CASE("decompose passes its own verification") {
  auto r = run({"decompose", "t^2-1 in P_2", "--window", "3", "--digits", "4"});
  REQUIRE(r.status == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["verification"]["partition"]["pass"] == true);
  CHECK(j["verification"]["normalize"]["pass"] == true);
  CHECK(j["cells"]["N"] == 2);
}

TEST_CASE("prepare of a split polynomial") {
  auto r = run({"prepare", "t^2-1", "--window", "3", "--digits", "4", "--samples", "20"});
  REQUIRE(r.status == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["verification"]["residuals"]["pass"] == true);
  CHECK(!j["pieces"].empty());
}

TEST_CASE("non-split input exits 2 with the error kind") {
  auto r = run({"decompose", "t^2-2 in P_2", "--window", "2", "--digits", "3"});
  CHECK(r.status == 2);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["error"]["kind"] == "UnsupportedSplitting");
  CHECK(r.err.find("UnsupportedSplitting") != std::string::npos);
}

TEST_CASE("syntax errors exit 2") {
  auto r = run({"verify", "t in", "--window", "1", "--digits", "1"});
  CHECK(r.status == 2);
  CHECK(nlohmann::json::parse(r.out)["error"]["kind"] == "SyntaxError");
}

TEST_CASE("output is byte identical across runs") {
  std::vector<std::string> args{"skolem", "t^3-t in P_2", "--prime", "3", "--window", "3", "--digits", "3"};
  auto a = run(args), b = run(args);
  CHECK(a.status == 0);
  CHECK(a.out == b.out);
  auto c = run({"prepare", "root(2, t^2-1)", "--window", "2", "--digits", "3", "--seed", "7"});
  auto d = run({"prepare", "root(2, t^2-1)", "--window", "2", "--digits", "3", "--seed", "7"});
  CHECK(c.out == d.out);
}

TEST_CASE("input from stdin") {
  auto r = run({"verify", "-", "--against", "t^3 in P_2", "--window", "2", "--digits", "3"}, "t in P_2\n");
  CHECK(r.status == 0);
  auto s = run({"verify", "-", "--against", "t in P_3", "--window", "2", "--digits", "3"}, "t in P_2\n");
  CHECK(s.status == 1);
  CHECK(nlohmann::json::parse(s.out)["verification"]["equivalence"]["count"] > 0);
}

TEST_CASE("cells round trip through the JSON artifact") {
  auto r = run({"decompose", "t^2-t in P_2", "--window", "2", "--digits", "3"});
  REQUIRE(r.status == 0);
  auto j = nlohmann::json::parse(r.out);
  for (const auto& jc : j["cells"]["cells"]) {
    PresentedCell A = cell_from_json(jc, 5);
    auto back = to_json(A);
    for (const auto& key : {"center", "nu", "mu", "lambda", "group", "type"}) CHECK(back[key] == jc[key]);
  }
}

TEST_CASE("translate a Presburger cell given as JSON") {
  std::string in = R"({"d":1,"rows":[{"lower":{"slot":0,"a":[]},"upper":{"slot":1,"a":[]},"cong":[1,3]}]})";
  auto r = run({"translate", in});
  CHECK(r.status == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["ring_conditions"].size() == 3);
  auto bad = run({"translate", R"({"d":1,"rows":[]})"});
  CHECK(bad.status == 2);
}

TEST_CASE("evpmin on the unit ball") {
  auto r = run({"evpmin", "t^2+5", "--window", "2", "--digits", "4"});
  REQUIRE(r.status == 0);
  CHECK(nlohmann::json::parse(r.out)["valuation"] == 1);
  auto u = run({"evpmin", "t", "--domain", "t in P_1", "--window", "2", "--digits", "3"});
  CHECK(u.status == 2);
  CHECK(nlohmann::json::parse(u.out)["error"]["kind"] == "UnboundedDomain");
}

TEST_CASE("unwritable output exits 3") {
  auto r = run({"verify", "t in P_2", "--window", "1", "--digits", "1", "--out", "/nonexistent/dir/x.json"});
  CHECK(r.status == 3);
}

TEST_CASE("sample export") {
  auto r = run({"sample", "--prime", "3", "--window", "1", "--digits", "1"});
  CHECK(r.status == 0);
  std::istringstream is(r.out);
  std::string line;
  std::size_t n = 0;
  while (std::getline(is, line)) {
    CHECK(nlohmann::json::parse(line).is_object());
    ++n;
  }
  CHECK(n == 1 + 3 * 2);
}
