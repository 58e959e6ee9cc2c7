#include <doctest.h>

#include <json.hpp>
#include <sstream>

#include "mvf/cli.hpp"

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = mvf::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

bool has_float(const nlohmann::json& j) {
  if (j.is_number_float()) return true;
  if (j.is_structured())
    for (const auto& x : j) {
      if (has_float(x)) return true;
    }
  return false;
}

}  // namespace

TEST_CASE("roots prints rank and root count") {
  Run r = run({"roots", "--type", "A", "--rank", "1"});
  CHECK(r.code == 0);
  CHECK(r.out.find("rank: 1") != std::string::npos);
  CHECK(r.out.find("roots: 2") != std::string::npos);
  auto j = nlohmann::json::parse(run({"roots", "--type", "E", "--rank", "6", "--json"}).out);
  CHECK(j["num_roots"] == 72);
}

TEST_CASE("eta prints the E6 bound") {
  Run r = run({"eta", "--type", "E", "--rank", "6"});
  CHECK(r.code == 0);
  CHECK(r.out == "1/18\n");
}

TEST_CASE("mult and tensor-dim") {
  CHECK(run({"mult", "--type", "A", "--rank", "2", "--highest", "theta", "--weight", "zero"}).out == "2\n");
  CHECK(run({"mult", "--type", "A", "--rank", "2", "--highest", "theta", "--weight", "zero", "--q"}).out == "q + q^2\n");
  CHECK(run({"tensor-dim", "--type", "E", "--rank", "6", "--lambda", "theta", "--mu", "theta", "--weight", "zero"}).out ==
        "108\n");
}

TEST_CASE("transition JSON carries exact values and checks") {
  Run r = run({"transition", "--type", "A", "--rank", "2", "--lambda", "omega_1", "--mu", "omega_2", "--weight", "zero",
               "--json"});
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["C_block"] == nlohmann::json::parse("[[2,2,2],[1,1,1]]"));
  CHECK(j["M_block"] == nlohmann::json::parse("[[2],[1]]"));
  for (const auto& [k, v] : j["checks"].items()) CHECK_MESSAGE(v == true, k);
  CHECK(!has_float(j));
  auto keys = std::vector<std::string>{};
  const auto ordered = nlohmann::ordered_json::parse(r.out);
  for (const auto& item : ordered.items()) keys.push_back(item.key());
  CHECK(keys.front() == "P");
}

TEST_CASE("eta series JSON has no floats and is strictly decreasing") {
  Run r = run({"eta", "--series", "all", "--max-rank", "8", "--json"});
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(!has_float(j));
  CHECK(j["strictly_decreasing"] == true);
  CHECK(j["records"].size() == 17);
  Run csv = run({"eta", "--series", "E", "--csv"});
  CHECK(csv.out.find("E,6,72,6,108,1/18,1/18") != std::string::npos);
}

TEST_CASE("verify suites") {
  Run r = run({"verify", "--suite", "sl3"});
  CHECK(r.code == 0);
  CHECK(r.out.find("all passed") != std::string::npos);
  CHECK(run({"verify", "--suite", "eta-tables"}).code == 0);
  CHECK(run({"verify", "--suite", "adjoint-ranks"}).code == 0);
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run({"verify", "--suite", "nope"}).code == 2);
  CHECK(run({"roots", "--bogus"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"graph", "--type", "A", "--rank", "2", "--coweight", "omega_5"}).code == 2);
  CHECK(run({"graph", "--type", "B", "--rank", "2"}).code == 2);
  CHECK(run({"mult", "--type", "A", "--rank", "2", "--highest", "-1,0"}).code == 2);
  CHECK(run({"graph", "--format", "svg"}).code == 2);
}

TEST_CASE("oversized stalk computations are refused with the estimate") {
  Run r = run({"stalks", "--type", "E", "--rank", "6", "--coweight", "theta"});
  CHECK(r.code == 1);
  CHECK(r.err.find("314496") != std::string::npos);
  CHECK(r.out.empty());
  Run small = run({"--max-system", "10", "stalks", "--type", "A", "--rank", "3"});
  CHECK(small.code == 1);
}

TEST_CASE("repeated runs are byte identical") {
  const std::vector<std::vector<std::string>> cmds = {
      {"graph", "--type", "A", "--rank", "3", "--format", "json"},
      {"stalks", "--type", "D", "--rank", "4", "--json"},
      {"mmatrix", "--type", "A", "--rank", "3", "--coweight", "0,2,0", "--json", "--threads", "4"},
  };
  for (const auto& c : cmds) {
    Run a = run(c), b = run(c);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("stalks at one vertex") {
  auto j = nlohmann::json::parse(run({"stalks", "--type", "A", "--rank", "2", "--vertex", "zero", "--json"}).out);
  REQUIRE(j["stalks"].size() == 1);
  CHECK(j["stalks"][0]["rank"] == 2);
  CHECK(j["stalks"][0]["degrees"] == nlohmann::json::parse("[0,1]"));
}
