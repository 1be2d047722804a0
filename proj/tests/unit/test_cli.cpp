#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <sstream>

#include <json.hpp>

#include "canon/cli.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out;
  std::ostringstream err;
  const int code = canon::cli::run(args, in, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("flex text output") {
  const auto r = run({"flex", "{(0,0),(1,-8)B,(3,0)}"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("lambda=1.618\n", 0) == 0);
  CHECK(r.out.find("exact=") == std::string::npos);
}

TEST_CASE("flex json output is stable") {
  const auto a = run({"flex", "--format", "json", "{(0,0)B,(1,4),(2,7)}"});
  const auto b = run({"flex", "--format", "json", "{(0,0)B,(1,4),(2,7)}"});
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  const auto j = nlohmann::json::parse(a.out);
  CHECK(j["lambda"].get<double>() == 1.0);
  CHECK(j["exact_hint"].get<long long>() == 1);
}

TEST_CASE("count") {
  CHECK(run({"count", "{(0,0),(2,0)B}", "--n", "3"}).out == "196\n");
  CHECK(run({"count", "--oracle", "{(0,0),(2,0)B}", "--n", "3"}).out == "196\n");
  CHECK(run({"count", "--series", "--n", "5", "{(0,0),(1,-8)B,(3,0)}"}).out == "1\n7\n28\n42\n70\n112\n");
}

TEST_CASE("validate") {
  CHECK(run({"validate", "{(0,0),(1,0)}", "0246"}).code == 0);
  const auto bad = run({"validate", "{(0,0),(1,0)}", "01"});
  CHECK(bad.code == 1);
  CHECK(bad.out.find("second/seventh") != std::string::npos);
}

TEST_CASE("normalize and equiv") {
  const auto n = run({"normalize", "{(0,0)B,(2,3),(6,7)}"});
  CHECK(n.code == 0);
  CHECK(n.out.rfind("{(0,0)B, (1,0), (3,5)}", 0) == 0);
  CHECK(run({"equiv", "{(0,0)B,(1,3),(3,7)}", "{(0,0)B,(2,3),(6,7)}"}).out.rfind("equivalent", 0) == 0);
  CHECK(run({"equiv", "{(0,0),(1,0)}", "{(0,0),(1,0)B}"}).out.rfind("not equivalent", 0) == 0);
}

TEST_CASE("table piped into diff") {
  const auto table = run({"table", "--max-t3", "8", "--format", "csv", "--workers", "2"});
  REQUIRE(table.code == 0);
  const auto diff = run({"diff"}, table.out);
  CHECK(diff.code == 0);
  CHECK(diff.out.empty());

  const auto partial = run({"table", "--max-t3", "3", "--format", "csv"});
  const auto gaps = run({"diff"}, partial.out);
  CHECK(gaps.code == 1);
}

TEST_CASE("table csv is byte-deterministic") {
  CHECK(run({"table", "--max-t3", "4", "--workers", "1"}).out == run({"table", "--max-t3", "4", "--workers", "3"}).out);
}

TEST_CASE("exit codes") {
  CHECK(run({"flex", "{(0,0),(0,1)}"}).code == 1);
  CHECK(run({"flex", "{(0,0)"}).code == 1);
  CHECK(run({"flex", "--bogus", "{(0,0)}"}).code == 1);
  CHECK(run({}).code == 1);
  const auto budget = run({"flex", "--raw", "--node-budget", "10", "{(0,0),(5,0)}"});
  CHECK(budget.code == 2);
  CHECK_FALSE(budget.err.empty());
  CHECK(budget.out.empty());
  CHECK(run({"flex", "--max-iter", "2", "{(0,0),(1,3),(4,1)}"}).code == 2);
}

TEST_CASE("generate and continuations") {
  const auto a = run({"generate", "{(0,0),(1,-8)B,(3,0)}", "--length", "12", "--seed", "5"});
  const auto b = run({"generate", "{(0,0),(1,-8)B,(3,0)}", "--length", "12", "--seed", "5"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.size() == 13);
  CHECK(run({"continuations", "{(0,0),(1,-8)B,(3,0)}", "034"}).out == "0\n");
  CHECK(run({"continuations", "{(0,0),(1,0)}", "01"}).code == 1);
}

TEST_CASE("charpoly") {
  const auto r = run({"charpoly", "{(0,0),(1,0)}"});
  CHECK(r.code == 0);
  CHECK(r.out.find("charpoly=x - 5") != std::string::npos);
}

TEST_CASE("flex cache") {
  const auto path = std::filesystem::temp_directory_path() / "canon_cli_cache.jsonl";
  std::filesystem::remove(path);
  const auto first = run({"flex", "--cache", path.string(), "{(0,0)B,(1,3),(3,7)}"});
  const auto second = run({"flex", "--cache", path.string(), "{(0,0)B,(2,3),(6,7)}"});
  CHECK(first.code == 0);
  CHECK(first.out.rfind("lambda=2.992", 0) == 0);
  CHECK(second.out.rfind("lambda=2.992", 0) == 0);
  std::filesystem::remove(path);
}
