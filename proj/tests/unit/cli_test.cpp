#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "pathauction/fixtures.hpp"
#include "pathauction/io.hpp"
#include "support.hpp"

using namespace pathauction;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "pathauction");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

bool has(const std::string& text, const std::string& needle) { return text.find(needle) != std::string::npos; }

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / "pathauction_cli_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("validate") {
  CHECK(invoke({"validate", "fig2"}).code == cli::kOk);
  auto missing = invoke({"validate", "no-such-graph"});
  CHECK(missing.code == cli::kFailure);
  CHECK_FALSE(missing.err.empty());
}

TEST_CASE("rank and ties") {
  auto r = invoke({"rank", "example1", "-k", "3"});
  CHECK(r.code == cli::kOk);
  CHECK(has(r.out, "A,G,K,D,E,F"));
  auto tied = scratch("tied.json");
  std::ofstream(tied) << R"({"nodes": ["X","Y"], "edges": [
    {"id":"e","from":"X","to":"Y","owner":"e","true_cost":"2"},
    {"id":"f","from":"X","to":"Y","owner":"f","true_cost":"2"}], "source":"X","sink":"Y"})";
  CHECK(invoke({"rank", tied.string()}).code == cli::kTie);
  CHECK(invoke({"run", tied.string(), "--mechanism", "vcg"}).code == cli::kTie);
}

TEST_CASE("run emits parseable json") {
  auto r = invoke({"run", "example1", "--mechanism", "x", "--format", "json"});
  REQUIRE(r.code == cli::kOk);
  CHECK(has(r.out, "\"total\": \"16\""));
  auto v = invoke({"run", "example1", "--mechanism", "vcg"});
  CHECK(has(v.out, "35"));
}

TEST_CASE("run with a bid file") {
  auto bids = scratch("bids.json");
  std::ofstream(bids) << R"({"A": "4"})";
  auto r = invoke({"run", "example1", "--mechanism", "vcg", "--bids", bids.string(), "--format", "json"});
  REQUIRE(r.code == cli::kOk);
  CHECK(has(r.out, "\"total\": \"27\""));
}

TEST_CASE("configuration errors are rejected") {
  CHECK(invoke({"run", "example1", "--mechanism", "vcg", "--rule", "waterfall"}).code == cli::kFailure);
  CHECK(invoke({"run", "example1", "--mechanism", "nonsense"}).code == cli::kFailure);
  CHECK(invoke({"run", "example1", "--mechanism", "x", "--rule", "waterfall"}).code == cli::kFailure);
  CHECK(invoke({}).code != cli::kOk);
}

TEST_CASE("analyze") {
  auto a = invoke({"analyze", "fig2", "fig3", "--mechanism", "vcg"});
  CHECK(a.code == cli::kOk);
  CHECK(has(a.out, "partially-consistent"));
  auto s = invoke({"analyze", "--types", "3,7", "--types", "2,5", "--mechanism", "vickrey-single", "--orientation",
                   "forward", "--format", "json"});
  CHECK(s.code == cli::kOk);
  CHECK(has(s.out, "strongly-consistent"));
  CHECK(invoke({"analyze", "example1", "--mechanism", "vcg"}).code == cli::kTooLarge);
}

TEST_CASE("check exit codes follow the verdict") {
  CHECK(invoke({"check", "fig3", "--property", "critical", "--mechanism", "x"}).code == cli::kOk);
  auto v = invoke({"check", "example1", "--property", "critical", "--mechanism", "vcg"});
  CHECK(v.code == cli::kFailure);
  CHECK(has(v.out, "fails"));
  CHECK(invoke({"check", "xsmall", "--property", "partly-truthful", "--mechanism", "fp-path"}).code == cli::kFailure);
  auto g = invoke({"check", "example1", "--property", "group-truthful", "--trials", "20", "--format", "json"});
  CHECK(g.code == cli::kOk);
  CHECK(has(g.out, "holds-budget-exhausted"));
}

TEST_CASE("fixtures subcommand writes canonical files") {
  auto path = scratch("fig3.json");
  CHECK(invoke({"fixtures", "fig3", "-o", path.string()}).code == cli::kOk);
  CHECK(loadNetwork(path) == fixtures::fig3());
  auto list = invoke({"fixtures"});
  CHECK(has(list.out, "example1"));
  CHECK(has(list.out, "xsmall"));
}
