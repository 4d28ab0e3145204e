#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "json.hpp"

#include "cweig/cli.hpp"

using namespace cweig;
using doctest::Approx;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  args.insert(args.begin(), "cweig");
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows(1);
  std::string field;
  bool quoted = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"' && i + 1 < text.size() && text[i + 1] == '"') {
        field += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        field += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      rows.back().push_back(field);
      field.clear();
    } else if (c == '\n') {
      rows.back().push_back(field);
      field.clear();
      rows.emplace_back();
    } else {
      field += c;
    }
  }
  rows.pop_back();
  return rows;
}

}  // namespace

TEST_CASE("eigen json rows") {
  const Run r = cli({"eigen", "--L", "0", "--eta", "0", "--alpha", "1", "--count", "2", "--format", "json"});
  REQUIRE(r.code == kExitOk);
  const auto doc = nlohmann::json::parse(r.out);
  REQUIRE(doc.contains("params"));
  REQUIRE(doc.contains("meta"));
  REQUIRE(doc["rows"].size() == 2);
  CHECK(doc["rows"][0]["lambda"].get<double>() == Approx(2.3561945).epsilon(1e-7));
  CHECK(doc["rows"][1]["lambda"].get<double>() == Approx(5.4977871).epsilon(1e-7));
  CHECK(doc["meta"]["version"] == kVersion);
  CHECK(doc["meta"]["tol"].get<double>() == 1e-12);
  CHECK(doc["params"]["alpha"].get<double>() == 1.0);
}

TEST_CASE("zeros csv") {
  const Run r = cli({"zeros", "--L", "0", "--eta", "0", "--count", "3"});
  REQUIRE(r.code == kExitOk);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0] == std::vector<std::string>{"rank", "zero", "radius"});
  for (int n = 1; n <= 3; ++n)
    CHECK(std::abs(std::stod(rows[n][1]) - n * std::numbers::pi) < 1e-11);
  CHECK(r.out.find('\r') == std::string::npos);
}

TEST_CASE("csv and json carry the same numbers") {
  const std::vector<std::string> base{"eigen", "--L", "1", "--eta", "1", "--alpha", "2", "--count", "3"};
  const Run csv = cli(base);
  auto json_args = base;
  json_args.insert(json_args.end(), {"--format", "json"});
  const Run js = cli(json_args);
  REQUIRE(csv.code == 0);
  REQUIRE(js.code == 0);
  const auto rows = parse_csv(csv.out);
  const auto doc = nlohmann::json::parse(js.out);
  REQUIRE(doc["rows"].size() == rows.size() - 1);
  for (std::size_t i = 1; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[0].size(); ++j) {
      const auto& cell = doc["rows"][i - 1][rows[0][j]];
      // round trip: the printed text parses back to the identical double
      CHECK(std::stod(rows[i][j]) == cell.get<double>());
    }
  const double lam = doc["rows"][0]["lambda"].get<double>();
  CHECK(nlohmann::json::parse(nlohmann::json(lam).dump()).get<double>() == lam);
}

TEST_CASE("output is deterministic") {
  const std::vector<std::string> args{"eigen", "--L", "0.5", "--eta", "1", "--alpha", "0.5", "--count", "4"};
  CHECK(cli(args).out == cli(args).out);
  const std::vector<std::string> v{"verify", "--suite", "specfun", "--format", "json"};
  CHECK(cli(v).out == cli(v).out);
}

TEST_CASE("verify summary rows") {
  const Run r = cli({"verify", "--suite", "zeros"});
  CHECK(r.code == kExitOk);
  const auto rows = parse_csv(r.out);
  CHECK(rows[0] == std::vector<std::string>{"suite", "check", "status", "detail"});
  CHECK(rows.back()[1] == "summary");
  CHECK(rows.back()[2] == "pass");
}

TEST_CASE("eval") {
  Run r = cli({"eval", "--fn", "F", "--L", "0", "--eta", "0", "--r", "1.5707963267948966"});
  REQUIRE(r.code == 0);
  auto rows = parse_csv(r.out);
  CHECK(std::stod(rows[1][2]) == Approx(1.0).epsilon(1e-15));
  r = cli({"eval", "--fn", "psi", "--a", "2", "--c", "3", "--x", "4"});
  rows = parse_csv(r.out);
  CHECK(std::stod(rows[1][2]) == Approx(1.0 / 16).epsilon(1e-14));
  r = cli({"eval", "--fn", "Q", "--L", "0", "--eta", "0", "--alpha", "2", "--r", "0.5"});
  rows = parse_csv(r.out);
  CHECK(std::stod(rows[1][1]) == 1.0);
  CHECK(std::stod(rows[1][2]) == Approx(std::exp(-1.0) / 2).epsilon(1e-14));
  CHECK(cli({"eval", "--fn", "psi", "--a", "2"}).code == kExitUsage);
}

TEST_CASE("sweep") {
  const Run r = cli({"sweep", "--L-min", "0", "--L-max", "1", "--L-step", "0.5", "--eta", "1",
                     "--alpha", "2", "--rank", "2", "--format", "json"});
  REQUIRE(r.code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  REQUIRE(doc["rows"].size() == 3);
  CHECK(doc["rows"][2]["lambda"].get<double>() > doc["rows"][0]["lambda"].get<double>());
  CHECK(doc["meta"]["violations"] == 0);
}

TEST_CASE("exit codes") {
  CHECK(cli({}).code == kExitUsage);
  CHECK(cli({"frobnicate"}).code == kExitUsage);
  CHECK(cli({"eigen", "--count", "x"}).code == kExitUsage);
  CHECK(cli({"eigen", "--format", "xml"}).code == kExitUsage);
  const Run usage = cli({"zeros", "--bogus"});
  CHECK(usage.code == kExitUsage);
  CHECK(usage.err.find("Usage") != std::string::npos);

  const Run refused = cli({"eigen", "--L", "0", "--eta", "-1"});
  CHECK(refused.code == kExitDomain);
  CHECK(refused.err.find("L+eta must be > 0") != std::string::npos);
  CHECK(refused.err.find("--force") != std::string::npos);
  CHECK(refused.out.empty());

  CHECK(cli({"eval", "--fn", "psi", "--a", "-1", "--c", "1", "--x", "1"}).code == kExitDomain);
  CHECK(cli({"zeros", "--eta", "9"}).code == kExitDomain);
  CHECK(cli({"sweep", "--L-max", "1", "--L-step", "0.5", "--eta", "-1"}).code == kExitDomain);
  CHECK(cli({"--version"}).code == kExitOk);
  CHECK(cli({"--help"}).code == kExitOk);
}

TEST_CASE("atomic --output") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "cweig_cli_test";
  fs::create_directories(dir);
  const fs::path file = dir / "out.csv";
  fs::remove(file);
  const Run r = cli({"zeros", "--count", "2", "--output", file.string()});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(file);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == cli({"zeros", "--count", "2"}).out);
  CHECK(!fs::exists(dir / "out.csv.tmp"));
  fs::remove_all(dir);
}

TEST_CASE("CWEIG_TOL overrides the default tolerance") {
  CHECK(default_tolerance() == 1e-12);
  setenv("CWEIG_TOL", "1e-9", 1);
  CHECK(default_tolerance() == 1e-9);
  const auto doc = nlohmann::json::parse(cli({"eigen", "--format", "json"}).out);
  CHECK(doc["meta"]["tol"].get<double>() == 1e-9);
  setenv("CWEIG_TOL", "garbage", 1);
  CHECK(default_tolerance() == 1e-12);
  unsetenv("CWEIG_TOL");
  const auto explicit_tol = nlohmann::json::parse(cli({"eigen", "--tol", "1e-6", "--format", "json"}).out);
  CHECK(explicit_tol["meta"]["tol"].get<double>() == 1e-6);
}

TEST_CASE("csv quoting") {
  OutputRecord rec;
  rec.columns = {"a", "b"};
  rec.rows = {{std::string("x,y"), std::string("say \"hi\"")}, {1.5, std::monostate{}}};
  CHECK(to_csv(rec) == "a,b\n\"x,y\",\"say \"\"hi\"\"\"\n1.5,\n");
}
