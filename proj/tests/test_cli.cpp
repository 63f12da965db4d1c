#include <doctest.h>

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "casimir/cli.hpp"
#include "casimir/error.hpp"

using namespace casimir;
using namespace casimir::cli;
using nlohmann::json;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "casimir");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("casimir_cli_test_" + name);
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct FixedClock {
  FixedClock() { setenv("SOURCE_DATE_EPOCH", "1700000000", 1); }
  ~FixedClock() { unsetenv("SOURCE_DATE_EPOCH"); }
};

}  // namespace

TEST_CASE("length parsing") {
  CHECK(parse_length("1e-6") == 1e-6);
  CHECK(parse_length("0.1um") == doctest::Approx(1e-7).epsilon(1e-15));
  CHECK(parse_length("100nm") == doctest::Approx(1e-7).epsilon(1e-15));
  CHECK(parse_length("2mm") == doctest::Approx(2e-3).epsilon(1e-15));
  CHECK(parse_length("1m") == 1.0);
  CHECK_THROWS_AS(parse_length("1 parsec"), ContractViolation);
  CHECK_THROWS_AS(parse_length(""), ContractViolation);
  CHECK_THROWS_AS(parse_length("um"), ContractViolation);
}

TEST_CASE("a-range parsing") {
  const auto r = parse_a_range("0.1um:6um:60:log");
  CHECK(r.start == doctest::Approx(1e-7));
  CHECK(r.stop == doctest::Approx(6e-6));
  CHECK(r.count == 60);
  CHECK(r.logarithmic);
  CHECK_FALSE(parse_a_range("1um:2um:3").logarithmic);
  CHECK_THROWS_AS(parse_a_range("1um:2um:0"), ContractViolation);
  CHECK_THROWS_AS(parse_a_range("1um:2um"), ContractViolation);
  CHECK_THROWS_AS(parse_a_range("1um:2um:3:cubic"), ContractViolation);
}

TEST_CASE("config JSON round-trip and strictness") {
  RunConfig c;
  c.geometry = "pp";
  c.a = 2e-6;
  c.models = {"drude", "plasma"};
  c.policies = {"natural"};
  c.quad.rel_tol = 1e-8;
  const auto text = config_to_json(c);
  CHECK(config_to_json(config_from_json(text)) == text);
  CHECK_THROWS_AS(config_from_json(R"({"geometry":"pl","colour":"red"})"), ContractViolation);
  CHECK_THROWS_AS(config_from_json(R"({"T_K":"hot"})"), ContractViolation);
}

TEST_CASE("content hash is stable") {
  CHECK(content_hash("") == "cbf29ce484222325");
  CHECK(content_hash("a") == "af63dc4c8601ec8c");
  CHECK(content_hash("abc") != content_hash("abd"));
}

TEST_CASE("force: aluminium sphere at 0.1 um") {
  const auto r = invoke({"force", "--geometry", "pl", "--a", "0.1um", "--T", "300", "--model", "plasma", "--omega-p",
                         "1.92e16", "--R", "100um", "--format", "json"});
  REQUIRE(r.code == kExitOk);
  CHECK(validate_result_json(r.out).empty());
  const auto doc = json::parse(r.out);
  const auto& row = doc.at("rows").at(0);
  const double f = row.at("force_N").get<double>();
  CHECK(f * 1e12 == doctest::Approx(-165.75).epsilon(1e-3));
  const double thermal = row.at("diagnostics").at("thermal_part").get<double>();
  CHECK(thermal < 0.0);
  CHECK(std::abs(thermal) * 1e12 < 0.05);
}

TEST_CASE("force: ideal plates at 1 um and zero temperature") {
  const auto r = invoke({"force", "--geometry", "pp", "--a", "1um", "--T", "0", "--model", "perfect"});
  REQUIRE(r.code == kExitOk);
  CHECK(r.out.rfind("force: -1.3001", 0) == 0);
  CHECK(r.out.find("mPa") != std::string::npos);
  CHECK(r.out.find("method: zeroT") != std::string::npos);
}

TEST_CASE("force: Drude natural minus plasma is a few pN") {
  auto get = [](const std::string& model, const std::string& policy) {
    const auto r = invoke({"force", "--geometry", "pl", "--a", "0.1um", "--T", "300", "--model", model, "--policy",
                           policy, "--format", "json"});
    REQUIRE(r.code == kExitOk);
    return json::parse(r.out).at("rows").at(0).at("force_N").get<double>();
  };
  const double gap = (get("drude", "natural") - get("plasma", "natural")) * 1e12;
  CHECK(gap > 2.0);
  CHECK(gap < 8.0);
}

TEST_CASE("force: usage and validity exit codes") {
  CHECK(invoke({"force", "--geometry", "pl", "--T", "300", "--model", "plasma"}).code == kExitUsage);
  CHECK(invoke({"force", "--geometry", "cube", "--a", "1um", "--T", "300", "--model", "plasma"}).code == kExitUsage);
  CHECK(invoke({"force", "--geometry", "pl", "--a", "-1um", "--T", "300", "--model", "plasma"}).code == kExitUsage);
  CHECK(invoke({"force", "--geometry", "pl", "--a", "1um", "--T", "300", "--model", "gold"}).code == kExitUsage);
  CHECK(invoke({"bogus"}).code == kExitUsage);
  CHECK(invoke({"--help"}).code == kExitOk);
  const auto v = invoke({"force", "--geometry", "pl", "--a", "50nm", "--T", "300", "--model", "plasma", "--method",
                         "perturbative"});
  CHECK(v.code == kExitNumeric);
  CHECK(v.err.find("delta0/a") != std::string::npos);
  CHECK(invoke({"force", "--geometry", "pl", "--a", "50nm", "--T", "300", "--model", "plasma", "--method",
                "perturbative", "--allow-out-of-range"})
            .code == kExitOk);
  const auto missing = invoke({"force", "--geometry", "pl", "--a", "1um", "--T", "300", "--model", "table:/nonexistent.csv"});
  CHECK(missing.code == kExitUsage);
}

TEST_CASE("force: tabulated model") {
  const auto r = invoke({"force", "--geometry", "pl", "--a", "1um", "--T", "300", "--model",
                         std::string("table:") + CASIMIR_TEST_DATA + "/aluminium_like.csv"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("table:5") != std::string::npos);
}

TEST_CASE("sweep: zero count is a usage error") {
  CHECK(invoke({"sweep", "--geometry", "pl", "--a-range", "0.1um:6um:0", "--T", "300", "--no-cache"}).code ==
        kExitUsage);
  CHECK(invoke({"sweep", "--geometry", "pl", "--a-range", "1nm:6um:4", "--T", "300", "--no-cache"}).code ==
        kExitUsage);
}

TEST_CASE("sweep: CSV layout and cache") {
  FixedClock clock;
  const auto dir = scratch("cache");
  const std::vector<std::string> args{"sweep", "--geometry", "pl", "--a-range", "0.1um:6um:4:log", "--T", "300",
                                      "--model", "plasma", "--compare", "methods=matsubara,perturbative,zeroT",
                                      "--cache-dir", dir.string()};
  const auto first = invoke(args);
  REQUIRE(first.code == kExitOk);
  std::istringstream csv(first.out);
  std::string header;
  std::getline(csv, header);
  CHECK(header ==
        "a_m,matsubara[plasma:1.92e+16|sdm]_N,perturbative[plasma:1.92e+16]_N,zeroT[plasma:1.92e+16]_N,error");
  int lines = 0;
  for (std::string line; std::getline(csv, line);) ++lines;
  CHECK(lines == 4);
  // Out-of-validity perturbative cell at 6 um is reported as a warning.
  CHECK(first.err.find("warning") != std::string::npos);

  std::size_t blobs = 0;
  for (const auto& e : std::filesystem::directory_iterator(dir)) blobs += e.path().extension() == ".json";
  CHECK(blobs == 1);

  const auto second = invoke(args);
  CHECK(second.code == kExitOk);
  CHECK(second.out == first.out);

  // A corrupted blob is recomputed rather than served.
  for (const auto& e : std::filesystem::directory_iterator(dir)) std::ofstream(e.path()) << "{broken";
  const auto third = invoke(args);
  CHECK(third.code == kExitOk);
  CHECK(third.out == first.out);
  std::filesystem::remove_all(dir);
}

TEST_CASE("sweep: JSON output validates and the config echo reproduces it") {
  FixedClock clock;
  const auto dir = scratch("echo");
  const auto r = invoke({"sweep", "--geometry", "pp", "--a-range", "0.5um:2um:3", "--T", "300", "--model", "perfect",
                         "--compare", "methods=matsubara,deltaT;policies=sdm,natural", "--format", "json",
                         "--no-cache"});
  REQUIRE(r.code == kExitOk);
  CHECK(validate_result_json(r.out).empty());
  const auto doc = json::parse(r.out);
  CHECK(doc.at("schema_version") == kSchemaVersion);
  CHECK(doc.at("rows").size() == 3);
  CHECK(doc.at("columns").size() == 4);

  const auto cfg_path = dir / "config.json";
  std::ofstream(cfg_path) << doc.at("config").dump();
  const auto again = invoke({"sweep", "--config", cfg_path.string(), "--format", "json", "--no-cache"});
  CHECK(again.code == kExitOk);
  CHECK(again.out == r.out);

  const auto out_path = dir / "out.csv";
  const auto to_file = invoke({"sweep", "--config", cfg_path.string(), "--no-cache", "--output", out_path.string()});
  CHECK(to_file.code == kExitOk);
  CHECK(to_file.out.empty());
  CHECK(slurp(out_path) == json_document_to_csv(r.out));
  std::filesystem::remove_all(dir);
}

TEST_CASE("schema validator rejects malformed documents") {
  CHECK_FALSE(validate_result_json("not json").empty());
  CHECK_FALSE(validate_result_json(R"({"schema_version":1})").empty());
  CHECK_FALSE(validate_result_json(R"({"schema_version":99,"kind":"sweep","config":{},"columns":[],"rows":[],)"
                                   R"("band":null,"metadata":{},"provenance":{"build":"x","timestamp":"y"}})")
                   .empty());
}

TEST_CASE("repro: coefficient study passes") {
  const auto r = invoke({"repro", "--study", "coeffs"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("FAIL") == std::string::npos);
  CHECK(r.out.find("c_6 = 156.3127") != std::string::npos);
  CHECK(invoke({"repro", "--study", "nonsense"}).code == kExitUsage);
}

TEST_CASE("repro: high-temperature study passes") {
  const auto r = invoke({"repro", "--study", "high-T-174"});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("result: PASS") != std::string::npos);
}
