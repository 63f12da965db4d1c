#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "casimir/analysis.hpp"

namespace casimir::cli {

inline constexpr int kSchemaVersion = 1;

enum ExitCode : int {
  kExitOk = 0,
  kExitCheckFailed = 1,
  kExitUsage = 2,
  kExitNumeric = 3,
};

/// "1e-6", "0.1um", "100nm", "2mm", "1m" -> meters. Bare numbers are meters.
double parse_length(const std::string& text);

struct ARange {
  double start = 0.0;
  double stop = 0.0;
  int count = 0;
  bool logarithmic = false;
};
/// "start:stop:count[:log|:lin]" with length suffixes on start/stop.
ARange parse_a_range(const std::string& text);

/// Everything a run depends on. Echoed into every output and accepted back via --config.
struct RunConfig {
  std::string geometry = "pl";  // pp | pl
  std::optional<double> a;      // m, force
  std::optional<ARange> a_range;
  double temperature = 300.0;
  double radius = 100e-6;
  std::vector<std::string> models{"plasma"};  // perfect | plasma | drude | table:<path>
  double omega_p = kAluminiumPlasmaFrequency;
  double gamma = kAluminiumDrudeGamma;
  std::vector<std::string> policies{"sdm"};
  std::vector<std::string> methods{"matsubara"};
  QuadratureSpec quad;
  bool allow_out_of_range = false;
};

Scenario scenario_of(const RunConfig& cfg, double a);
DielectricModel model_of(const RunConfig& cfg, const std::string& name);

std::string config_to_json(const RunConfig& cfg);
/// Throws ContractViolation on unknown keys or wrong types.
RunConfig config_from_json(const std::string& text);

/// Stable 64-bit FNV-1a hash, hex encoded.
std::string content_hash(const std::string& bytes);

/// Full JSON document of a report.
std::string report_to_json(const ComparisonReport& report, const std::string& kind, const RunConfig& cfg,
                           const std::string& timestamp);
/// Frozen CSV layout: a_m, one column per series, error.
std::string report_to_csv(const ComparisonReport& report);
/// CSV rendering of a JSON document produced by report_to_json.
std::string json_document_to_csv(const std::string& json_text);

/// Checks a result document against the output schema; returns the list of problems (empty = valid).
std::vector<std::string> validate_result_json(const std::string& json_text);

std::string build_id();
/// UTC ISO-8601 time, or SOURCE_DATE_EPOCH when set.
std::string current_timestamp();

/// --cache-dir, then CASIMIR_CACHE_DIR, then $XDG_CACHE_HOME/casimir, then ~/.cache/casimir.
std::string default_cache_dir();

/// Entry point of the casimir tool. Never calls std::exit.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace casimir::cli
