#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <sstream>

#include <json.hpp>

#include "casimir/cli.hpp"
#include "casimir/error.hpp"

namespace casimir::cli {

using json = nlohmann::ordered_json;

double parse_length(const std::string& text) {
  static const std::pair<const char*, double> kSuffixes[] = {
      {"nm", 1e-9}, {"um", 1e-6}, {"mm", 1e-3}, {"m", 1.0}};
  std::string number = text;
  double scale = 1.0;
  for (const auto& [suffix, factor] : kSuffixes) {
    const std::string s(suffix);
    if (text.size() > s.size() && text.compare(text.size() - s.size(), s.size(), s) == 0) {
      number = text.substr(0, text.size() - s.size());
      scale = factor;
      break;
    }
  }
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(number, &used);
  } catch (const std::exception&) {
    throw ContractViolation("malformed length '" + text + "'");
  }
  if (used != number.size() || !std::isfinite(v)) throw ContractViolation("malformed length '" + text + "'");
  return v * scale;
}

ARange parse_a_range(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.size() < 3 || parts.size() > 4) throw ContractViolation("--a-range expects start:stop:count[:log]");
  ARange r;
  r.start = parse_length(parts[0]);
  r.stop = parse_length(parts[1]);
  std::size_t used = 0;
  try {
    r.count = std::stoi(parts[2], &used);
  } catch (const std::exception&) {
    throw ContractViolation("malformed count in --a-range '" + text + "'");
  }
  if (used != parts[2].size()) throw ContractViolation("malformed count in --a-range '" + text + "'");
  if (r.count < 1) throw ContractViolation("--a-range count must be >= 1");
  if (parts.size() == 4) {
    if (parts[3] == "log") r.logarithmic = true;
    else if (parts[3] != "lin") throw ContractViolation("--a-range spacing must be log or lin");
  }
  if (!(r.start > 0.0) || !(r.stop >= r.start)) throw ContractViolation("--a-range needs 0 < start <= stop");
  return r;
}

Scenario scenario_of(const RunConfig& cfg, double a) {
  if (cfg.geometry == "pl") return make_sphere_plate(a, cfg.temperature, cfg.radius);
  if (cfg.geometry == "pp") return make_plates(a, cfg.temperature);
  throw ContractViolation("geometry must be pp or pl, got '" + cfg.geometry + "'");
}

DielectricModel model_of(const RunConfig& cfg, const std::string& name) {
  if (name == "perfect") return DielectricModel::perfect_conductor();
  if (name == "plasma") return DielectricModel::plasma(cfg.omega_p);
  if (name == "drude") return DielectricModel::drude(cfg.omega_p, cfg.gamma);
  if (name.rfind("table:", 0) == 0) return DielectricModel::tabulated(load_permittivity_table_file(name.substr(6)));
  throw ContractViolation("unknown model '" + name + "' (expected perfect|plasma|drude|table:<path>)");
}

std::string config_to_json(const RunConfig& cfg) {
  json j;
  j["geometry"] = cfg.geometry;
  if (cfg.a) j["a_m"] = *cfg.a;
  if (cfg.a_range)
    j["a_range"] = {{"start_m", cfg.a_range->start},
                    {"stop_m", cfg.a_range->stop},
                    {"count", cfg.a_range->count},
                    {"log", cfg.a_range->logarithmic}};
  j["T_K"] = cfg.temperature;
  if (cfg.geometry == "pl") j["R_m"] = cfg.radius;
  j["models"] = cfg.models;
  j["omega_p"] = cfg.omega_p;
  j["gamma"] = cfg.gamma;
  j["policies"] = cfg.policies;
  j["methods"] = cfg.methods;
  j["quadrature"] = {{"rel_tol", cfg.quad.rel_tol},
                     {"abs_tol", cfg.quad.abs_tol},
                     {"max_subdivisions", cfg.quad.max_subdivisions},
                     {"tail_cut", cfg.quad.tail_cut}};
  j["allow_out_of_range"] = cfg.allow_out_of_range;
  return j.dump();
}

RunConfig config_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ContractViolation(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ContractViolation("config must be a JSON object");
  RunConfig cfg;
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "geometry") cfg.geometry = v.get<std::string>();
      else if (key == "a_m") cfg.a = v.get<double>();
      else if (key == "a_range")
        cfg.a_range = ARange{v.at("start_m").get<double>(), v.at("stop_m").get<double>(), v.at("count").get<int>(),
                             v.at("log").get<bool>()};
      else if (key == "T_K") cfg.temperature = v.get<double>();
      else if (key == "R_m") cfg.radius = v.get<double>();
      else if (key == "models") cfg.models = v.get<std::vector<std::string>>();
      else if (key == "omega_p") cfg.omega_p = v.get<double>();
      else if (key == "gamma") cfg.gamma = v.get<double>();
      else if (key == "policies") cfg.policies = v.get<std::vector<std::string>>();
      else if (key == "methods") cfg.methods = v.get<std::vector<std::string>>();
      else if (key == "quadrature") {
        cfg.quad.rel_tol = v.value("rel_tol", cfg.quad.rel_tol);
        cfg.quad.abs_tol = v.value("abs_tol", cfg.quad.abs_tol);
        cfg.quad.max_subdivisions = v.value("max_subdivisions", cfg.quad.max_subdivisions);
        cfg.quad.tail_cut = v.value("tail_cut", cfg.quad.tail_cut);
      } else if (key == "allow_out_of_range") cfg.allow_out_of_range = v.get<bool>();
      else throw ContractViolation("unknown config key '" + key + "'");
    }
  } catch (const json::exception& e) {
    throw ContractViolation(std::string("bad config value: ") + e.what());
  }
  return cfg;
}

std::string content_hash(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  static const char* hex = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = hex[h & 0xf];
    h >>= 4;
  }
  return out;
}

std::string build_id() {
  std::string id = "casimir 0.1.0";
#if defined(__VERSION__)
  id += " (";
  id += __VERSION__;
  id += ")";
#endif
  return id;
}

std::string current_timestamp() {
  std::time_t t = 0;
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH"))
    t = static_cast<std::time_t>(std::strtoll(epoch, nullptr, 10));
  else
    t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string default_cache_dir() {
  namespace fs = std::filesystem;
  if (const char* d = std::getenv("CASIMIR_CACHE_DIR"); d && *d) return d;
  if (const char* x = std::getenv("XDG_CACHE_HOME"); x && *x) return (fs::path(x) / "casimir").string();
  if (const char* h = std::getenv("HOME"); h && *h) return (fs::path(h) / ".cache" / "casimir").string();
  return ".casimir-cache";
}

}  // namespace casimir::cli
