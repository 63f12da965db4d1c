#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "casimir/cli.hpp"
#include "casimir/error.hpp"

namespace casimir::cli {

using json = nlohmann::ordered_json;

namespace {

std::string sci(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12e", v);
  return buf;
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c == '\n' ? ' ' : c;
  }
  return out + "\"";
}

std::string csv_from_document(const json& doc) {
  std::ostringstream os;
  const auto& columns = doc.at("columns");
  os << "a_m";
  for (const auto& c : columns) os << ',' << c.get<std::string>();
  os << ",error\n";
  for (const auto& row : doc.at("rows")) {
    os << sci(row.at("a_m").get<double>());
    for (const auto& c : columns) {
      os << ',';
      const auto& v = row.at(c.get<std::string>());
      if (!v.is_null()) os << sci(v.get<double>());
    }
    os << ',' << csv_quote(row.value("error", std::string()));
    os << '\n';
  }
  return os.str();
}

json document(const ComparisonReport& report, const std::string& kind, const RunConfig& cfg,
              const std::string& timestamp) {
  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["kind"] = kind;
  doc["config"] = json::parse(config_to_json(cfg));
  doc["columns"] = report.columns;
  json rows = json::array();
  for (const auto& r : report.rows) {
    json row;
    row["a_m"] = r.a;
    for (std::size_t i = 0; i < report.columns.size(); ++i)
      row[report.columns[i]] = r.values[i] ? json(*r.values[i]) : json(nullptr);
    row["error"] = r.error;
    rows.push_back(std::move(row));
  }
  doc["rows"] = std::move(rows);
  doc["band"] = report.band ? json::array({report.band->first, report.band->second}) : json(nullptr);
  json md = json::object();
  for (const auto& [k, v] : report.metadata) md[k] = v;
  doc["metadata"] = std::move(md);
  doc["provenance"] = {{"build", build_id()}, {"timestamp", timestamp}};
  return doc;
}

}  // namespace

std::string report_to_json(const ComparisonReport& report, const std::string& kind, const RunConfig& cfg,
                           const std::string& timestamp) {
  return document(report, kind, cfg, timestamp).dump(2) + "\n";
}

std::string report_to_csv(const ComparisonReport& report) {
  return csv_from_document(document(report, "sweep", RunConfig{}, ""));
}

std::string json_document_to_csv(const std::string& json_text) {
  return csv_from_document(json::parse(json_text));
}

std::vector<std::string> validate_result_json(const std::string& json_text) {
  std::vector<std::string> problems;
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    return {std::string("not JSON: ") + e.what()};
  }
  auto need = [&](const char* key, auto check, const char* type) {
    if (!doc.contains(key)) {
      problems.push_back(std::string("missing '") + key + "'");
      return false;
    }
    if (!check(doc[key])) {
      problems.push_back(std::string("'") + key + "' must be " + type);
      return false;
    }
    return true;
  };
  if (!doc.is_object()) return {"document must be an object"};
  if (need("schema_version", [](const json& v) { return v.is_number_integer(); }, "an integer") &&
      doc["schema_version"].get<int>() != kSchemaVersion)
    problems.push_back("unsupported schema_version");
  need("kind", [](const json& v) { return v.is_string(); }, "a string");
  if (need("config", [](const json& v) { return v.is_object(); }, "an object")) {
    try {
      config_from_json(doc["config"].dump());
    } catch (const std::exception& e) {
      problems.push_back(std::string("config does not re-validate: ") + e.what());
    }
  }
  const bool have_columns = need("columns", [](const json& v) { return v.is_array(); }, "an array");
  if (have_columns)
    for (const auto& c : doc["columns"])
      if (!c.is_string()) problems.push_back("column names must be strings");
  if (need("rows", [](const json& v) { return v.is_array(); }, "an array") && have_columns) {
    std::size_t i = 0;
    for (const auto& row : doc["rows"]) {
      const std::string where = "rows[" + std::to_string(i++) + "]";
      if (!row.is_object()) {
        problems.push_back(where + " must be an object");
        continue;
      }
      if (!row.contains("a_m") || !row["a_m"].is_number()) problems.push_back(where + ".a_m must be a number");
      for (const auto& c : doc["columns"]) {
        if (!c.is_string()) continue;
        const auto name = c.get<std::string>();
        if (!row.contains(name)) problems.push_back(where + " lacks column '" + name + "'");
        else if (!row[name].is_null() && !row[name].is_number())
          problems.push_back(where + "." + name + " must be a number or null");
      }
      if (row.contains("error") && !row["error"].is_string()) problems.push_back(where + ".error must be a string");
    }
  }
  if (doc.contains("band") && !doc["band"].is_null() &&
      !(doc["band"].is_array() && doc["band"].size() == 2 && doc["band"][0].is_number() && doc["band"][1].is_number()))
    problems.push_back("'band' must be null or [lo, hi]");
  if (need("provenance", [](const json& v) { return v.is_object(); }, "an object")) {
    const auto& p = doc["provenance"];
    if (!p.contains("build") || !p["build"].is_string()) problems.push_back("provenance.build must be a string");
    if (!p.contains("timestamp") || !p["timestamp"].is_string())
      problems.push_back("provenance.timestamp must be a string");
  }
  return problems;
}

}  // namespace casimir::cli
