#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "casimir/cli.hpp"
#include "casimir/error.hpp"
#include "casimir/perturbative.hpp"
#include "casimir/repro.hpp"

namespace casimir::cli {

using json = nlohmann::ordered_json;

namespace {

// Raw flag values; an option only overrides the config when it was given.
struct Flags {
  std::string config_path;
  std::string geometry;
  std::string a;
  std::string a_range;
  double temperature = 0.0;
  std::string radius;
  std::string model;
  double omega_p = 0.0;
  double gamma = 0.0;
  std::string policy;
  std::string method;
  std::vector<std::string> compare;
  double rel_tol = 0.0;
  int max_subdivisions = 0;
  std::string format;
  std::string output;
  std::string cache_dir;
  bool no_cache = false;
  bool allow_out_of_range = false;

  CLI::Option* o_geometry = nullptr;
  CLI::Option* o_a = nullptr;
  CLI::Option* o_a_range = nullptr;
  CLI::Option* o_T = nullptr;
  CLI::Option* o_R = nullptr;
  CLI::Option* o_model = nullptr;
  CLI::Option* o_omega_p = nullptr;
  CLI::Option* o_gamma = nullptr;
  CLI::Option* o_policy = nullptr;
  CLI::Option* o_method = nullptr;
  CLI::Option* o_rel_tol = nullptr;
  CLI::Option* o_max_sub = nullptr;
  CLI::Option* o_allow = nullptr;
};

void add_scenario_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config_path, "JSON run configuration (flags override it)");
  f.o_geometry = cmd->add_option("--geometry", f.geometry, "pp (plates) or pl (sphere above plate)")
                     ->check(CLI::IsMember({"pp", "pl"}));
  f.o_T = cmd->add_option("--T", f.temperature, "temperature in kelvin");
  f.o_R = cmd->add_option("--R", f.radius, "sphere radius (m, or with um/nm suffix)");
  f.o_model = cmd->add_option("--model", f.model, "perfect | plasma | drude | table:<path>");
  f.o_omega_p = cmd->add_option("--omega-p", f.omega_p, "plasma frequency, rad/s");
  f.o_gamma = cmd->add_option("--gamma", f.gamma, "Drude relaxation frequency, rad/s");
  f.o_policy = cmd->add_option("--policy", f.policy, "zero-mode policy: sdm | natural");
  f.o_rel_tol = cmd->add_option("--rel-tol", f.rel_tol, "relative quadrature tolerance");
  f.o_max_sub = cmd->add_option("--max-subdivisions", f.max_subdivisions, "adaptive quadrature subdivision cap");
  f.o_allow = cmd->add_flag("--allow-out-of-range", f.allow_out_of_range,
                            "print perturbative results outside their validity bounds");
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep))
    if (!item.empty()) out.push_back(item);
  return out;
}

RunConfig effective_config(const Flags& f) {
  RunConfig cfg;
  if (!f.config_path.empty()) {
    std::ifstream in(f.config_path);
    if (!in) throw ContractViolation("cannot read config '" + f.config_path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    cfg = config_from_json(ss.str());
  }
  if (f.o_geometry && f.o_geometry->count()) cfg.geometry = f.geometry;
  if (f.o_a && f.o_a->count()) cfg.a = parse_length(f.a);
  if (f.o_a_range && f.o_a_range->count()) cfg.a_range = parse_a_range(f.a_range);
  if (f.o_T && f.o_T->count()) cfg.temperature = f.temperature;
  if (f.o_R && f.o_R->count()) cfg.radius = parse_length(f.radius);
  if (f.o_model && f.o_model->count()) cfg.models = {f.model};
  if (f.o_omega_p && f.o_omega_p->count()) cfg.omega_p = f.omega_p;
  if (f.o_gamma && f.o_gamma->count()) cfg.gamma = f.gamma;
  if (f.o_policy && f.o_policy->count()) cfg.policies = {f.policy};
  if (f.o_method && f.o_method->count()) cfg.methods = {f.method};
  if (f.o_rel_tol && f.o_rel_tol->count()) cfg.quad.rel_tol = f.rel_tol;
  if (f.o_max_sub && f.o_max_sub->count()) cfg.quad.max_subdivisions = f.max_subdivisions;
  if (f.o_allow && f.o_allow->count()) cfg.allow_out_of_range = true;
  for (const auto& spec : f.compare) {
    for (const auto& clause : split(spec, ';')) {
      const auto eq = clause.find('=');
      if (eq == std::string::npos) throw ContractViolation("--compare expects key=a,b,... got '" + clause + "'");
      const auto key = clause.substr(0, eq);
      auto values = split(clause.substr(eq + 1), ',');
      if (values.empty()) throw ContractViolation("--compare " + key + " has no values");
      if (key == "models") cfg.models = values;
      else if (key == "policies") cfg.policies = values;
      else if (key == "methods") cfg.methods = values;
      else throw ContractViolation("--compare key must be models, policies or methods, got '" + key + "'");
    }
  }
  cfg.quad.validate();
  for (const auto& p : cfg.policies) parse_zero_mode_policy(p);
  for (const auto& m : cfg.methods) parse_method(m);
  return cfg;
}

bool given(const Flags& f, CLI::Option* o) { return !f.config_path.empty() || (o && o->count()); }

std::string fmt(double v, const char* spec = "%.9g") {
  char buf[48];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

// --- force -----------------------------------------------------------------------

int cmd_force(const Flags& f, std::ostream& out, std::ostream& err) {
  for (auto [opt, name] : {std::pair{f.o_geometry, "--geometry"}, {f.o_a, "--a"}, {f.o_T, "--T"}, {f.o_model, "--model"}})
    if (!given(f, opt)) throw ContractViolation(std::string(name) + " is required");
  const RunConfig cfg = effective_config(f);
  if (!cfg.a) throw ContractViolation("--a is required");
  const Scenario s = scenario_of(cfg, *cfg.a);
  const DielectricModel model = model_of(cfg, cfg.models.front());
  const ZeroModePolicy policy = parse_zero_mode_policy(cfg.policies.front());
  std::string method = cfg.methods.front();
  if (method != "matsubara" && method != "zeroT" && method != "perturbative" && method != "asymptote")
    throw ContractViolation("--method must be matsubara|zeroT|perturbative|asymptote");
  if (method == "matsubara" && s.temperature == 0.0) method = "zeroT";

  const auto scales = derive_scales(s, model);
  const bool pl = s.is_sphere_plate();
  const double display = pl ? 1e12 : 1e3;
  const char* unit = pl ? "pN" : "mPa";

  json diag;
  double value = 0.0;
  if (method == "matsubara" || method == "zeroT") {
    const auto zero_t = zero_temperature_force(s, model, cfg.quad);
    ForceResult r = zero_t;
    if (method == "matsubara") {
      r = matsubara_force(s, model, policy, cfg.quad);
      diag["zero_mode_contribution"] = r.zero_mode_contribution;
      diag["thermal_part"] = r.value - zero_t.value;
      diag["zero_temperature_force"] = zero_t.value;
    }
    value = r.value;
    diag["n_terms_used"] = r.n_terms_used;
    diag["truncation_estimate"] = r.truncation_estimate;
    diag["quadrature_error"] = r.quadrature_error;
    diag["tail_bound"] = r.tail_bound;
    diag["series_remainder"] = r.series_remainder;
  } else if (method == "perturbative") {
    const auto b = perturbative_force(s, scales.delta0, !cfg.allow_out_of_range);
    value = b.total;
    diag["ideal"] = b.ideal;
    diag["thermal_ideal"] = b.thermal_ideal;
    diag["conductivity_terms"] = b.conductivity_terms;
    diag["cross_terms"] = b.cross_terms;
    diag["thermal_part"] = b.thermal();
    diag["in_validity"] = b.delta_ratio < kMaxDeltaRatio && b.t_ratio < kMaxTemperatureRatio;
  } else {
    if (!pl) throw ContractViolation("the asymptote method is defined for --geometry pl only");
    if (!high_T_asymptote_in_validity(s, scales.delta0) && !cfg.allow_out_of_range)
      throw ValidityError("delta0/a", "delta0/a >= 1/4: asymptote out of validity");
    value = high_T_asymptote_pl(s, scales.delta0);
  }
  diag["T_eff_K"] = scales.T_eff;
  diag["T_over_T_eff"] = s.temperature / scales.T_eff;
  diag["delta0_m"] = scales.delta0;
  diag["delta0_over_a"] = scales.delta0 / s.separation;
  diag["pfa_warning"] = s.pfa_warning();
  if (s.pfa_warning()) err << "warning: R/a < " << kPfaMinRatio << ", proximity force approximation is doubtful\n";

  if (f.format == "json") {
    json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["kind"] = "force";
    doc["config"] = json::parse(config_to_json(cfg));
    const std::string col = pl ? "force_N" : "pressure_Pa";
    doc["columns"] = {col};
    json row;
    row["a_m"] = s.separation;
    row[col] = value;
    row["method"] = method;
    row["policy"] = to_string(policy);
    row["model"] = model.label();
    row["diagnostics"] = diag;
    row["error"] = "";
    doc["rows"] = json::array({row});
    doc["band"] = nullptr;
    doc["metadata"] = json::object();
    doc["provenance"] = {{"build", build_id()}, {"timestamp", current_timestamp()}};
    out << doc.dump(2) << '\n';
    return kExitOk;
  }

  out << "force: " << fmt(value * display) << ' ' << unit << '\n';
  out << "method: " << method << "  model: " << model.label() << "  policy: " << to_string(policy) << '\n';
  out << "a = " << fmt(s.separation, "%.6g") << " m, T = " << fmt(s.temperature, "%.6g") << " K";
  if (pl) out << ", R = " << fmt(s.radius(), "%.6g") << " m";
  out << '\n';
  out << "T_eff = " << fmt(scales.T_eff, "%.6g") << " K, T/T_eff = " << fmt(s.temperature / scales.T_eff, "%.6g")
      << ", delta0/a = " << fmt(scales.delta0 / s.separation, "%.6g") << '\n';
  for (const auto& [k, v] : diag.items()) {
    if (k == "T_eff_K" || k == "T_over_T_eff" || k == "delta0_m" || k == "delta0_over_a" || k == "pfa_warning") continue;
    const bool force_like = k != "n_terms_used" && k != "in_validity" && k != "conductivity_terms";
    if (force_like && v.is_number())
      out << k << ": " << fmt(v.get<double>() * display) << ' ' << unit << '\n';
    else
      out << k << ": " << v.dump() << '\n';
  }
  return kExitOk;
}

// --- sweep -----------------------------------------------------------------------

SweepSpec sweep_of(const RunConfig& cfg) {
  if (!cfg.a_range) throw ContractViolation("--a-range is required");
  SweepSpec sweep;
  sweep.separations = make_grid(cfg.a_range->start, cfg.a_range->stop, cfg.a_range->count, cfg.a_range->logarithmic);
  sweep.scenario = scenario_of(cfg, sweep.separations.front());
  for (const auto& m : cfg.models) sweep.models.push_back(model_of(cfg, m));
  sweep.policies.clear();
  for (const auto& p : cfg.policies) sweep.policies.push_back(parse_zero_mode_policy(p));
  sweep.methods.clear();
  for (const auto& m : cfg.methods) sweep.methods.push_back(parse_method(m));
  sweep.quad = cfg.quad;
  sweep.validate();
  return sweep;
}

int cmd_sweep(const Flags& f, std::ostream& out, std::ostream& err) {
  if (!given(f, f.o_a_range)) throw ContractViolation("--a-range is required");
  const RunConfig cfg = effective_config(f);
  const SweepSpec sweep = sweep_of(cfg);

  namespace fs = std::filesystem;
  const std::string key = content_hash(config_to_json(cfg) + "|sweep|" + build_id());
  const fs::path cache_dir = f.cache_dir.empty() ? fs::path(default_cache_dir()) : fs::path(f.cache_dir);
  const fs::path blob = cache_dir / (key + ".json");

  std::string document;
  if (!f.no_cache && fs::exists(blob)) {
    std::ifstream in(blob, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    if (validate_result_json(ss.str()).empty()) document = ss.str();
  }
  if (document.empty()) {
    const auto report = run_sweep(sweep);
    document = report_to_json(report, "sweep", cfg, current_timestamp());
    if (!f.no_cache) {
      std::error_code ec;
      fs::create_directories(cache_dir, ec);
      const fs::path tmp = blob.string() + ".tmp";
      {
        std::ofstream o(tmp, std::ios::binary);
        o << document;
      }
      fs::rename(tmp, blob, ec);
      if (ec) err << "warning: could not write cache blob " << blob << ": " << ec.message() << '\n';
    }
  }

  const json doc = json::parse(document);
  int succeeded = 0;
  for (const auto& row : doc.at("rows")) {
    bool any = false;
    for (const auto& c : doc.at("columns")) any = any || !row.at(c.get<std::string>()).is_null();
    if (any) ++succeeded;
    const auto e = row.value("error", std::string());
    if (!e.empty()) err << "warning: a = " << row.at("a_m").get<double>() << " m: " << e << '\n';
  }

  const std::string payload = f.format == "json" ? document : json_document_to_csv(document);
  if (f.output.empty()) {
    out << payload;
  } else {
    std::ofstream o(f.output, std::ios::binary);
    if (!o) throw ContractViolation("cannot write output '" + f.output + "'");
    o << payload;
  }
  return succeeded > 0 ? kExitOk : kExitNumeric;
}

// --- repro -----------------------------------------------------------------------

int cmd_repro(const std::string& study, const Flags& f, std::ostream& out) {
  QuadratureSpec quad;
  if (f.o_rel_tol && f.o_rel_tol->count()) quad.rel_tol = f.rel_tol;
  quad.validate();
  ComparisonReport dataset;
  out << "study: " << study << '\n';
  const bool ok = run_study(study, quad, out, &dataset);
  if (study == "fig1" && !f.output.empty()) {
    std::ofstream o(f.output, std::ios::binary);
    if (!o) throw ContractViolation("cannot write output '" + f.output + "'");
    o << report_to_csv(dataset);
  }
  out << (ok ? "result: PASS" : "result: FAIL") << '\n';
  return ok ? kExitOk : kExitCheckFailed;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Casimir force between real metals at finite temperature"};
  app.require_subcommand(1);

  Flags force_flags;
  auto* force = app.add_subcommand("force", "single-point force or pressure");
  add_scenario_flags(force, force_flags);
  force_flags.o_a = force->add_option("--a", force_flags.a, "separation (m, or with um/nm suffix)");
  force_flags.o_method = force->add_option("--method", force_flags.method, "matsubara | zeroT | perturbative | asymptote");
  force->add_option("--format", force_flags.format, "text | json")->check(CLI::IsMember({"text", "json"}));

  Flags sweep_flags;
  auto* sweep = app.add_subcommand("sweep", "separation sweep as CSV or JSON");
  add_scenario_flags(sweep, sweep_flags);
  sweep_flags.o_a_range = sweep->add_option("--a-range", sweep_flags.a_range, "start:stop:count[:log]");
  sweep_flags.o_method = sweep->add_option("--method", sweep_flags.method, "single method");
  sweep->add_option("--compare", sweep_flags.compare, "models=..|policies=..|methods=.. comma lists");
  sweep->add_option("--format", sweep_flags.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  sweep->add_option("--output", sweep_flags.output, "write to file instead of stdout");
  sweep->add_option("--cache-dir", sweep_flags.cache_dir, "cache directory (default: $CASIMIR_CACHE_DIR)");
  sweep->add_flag("--no-cache", sweep_flags.no_cache, "bypass the result cache");

  Flags repro_flags;
  std::string study;
  auto* repro = app.add_subcommand("repro", "named reproduction studies with PASS/FAIL checks");
  repro->add_option("--study", study, "fig1 | drude-discrepancy | high-T-174 | coeffs")
      ->required()
      ->check(CLI::IsMember(study_names()));
  repro_flags.o_rel_tol = repro->add_option("--rel-tol", repro_flags.rel_tol, "relative quadrature tolerance");
  repro->add_option("--output", repro_flags.output, "fig1: write the curve dataset as CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (force->parsed()) return cmd_force(force_flags, out, err);
    if (sweep->parsed()) return cmd_sweep(sweep_flags, out, err);
    return cmd_repro(study, repro_flags, out);
  } catch (const ValidityError& e) {
    err << "error: validity (" << e.bound() << "): " << e.what() << '\n';
    return kExitNumeric;
  } catch (const NumericError& e) {
    err << "error: numeric: " << e.what() << " (partial value " << e.partial_value() << ")\n";
    return kExitNumeric;
  } catch (const ParseError& e) {
    err << "error: input: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ContractViolation& e) {
    err << "error: usage: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace casimir::cli
