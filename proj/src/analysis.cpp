#include "casimir/analysis.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "casimir/error.hpp"
#include "casimir/perturbative.hpp"

namespace casimir {

std::vector<double> make_grid(double start, double stop, int count, bool logarithmic) {
  if (count < 1) throw ContractViolation("grid needs at least one point");
  if (!(start > 0.0) || !(stop >= start)) throw ContractViolation("grid needs 0 < start <= stop");
  if (count == 1) return {start};
  if (start == stop) throw ContractViolation("grid with several points needs start < stop");
  std::vector<double> g(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const double f = static_cast<double>(i) / (count - 1);
    g[i] = logarithmic ? start * std::pow(stop / start, f) : start + (stop - start) * f;
  }
  g.front() = start;
  g.back() = stop;
  return g;
}

std::string to_string(Method m) {
  switch (m) {
    case Method::Matsubara: return "matsubara";
    case Method::ZeroT: return "zeroT";
    case Method::Perturbative: return "perturbative";
    case Method::Asymptote: return "asymptote";
    case Method::DeltaT: return "deltaT";
  }
  return "unknown";
}

Method parse_method(const std::string& text) {
  for (auto m : {Method::Matsubara, Method::ZeroT, Method::Perturbative, Method::Asymptote, Method::DeltaT})
    if (text == to_string(m)) return m;
  throw ContractViolation("unknown method '" + text + "' (expected matsubara|zeroT|perturbative|asymptote|deltaT)");
}

void SweepSpec::validate() const {
  if (separations.empty()) throw ContractViolation("sweep grid is empty");
  for (std::size_t i = 0; i < separations.size(); ++i) {
    const double a = separations[i];
    if (!(a >= kMinSweepSeparation && a <= kMaxSweepSeparation))
      throw ContractViolation("sweep separation outside [10 nm, 100 um]");
    if (i > 0 && !(a > separations[i - 1])) throw ContractViolation("sweep grid must be strictly increasing");
  }
  if (models.empty()) throw ContractViolation("sweep needs at least one model");
  if (policies.empty()) throw ContractViolation("sweep needs at least one policy");
  if (methods.empty()) throw ContractViolation("sweep needs at least one method");
  scenario.validate();
  quad.validate();
}

std::size_t ComparisonReport::column(const std::string& name) const {
  for (std::size_t i = 0; i < columns.size(); ++i)
    if (columns[i] == name) return i;
  throw std::out_of_range("no report column '" + name + "'");
}

std::optional<double> ComparisonReport::at(std::size_t row, const std::string& name) const {
  return rows.at(row).values.at(column(name));
}

namespace {

std::string unit_suffix(const Scenario& s) { return s.is_sphere_plate() ? "_N" : "_Pa"; }

Scenario at_separation(Scenario s, double a) {
  s.separation = a;
  return s;
}

double delta0_of(const Scenario& s, const DielectricModel& m) { return derive_scales(s, m).delta0; }

// Thermal force, routing T = 0 to the zero-temperature integral.
ForceResult thermal_force(const Scenario& s, const DielectricModel& m, ZeroModePolicy p, const QuadratureSpec& q) {
  if (s.temperature == 0.0) return zero_temperature_force(s, m, q);
  return matsubara_force(s, m, p, q);
}

void note(std::string& error, const std::string& column, const std::exception& e) {
  if (!error.empty()) error += "; ";
  error += column + ": " + e.what();
}

std::vector<std::pair<std::string, std::string>> sweep_metadata(const SweepSpec& sweep) {
  std::ostringstream os;
  os.precision(17);
  std::vector<std::pair<std::string, std::string>> md;
  md.emplace_back("geometry", sweep.scenario.is_sphere_plate() ? "sphere-plate" : "plates");
  os << sweep.scenario.temperature;
  md.emplace_back("temperature_K", os.str());
  if (sweep.scenario.is_sphere_plate()) {
    os.str("");
    os << sweep.scenario.radius();
    md.emplace_back("radius_m", os.str());
  }
  os.str("");
  os << sweep.quad.rel_tol;
  md.emplace_back("rel_tol", os.str());
  return md;
}

}  // namespace

ComparisonReport run_sweep(const SweepSpec& sweep) {
  sweep.validate();
  const std::string unit = unit_suffix(sweep.scenario);

  struct Cell {
    std::size_t model;
    std::optional<ZeroModePolicy> policy;
    Method method;
  };
  ComparisonReport report;
  std::vector<Cell> cells;
  for (std::size_t mi = 0; mi < sweep.models.size(); ++mi) {
    const std::string label = sweep.models[mi].label();
    for (Method method : sweep.methods) {
      if (method == Method::Matsubara || method == Method::DeltaT) {
        for (auto p : sweep.policies) {
          cells.push_back({mi, p, method});
          report.columns.push_back(to_string(method) + "[" + label + "|" + to_string(p) + "]" + unit);
        }
      } else {
        cells.push_back({mi, std::nullopt, method});
        report.columns.push_back(to_string(method) + "[" + label + "]" + unit);
      }
    }
  }

  for (double a : sweep.separations) {
    const Scenario s = at_separation(sweep.scenario, a);
    ReportRow row;
    row.a = a;
    row.values.assign(cells.size(), std::nullopt);

    // Per model memo so that deltaT = matsubara - zeroT uses the identical numbers.
    std::vector<std::optional<double>> zero_t(sweep.models.size());
    std::vector<bool> zero_t_failed(sweep.models.size(), false);
    std::vector<std::vector<std::optional<double>>> thermal(sweep.models.size(),
                                                            std::vector<std::optional<double>>(2));
    std::vector<std::vector<bool>> thermal_failed(sweep.models.size(), std::vector<bool>(2, false));

    auto get_zero_t = [&](std::size_t mi) -> std::optional<double> {
      if (!zero_t[mi] && !zero_t_failed[mi]) {
        try {
          zero_t[mi] = zero_temperature_force(s, sweep.models[mi], sweep.quad).value;
        } catch (const std::exception& e) {
          zero_t_failed[mi] = true;
          note(row.error, "zeroT[" + sweep.models[mi].label() + "]", e);
        }
      }
      return zero_t[mi];
    };
    auto get_thermal = [&](std::size_t mi, ZeroModePolicy p) -> std::optional<double> {
      const auto pi = static_cast<std::size_t>(p == ZeroModePolicy::ModelNatural);
      if (!thermal[mi][pi] && !thermal_failed[mi][pi]) {
        try {
          thermal[mi][pi] = thermal_force(s, sweep.models[mi], p, sweep.quad).value;
        } catch (const std::exception& e) {
          thermal_failed[mi][pi] = true;
          note(row.error, "matsubara[" + sweep.models[mi].label() + "|" + to_string(p) + "]", e);
        }
      }
      return thermal[mi][pi];
    };

    for (std::size_t ci = 0; ci < cells.size(); ++ci) {
      const Cell& c = cells[ci];
      const DielectricModel& model = sweep.models[c.model];
      switch (c.method) {
        case Method::Matsubara: row.values[ci] = get_thermal(c.model, *c.policy); break;
        case Method::ZeroT: row.values[ci] = get_zero_t(c.model); break;
        case Method::DeltaT: {
          auto th = get_thermal(c.model, *c.policy);
          auto z = get_zero_t(c.model);
          if (th && z) row.values[ci] = *th - *z;
          break;
        }
        case Method::Perturbative:
          try {
            row.values[ci] = perturbative_force(s, delta0_of(s, model)).total;
          } catch (const std::exception& e) {
            note(row.error, report.columns[ci], e);
          }
          break;
        case Method::Asymptote:
          try {
            const double d0 = delta0_of(s, model);
            if (!high_T_asymptote_in_validity(s, d0)) throw ValidityError("delta0/a", "asymptote out of validity");
            row.values[ci] = high_T_asymptote_pl(s, d0);
          } catch (const std::exception& e) {
            note(row.error, report.columns[ci], e);
          }
          break;
      }
    }
    report.rows.push_back(std::move(row));
  }
  report.metadata = sweep_metadata(sweep);
  return report;
}

DeltaT delta_T_force(const Scenario& s, const DielectricModel& model, ZeroModePolicy policy,
                     const QuadratureSpec& quad) {
  if (!(s.temperature > 0.0)) throw ContractViolation("delta_T_force requires T > 0");
  DeltaT d;
  d.thermal = matsubara_force(s, model, policy, quad);
  d.zero_temperature = zero_temperature_force(s, model, quad);
  d.value = d.thermal.value - d.zero_temperature.value;
  return d;
}

PrescriptionDiscrepancy prescription_discrepancy(const Scenario& s, double omega_p, double gamma,
                                                 const QuadratureSpec& quad) {
  if (!s.is_sphere_plate()) throw ContractViolation("prescription_discrepancy needs a sphere-plate scenario");
  if (!(s.temperature > 0.0)) throw ContractViolation("prescription_discrepancy requires T > 0");
  const auto drude = DielectricModel::drude(omega_p, gamma);
  const auto plasma = DielectricModel::plasma(omega_p);
  PrescriptionDiscrepancy out;
  out.drude = matsubara_force(s, drude, ZeroModePolicy::ModelNatural, quad);
  out.plasma = matsubara_force(s, plasma, ZeroModePolicy::ModelNatural, quad);
  out.value = out.drude.value - out.plasma.value;
  const auto& k = kConstants;
  const double a = s.separation;
  out.analytic_zero_mode_gap = k.zeta3 * s.radius() * k.k_B * s.temperature / (8.0 * a * a);
  const auto zm = zero_mode_integrals(s, plasma, ZeroModePolicy::ModelNatural, quad);
  out.plasma_te_zero_mode = std::abs(k.k_B * s.temperature * s.radius() / (4.0 * a * a) * 0.5 * zm.te);
  return out;
}

ComparisonReport validity_scan(const SweepSpec& sweep, double tol) {
  if (!(tol > 0.0)) throw ContractViolation("validity tolerance must be positive");
  sweep.validate();
  const auto& model = sweep.models.front();
  const auto policy = sweep.policies.front();
  const std::string unit = unit_suffix(sweep.scenario);

  ComparisonReport report;
  report.columns = {"matsubara" + unit, "perturbative" + unit, "asymptote" + unit, "rel_dev", "rel_dev_asymptote"};
  for (double a : sweep.separations) {
    const Scenario s = at_separation(sweep.scenario, a);
    ReportRow row;
    row.a = a;
    row.values.assign(report.columns.size(), std::nullopt);
    const double d0 = delta0_of(s, model);
    try {
      row.values[0] = thermal_force(s, model, policy, sweep.quad).value;
    } catch (const std::exception& e) {
      note(row.error, "matsubara", e);
    }
    try {
      row.values[1] = perturbative_force(s, d0).total;
    } catch (const std::exception& e) {
      note(row.error, "perturbative", e);
    }
    if (s.is_sphere_plate() && s.temperature > 0.0) row.values[2] = high_T_asymptote_pl(s, d0);
    if (row.values[0] && row.values[1]) row.values[3] = std::abs(*row.values[1] - *row.values[0]) / std::abs(*row.values[0]);
    if (row.values[0] && row.values[2]) row.values[4] = std::abs(*row.values[2] - *row.values[0]) / std::abs(*row.values[0]);
    report.rows.push_back(std::move(row));
  }

  std::size_t best_lo = 0, best_len = 0, run_lo = 0, run_len = 0;
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    const auto& dev = report.rows[i].values[3];
    if (dev && *dev < tol) {
      if (run_len == 0) run_lo = i;
      ++run_len;
      if (run_len > best_len) {
        best_len = run_len;
        best_lo = run_lo;
      }
    } else {
      run_len = 0;
    }
  }
  if (best_len > 0)
    report.band = std::make_pair(report.rows[best_lo].a, report.rows[best_lo + best_len - 1].a);
  report.metadata = sweep_metadata(sweep);
  report.metadata.emplace_back("model", model.label());
  report.metadata.emplace_back("policy", to_string(policy));
  std::ostringstream os;
  os << tol;
  report.metadata.emplace_back("tolerance", os.str());
  return report;
}

ComparisonReport figure1_curves(const SweepSpec& sweep) {
  sweep.validate();
  if (!sweep.scenario.is_sphere_plate()) throw ContractViolation("figure1_curves needs a sphere-plate scenario");
  const auto& model = sweep.models.front();
  const auto policy = sweep.policies.front();

  ComparisonReport report;
  report.columns = {"solid_matsubara_N", "dotted_perturbative_N", "dashed_zeroT_N", "deltaT_N"};
  for (double a : sweep.separations) {
    const Scenario s = at_separation(sweep.scenario, a);
    ReportRow row;
    row.a = a;
    row.values.assign(report.columns.size(), std::nullopt);
    try {
      row.values[0] = thermal_force(s, model, policy, sweep.quad).value;
    } catch (const std::exception& e) {
      note(row.error, "solid", e);
    }
    try {
      row.values[1] = perturbative_force_pl(s, delta0_of(s, model)).total;
    } catch (const std::exception& e) {
      note(row.error, "dotted", e);
    }
    try {
      row.values[2] = zero_temperature_force(s, model, sweep.quad).value;
    } catch (const std::exception& e) {
      note(row.error, "dashed", e);
    }
    if (row.values[0] && row.values[2]) row.values[3] = *row.values[0] - *row.values[2];
    report.rows.push_back(std::move(row));
  }
  report.metadata = sweep_metadata(sweep);
  report.metadata.emplace_back("model", model.label());
  report.metadata.emplace_back("policy", to_string(policy));
  return report;
}

SweepSpec figure1_defaults(std::vector<double> separations) {
  SweepSpec s;
  s.separations = std::move(separations);
  s.scenario = Scenario{SpherePlate{100e-6}, s.separations.empty() ? 1e-6 : s.separations.front(), 300.0};
  s.models = {DielectricModel::plasma(kAluminiumPlasmaFrequency)};
  s.policies = {ZeroModePolicy::SchwingerDeRaadMilton};
  return s;
}

}  // namespace casimir
