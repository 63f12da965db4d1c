#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "casimir/dielectric.hpp"
#include "casimir/lifshitz.hpp"
#include "casimir/units.hpp"

namespace casimir {

/// Separations accepted by sweeps, m.
inline constexpr double kMinSweepSeparation = 10e-9;
inline constexpr double kMaxSweepSeparation = 100e-6;

/// count points from start to stop inclusive, linear or logarithmic.
std::vector<double> make_grid(double start, double stop, int count, bool logarithmic);

enum class Method { Matsubara, ZeroT, Perturbative, Asymptote, DeltaT };

std::string to_string(Method m);
Method parse_method(const std::string& text);

struct SweepSpec {
  std::vector<double> separations;
  /// Geometry and temperature; the separation field is overwritten per row.
  Scenario scenario;
  std::vector<DielectricModel> models;
  std::vector<ZeroModePolicy> policies{ZeroModePolicy::SchwingerDeRaadMilton};
  std::vector<Method> methods{Method::Matsubara};
  QuadratureSpec quad;

  /// Non-empty, strictly increasing grid inside [10 nm, 100 um]; at least one model/policy/method.
  void validate() const;
};

struct ReportRow {
  double a = 0.0;
  /// One entry per report column; nullopt marks a failed or out-of-validity cell.
  std::vector<std::optional<double>> values;
  /// Empty when every cell succeeded.
  std::string error;
};

struct ComparisonReport {
  std::vector<std::string> columns;
  std::vector<ReportRow> rows;
  std::vector<std::pair<std::string, std::string>> metadata;
  /// Contiguous separation band [lo, hi] found by validity_scan.
  std::optional<std::pair<double, double>> band;

  /// Index of a column; throws std::out_of_range when absent.
  std::size_t column(const std::string& name) const;
  std::optional<double> at(std::size_t row, const std::string& name) const;
};

/// Runs every (model, policy, method) combination at every separation.
/// Column names are "<method>[<model>|<policy>]<unit>" for policy-dependent methods and
/// "<method>[<model>]<unit>" otherwise, with unit "_N" or "_Pa"; forces in SI units.
ComparisonReport run_sweep(const SweepSpec& sweep);

struct DeltaT {
  double value = 0.0;
  ForceResult thermal;
  ForceResult zero_temperature;
};

/// F(T) - F(T = 0) for the same model.
DeltaT delta_T_force(const Scenario& scenario, const DielectricModel& model, ZeroModePolicy policy,
                     const QuadratureSpec& quad = {});

struct PrescriptionDiscrepancy {
  /// F_Drude(ModelNatural) - F_plasma(ModelNatural), N. Positive: Drude is less attractive.
  double value = 0.0;
  ForceResult drude;
  ForceResult plasma;
  /// zeta(3) R k_B T / (8 a^2): magnitude of an ideal TE zero mode.
  double analytic_zero_mode_gap = 0.0;
  /// Magnitude of the plasma-model TE zero mode actually dropped by the Drude model.
  double plasma_te_zero_mode = 0.0;
};

/// Sphere-plate only; requires T > 0.
PrescriptionDiscrepancy prescription_discrepancy(const Scenario& scenario, double omega_p, double gamma,
                                                 const QuadratureSpec& quad = {});

/// Compares the perturbative series with the Matsubara sum for the first model and
/// policy of the sweep. Adds "rel_dev" and reports the widest contiguous band of rows
/// with rel_dev < tol.
ComparisonReport validity_scan(const SweepSpec& sweep, double tol);

/// Solid (Matsubara), dotted (perturbative) and dashed (zero temperature) curves
/// for the first model of the sweep; sphere-plate only.
ComparisonReport figure1_curves(const SweepSpec& sweep);

/// Defaults of the figure: Al plasma, T = 300 K, R = 100 um.
SweepSpec figure1_defaults(std::vector<double> separations);

}  // namespace casimir
