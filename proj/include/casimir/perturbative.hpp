#pragma once

#include <array>

#include "casimir/units.hpp"

namespace casimir {

/// Conductivity-series coefficients c_i and the sphere-plate c~_i = 3 c_i / (3 + i), i = 2..6.
struct SeriesCoefficients {
  std::array<double, 5> c{};
  std::array<double, 5> c_tilde{};

  double c_at(int i) const { return c.at(static_cast<std::size_t>(i - 2)); }
  double c_tilde_at(int i) const { return c_tilde.at(static_cast<std::size_t>(i - 2)); }
};

/// Evaluated from the closed forms on every call.
SeriesCoefficients series_coefficients();

/// Ideal-metal T = 0 force: -pi^2 hbar c / (240 a^4) for plates (N/m^2),
/// -pi^3 hbar c R / (360 a^3) for sphere-plate (N).
double ideal_force(const Scenario& scenario);

/// Decomposition of the perturbative force. All parts are in force units and
/// total = ideal + thermal_ideal + sum(conductivity_terms) + cross_terms.
struct PerturbativeBreakdown {
  double ideal = 0.0;
  /// Pure temperature corrections of the ideal metal.
  double thermal_ideal = 0.0;
  /// Orders (delta0/a)^1 .. (delta0/a)^6 at T = 0; index 0 is the first order.
  std::array<double, 6> conductivity_terms{};
  /// Mixed temperature / first-order conductivity terms.
  double cross_terms = 0.0;
  double total = 0.0;

  double t_ratio = 0.0;      // T / T_eff
  double delta_ratio = 0.0;  // delta0 / a

  /// Everything that vanishes at T = 0.
  double thermal() const { return thermal_ideal + cross_terms; }
  /// The T = 0 part of the series.
  double zero_temperature() const;
};

/// Series validity: delta0 / a < 1/4, T / T_eff < 1.
inline constexpr double kMaxDeltaRatio = 0.25;
inline constexpr double kMaxTemperatureRatio = 1.0;

/// Plates pressure to sixth order in delta0/a with thermal corrections.
/// Throws ValidityError (bound "delta0/a" or "T/T_eff") outside the bounds
/// unless enforce_validity is false.
PerturbativeBreakdown perturbative_force_pp(const Scenario& scenario, double delta0, bool enforce_validity = true);

/// Sphere-plate force to sixth order in delta0/a with thermal corrections.
PerturbativeBreakdown perturbative_force_pl(const Scenario& scenario, double delta0, bool enforce_validity = true);

/// Dispatches on the scenario geometry.
PerturbativeBreakdown perturbative_force(const Scenario& scenario, double delta0, bool enforce_validity = true);

/// Large-separation sphere-plate asymptote -zeta(3) R k_B T (1 - 2 delta0/a) / (4 a^2).
double high_T_asymptote_pl(const Scenario& scenario, double delta0);

/// The asymptote's own first-order expansion is meaningful only for delta0/a < 1/4.
bool high_T_asymptote_in_validity(const Scenario& scenario, double delta0);

}  // namespace casimir
