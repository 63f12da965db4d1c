#pragma once

#include <string>

#include "casimir/dielectric.hpp"
#include "casimir/units.hpp"

namespace casimir {

/// Q1 (TM) and Q2 (TE) of the Lifshitz formula at dimensionless (x, z).
/// A non-reflecting interface gives Q = +infinity (1/Q = 0).
struct ReflectionSquares {
  double Q1;
  double Q2;
};

struct QuadratureSpec {
  double rel_tol = 1e-10;
  double abs_tol = 0.0;
  int max_subdivisions = 1000;
  /// Initial cut u of the z = x + u substitution; 0 selects ln(100 / rel_tol).
  double tail_cut = 0.0;

  /// Throws ContractViolation when rel_tol is outside [1e-13, 1e-3].
  void validate() const;
  double initial_tail_cut() const;
};

enum class ZeroModePolicy {
  /// Take eps -> infinity before xi -> 0 (ideal-metal TE zero mode). Plasma-like
  /// models already satisfy this through their own limit.
  SchwingerDeRaadMilton,
  /// Use whatever the dielectric model gives at xi -> 0; Drude loses the TE zero mode.
  ModelNatural,
};

std::string to_string(ZeroModePolicy policy);
/// Accepts "sdm", "schwinger", "natural", "model-natural" (case-sensitive).
ZeroModePolicy parse_zero_mode_policy(const std::string& text);

/// Force per unit area (plates, N/m^2) or force (sphere-plate, N) with diagnostics.
struct ForceResult {
  double value = 0.0;
  int n_terms_used = 0;
  /// Bound on the discarded parts: quadrature error, z/x tail envelope, Matsubara remainder.
  double truncation_estimate = 0.0;
  /// n = 0 summand including its 1/2 weight, in the same units as value.
  double zero_mode_contribution = 0.0;
  double quadrature_error = 0.0;
  double tail_bound = 0.0;
  double series_remainder = 0.0;
  int quadrature_evaluations = 0;
};

/// Dimensionless integral with its error budget.
struct PhiValue {
  double value = 0.0;
  double quadrature_error = 0.0;
  double tail_bound = 0.0;
  int evaluations = 0;
};

ReflectionSquares reflection_squares(double x, double z, const Permittivity& eps);

/// phi_pp(x) = int_x^inf z^2 (1/Q1 + 1/Q2) dz.
///
/// eps is taken at xi = c x / (2a). At x = 0 the model's x -> 0 limit is used,
/// which is only defined for ideal and plasma-like models; Drude at x = 0
/// throws ContractViolation (use zero_mode_term).
double phi_pp(double x, const Scenario& scenario, const DielectricModel& model,
              const QuadratureSpec& quad = {});

/// phi_pl(x) = int_x^inf z ln[Q1 Q2 / ((Q1 + 1)(Q2 + 1))] dz, always <= 0.
double phi_pl(double x, const Scenario& scenario, const DielectricModel& model,
              const QuadratureSpec& quad = {});

PhiValue phi_pp_detailed(double x, const Scenario& scenario, const DielectricModel& model,
                         const QuadratureSpec& quad);
PhiValue phi_pl_detailed(double x, const Scenario& scenario, const DielectricModel& model,
                         const QuadratureSpec& quad);

/// Weighted n = 0 Matsubara summand in physical units (N/m^2 for plates, N for sphere-plate).
ForceResult zero_mode_term(const Scenario& scenario, const DielectricModel& model, ZeroModePolicy policy,
                           const QuadratureSpec& quad = {});

/// Dimensionless n = 0 integral (phi_pp or phi_pl at x -> 0) before the 1/2 weight,
/// split by polarization.
struct ZeroModeIntegrals {
  double tm = 0.0;
  double te = 0.0;
  double error = 0.0;
};
ZeroModeIntegrals zero_mode_integrals(const Scenario& scenario, const DielectricModel& model,
                                      ZeroModePolicy policy, const QuadratureSpec& quad = {});

/// Options that only exist for diagnostics and tests.
struct MatsubaraOptions {
  bool include_zero_mode = true;
  int max_terms = 2'000'000;
};

/// Finite-temperature Lifshitz force; requires T > 0.
ForceResult matsubara_force(const Scenario& scenario, const DielectricModel& model,
                            ZeroModePolicy policy = ZeroModePolicy::SchwingerDeRaadMilton,
                            const QuadratureSpec& quad = {}, const MatsubaraOptions& options = {});

/// T = 0 Lifshitz force: the Matsubara sum replaced by an integral over x.
ForceResult zero_temperature_force(const Scenario& scenario, const DielectricModel& model,
                                   const QuadratureSpec& quad = {});

}  // namespace casimir
