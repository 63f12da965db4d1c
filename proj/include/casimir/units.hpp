#pragma once

#include <optional>
#include <string>
#include <variant>

namespace casimir {

// CODATA 2018 exact / recommended values.
struct PhysicalConstants {
  double hbar = 1.054571817e-34;  // J s
  double c = 299792458.0;         // m / s
  double k_B = 1.380649e-23;      // J / K
  double zeta3 = 1.2020569031595942853997381615114;
};

inline constexpr PhysicalConstants kConstants{};
inline constexpr double kPi = 3.141592653589793238462643383279502884;

struct ParallelPlates {};
struct SpherePlate {
  double radius;  // m
};
using Geometry = std::variant<ParallelPlates, SpherePlate>;

/// Ratio R/a below which the proximity force approximation is flagged.
inline constexpr double kPfaMinRatio = 20.0;

struct Scenario {
  Geometry geometry = ParallelPlates{};
  double separation = 1e-6;   // a, m
  double temperature = 300.0; // T, K

  bool is_sphere_plate() const { return std::holds_alternative<SpherePlate>(geometry); }
  /// Sphere radius; throws ContractViolation for plates.
  double radius() const;
  /// True when the sphere is not large enough for the PFA (R/a < 20).
  bool pfa_warning() const;

  /// Throws ContractViolation on a <= 0, T < 0, R <= 0 or non-finite input.
  void validate() const;
};

Scenario make_plates(double a, double T);
Scenario make_sphere_plate(double a, double T, double R);

class DielectricModel;

/// Dimensionless parameters of a scenario/material pair.
struct DerivedScales {
  double T_eff;          // K, k_B T_eff = hbar c / (2a)
  double tau;            // 2 pi T / T_eff, spacing of x_n
  double omega_p_tilde;  // 2 a omega_p / c; +inf for a perfect conductor
  double alpha;          // 1 / omega_p_tilde = delta0 / (2a)
  double delta0;         // c / omega_p, m
  double lambda_p;       // 2 pi c / omega_p, m; 0 for a perfect conductor

  double t_ratio(double T) const { return T / T_eff; }
  double delta_ratio(double a) const { return delta0 / a; }
};

/// Effective temperature hbar c / (2 a k_B).
double effective_temperature(double a);

DerivedScales derive_scales(const Scenario& scenario, const DielectricModel& model);

}  // namespace casimir
