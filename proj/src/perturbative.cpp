#include "casimir/perturbative.hpp"

#include <cmath>
#include <sstream>

#include "casimir/error.hpp"

namespace casimir {

namespace {

constexpr double pi2 = kPi * kPi;
constexpr double pi3 = pi2 * kPi;
constexpr double pi4 = pi2 * pi2;

void check_bounds(double t, double d, bool enforce) {
  if (!(d >= 0.0)) throw ContractViolation("delta0 must be >= 0");
  if (!enforce) return;
  if (!(d < kMaxDeltaRatio)) {
    std::ostringstream msg;
    msg << "delta0/a = " << d << " outside the series range delta0/a < " << kMaxDeltaRatio;
    throw ValidityError("delta0/a", msg.str());
  }
  if (!(t < kMaxTemperatureRatio)) {
    std::ostringstream msg;
    msg << "T/T_eff = " << t << " outside the low-temperature range T/T_eff < " << kMaxTemperatureRatio;
    throw ValidityError("T/T_eff", msg.str());
  }
}

void finish(PerturbativeBreakdown& b) {
  double sum = b.ideal + b.thermal_ideal;
  for (double v : b.conductivity_terms) sum += v;
  b.total = sum + b.cross_terms;
}

}  // namespace

SeriesCoefficients series_coefficients() {
  SeriesCoefficients s;
  s.c[0] = 24.0;
  s.c[1] = -640.0 / 7.0 * (1.0 - pi2 / 210.0);
  s.c[2] = 2800.0 / 9.0 * (1.0 - 163.0 * pi2 / 7350.0);
  s.c[3] = -10752.0 / 11.0 * (1.0 - 305.0 * pi2 / 5292.0 + 379.0 * pi4 / 1693440.0);
  s.c[4] = 37632.0 / 13.0 * (1.0 - 1135.0 * pi2 / 9720.0 + 2879.0 * pi4 / 1358280.0);
  for (int i = 2; i <= 6; ++i) s.c_tilde[i - 2] = 3.0 * s.c[i - 2] / (3.0 + i);
  return s;
}

double ideal_force(const Scenario& scenario) {
  scenario.validate();
  const auto& k = kConstants;
  const double a = scenario.separation;
  if (scenario.is_sphere_plate()) return -pi3 * k.hbar * k.c * scenario.radius() / (360.0 * a * a * a);
  return -pi2 * k.hbar * k.c / (240.0 * a * a * a * a);
}

double PerturbativeBreakdown::zero_temperature() const {
  double sum = ideal;
  for (double v : conductivity_terms) sum += v;
  return sum;
}

PerturbativeBreakdown perturbative_force_pp(const Scenario& scenario, double delta0, bool enforce_validity) {
  if (scenario.is_sphere_plate()) throw ContractViolation("perturbative_force_pp needs a plate-plate scenario");
  const double a = scenario.separation;
  const double t = scenario.temperature / effective_temperature(a);
  const double d = delta0 / a;
  check_bounds(t, d, enforce_validity);

  const auto coeffs = series_coefficients();
  const double zeta3 = kConstants.zeta3;
  const double t3 = t * t * t;
  const double t4 = t3 * t;

  PerturbativeBreakdown b;
  b.t_ratio = t;
  b.delta_ratio = d;
  b.ideal = ideal_force(scenario);
  b.thermal_ideal = b.ideal * t4 / 3.0;
  b.conductivity_terms[0] = b.ideal * (-16.0 / 3.0) * d;
  double dp = d;
  for (int i = 2; i <= 6; ++i) {
    dp *= d;
    b.conductivity_terms[i - 1] = b.ideal * coeffs.c_at(i) * dp;
  }
  b.cross_terms = b.ideal * (16.0 / 3.0) * d * (45.0 * zeta3 / (8.0 * pi3)) * t3;
  finish(b);
  return b;
}

PerturbativeBreakdown perturbative_force_pl(const Scenario& scenario, double delta0, bool enforce_validity) {
  if (!scenario.is_sphere_plate()) throw ContractViolation("perturbative_force_pl needs a sphere-plate scenario");
  const double a = scenario.separation;
  const double t = scenario.temperature / effective_temperature(a);
  const double d = delta0 / a;
  check_bounds(t, d, enforce_validity);

  const auto coeffs = series_coefficients();
  const double k3 = 45.0 * kConstants.zeta3 / pi3;
  const double t3 = t * t * t;
  const double t4 = t3 * t;

  PerturbativeBreakdown b;
  b.t_ratio = t;
  b.delta_ratio = d;
  b.ideal = ideal_force(scenario);
  b.thermal_ideal = b.ideal * (k3 * t3 - t4);
  b.conductivity_terms[0] = b.ideal * (-4.0) * d;
  double dp = d;
  for (int i = 2; i <= 6; ++i) {
    dp *= d;
    b.conductivity_terms[i - 1] = b.ideal * coeffs.c_tilde_at(i) * dp;
  }
  // -4 d [ -(k3/2) t^3 + t^4 ]
  b.cross_terms = b.ideal * (-4.0 * d) * (-0.5 * k3 * t3 + t4);
  finish(b);
  return b;
}

PerturbativeBreakdown perturbative_force(const Scenario& scenario, double delta0, bool enforce_validity) {
  return scenario.is_sphere_plate() ? perturbative_force_pl(scenario, delta0, enforce_validity)
                                    : perturbative_force_pp(scenario, delta0, enforce_validity);
}

double high_T_asymptote_pl(const Scenario& scenario, double delta0) {
  if (!scenario.is_sphere_plate()) throw ContractViolation("high_T_asymptote_pl needs a sphere-plate scenario");
  scenario.validate();
  if (!(scenario.temperature > 0.0)) throw ContractViolation("high_T_asymptote_pl requires T > 0");
  const auto& k = kConstants;
  const double a = scenario.separation;
  return -k.zeta3 * scenario.radius() * k.k_B * scenario.temperature / (4.0 * a * a) * (1.0 - 2.0 * delta0 / a);
}

bool high_T_asymptote_in_validity(const Scenario& scenario, double delta0) {
  return delta0 / scenario.separation < kMaxDeltaRatio;
}

}  // namespace casimir
