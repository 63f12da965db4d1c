#include "casimir/units.hpp"

#include <cmath>
#include <limits>

#include "casimir/dielectric.hpp"
#include "casimir/error.hpp"

namespace casimir {

double Scenario::radius() const {
  if (const auto* s = std::get_if<SpherePlate>(&geometry)) return s->radius;
  throw ContractViolation("plate-plate scenario has no sphere radius");
}

bool Scenario::pfa_warning() const {
  return is_sphere_plate() && radius() / separation < kPfaMinRatio;
}

void Scenario::validate() const {
  if (!(separation > 0.0) || !std::isfinite(separation))
    throw ContractViolation("separation must be positive and finite");
  if (!(temperature >= 0.0) || !std::isfinite(temperature))
    throw ContractViolation("temperature must be non-negative and finite");
  if (is_sphere_plate()) {
    double R = radius();
    if (!(R > 0.0) || !std::isfinite(R)) throw ContractViolation("sphere radius must be positive");
  }
}

Scenario make_plates(double a, double T) {
  Scenario s{ParallelPlates{}, a, T};
  s.validate();
  return s;
}

Scenario make_sphere_plate(double a, double T, double R) {
  Scenario s{SpherePlate{R}, a, T};
  s.validate();
  return s;
}

double effective_temperature(double a) {
  if (!(a > 0.0)) throw ContractViolation("separation must be positive");
  const auto& k = kConstants;
  return k.hbar * k.c / (2.0 * a * k.k_B);
}

DerivedScales derive_scales(const Scenario& scenario, const DielectricModel& model) {
  scenario.validate();
  const auto& k = kConstants;
  const double a = scenario.separation;

  DerivedScales d{};
  d.T_eff = effective_temperature(a);
  d.tau = 2.0 * kPi * scenario.temperature / d.T_eff;

  if (auto wp = model.plasma_frequency()) {
    d.omega_p_tilde = 2.0 * a * *wp / k.c;
    d.alpha = 1.0 / d.omega_p_tilde;
    d.delta0 = k.c / *wp;
    d.lambda_p = 2.0 * kPi * k.c / *wp;
  } else {
    d.omega_p_tilde = std::numeric_limits<double>::infinity();
    d.alpha = 0.0;
    d.delta0 = 0.0;
    d.lambda_p = 0.0;
  }
  return d;
}

}  // namespace casimir
