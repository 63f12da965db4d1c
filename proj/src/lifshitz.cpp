#include "casimir/lifshitz.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "casimir/error.hpp"
#include "casimir/quadrature.hpp"

namespace casimir {

void QuadratureSpec::validate() const {
  if (!(rel_tol >= 1e-13 && rel_tol <= 1e-3)) throw ContractViolation("rel_tol must lie in [1e-13, 1e-3]");
  if (!(abs_tol >= 0.0)) throw ContractViolation("abs_tol must be >= 0");
  if (max_subdivisions < 1) throw ContractViolation("max_subdivisions must be >= 1");
  if (!(tail_cut >= 0.0)) throw ContractViolation("tail_cut must be >= 0");
}

double QuadratureSpec::initial_tail_cut() const {
  return tail_cut > 0.0 ? tail_cut : std::log(100.0 / rel_tol);
}

std::string to_string(ZeroModePolicy policy) {
  return policy == ZeroModePolicy::SchwingerDeRaadMilton ? "sdm" : "natural";
}

ZeroModePolicy parse_zero_mode_policy(const std::string& text) {
  if (text == "sdm" || text == "schwinger") return ZeroModePolicy::SchwingerDeRaadMilton;
  if (text == "natural" || text == "model-natural") return ZeroModePolicy::ModelNatural;
  throw ContractViolation("unknown zero-mode policy '" + text + "' (expected sdm|natural)");
}

namespace {

// Reflectance magnitude r and its complement d = 1 - r, kept separately so
// that 1 - r^2 = d (1 + r) stays accurate when r is close to 1.
struct Reflectance {
  double r;
  double d;
  double one_minus_r2() const { return d * (1.0 + r); }
  static Reflectance perfect() { return {1.0, 0.0}; }
  static Reflectance none() { return {0.0, 1.0}; }
};

// TE reflectance from A = (eps - 1) x^2, which stays finite as x -> 0 for plasma-like media.
Reflectance te_reflectance(double A, double z) {
  if (A == 0.0) return Reflectance::none();
  const double K = std::sqrt(A + z * z);
  const double zk = z + K;
  return {A / (zk * zk), 2.0 * z / zk};
}

Reflectance tm_reflectance(double chi, double x, double z) {
  if (chi == 0.0) return Reflectance::none();
  const double eps = 1.0 + chi;
  const double K = std::sqrt(chi * x * x + z * z);
  if (chi > 1.0) {
    const double q = K / eps;
    return {(z - q) / (z + q), 2.0 * q / (z + q)};
  }
  const double den = z * eps + K;
  return {chi * ((eps + 1.0) * z * z - x * x) / (den * den), 2.0 * K / den};
}

struct ModePair {
  Reflectance tm;
  Reflectance te;
};

ModePair reflectances(double x, double z, const Permittivity& eps) {
  if (eps.is_infinite()) return {Reflectance::perfect(), Reflectance::perfect()};
  const double chi = eps.susceptibility();
  return {tm_reflectance(chi, x, z), te_reflectance(chi * x * x, z)};
}

// z^2 r^2 e^{-z} / (1 - r^2 e^{-z})
double pp_density(const Reflectance& m, double z) {
  if (m.r == 0.0) return 0.0;
  const double r2 = m.r * m.r;
  return z * z * r2 / (std::expm1(z) + m.one_minus_r2());
}

// z ln(1 - r^2 e^{-z})
double pl_density(const Reflectance& m, double z) {
  if (m.r == 0.0 || z == 0.0) return 0.0;
  const double r2 = m.r * m.r;
  if (z > 1.0) return z * std::log1p(-r2 * std::exp(-z));
  return z * (std::log(std::expm1(z) + m.one_minus_r2()) - z);
}

enum class Kind { Plates, SpherePlate };

Kind kind_of(const Scenario& s) { return s.is_sphere_plate() ? Kind::SpherePlate : Kind::Plates; }

// Envelope bound of int_{z0}^inf |integrand| dz with both reflectances set to 1.
double z_tail_bound(Kind kind, double z0) {
  const double e = std::exp(-z0);
  const double g = 1.0 / (-std::expm1(-z0));
  if (kind == Kind::Plates) return 2.0 * e * (z0 * z0 + 2.0 * z0 + 2.0) * g;
  return 2.0 * e * (z0 + 1.0) * g;
}

// Bound of int_X^inf |phi(x)| dx from the same envelope.
double x_tail_bound(Kind kind, double X) {
  const double e = std::exp(-X);
  const double g = 1.0 / (-std::expm1(-X));
  if (kind == Kind::Plates) return 2.0 * e * (X * X + 4.0 * X + 6.0) * g;
  return 2.0 * e * (X + 2.0) * g;
}

// Integrates density(z) over z in [x, inf) through z = x + u, extending the cut until
// the analytic tail envelope falls below rel_tol / 100 of the running value.
template <class Density>
PhiValue integrate_semi_infinite(Kind kind, double x, const QuadratureSpec& quad, double rel_tol, Density&& density) {
  PhiValue out;
  auto g = [&](double u) { return density(x + u); };
  double lo = 0.0;
  double hi = quad.initial_tail_cut();
  CompensatedSum value;
  CompensatedSum err;
  for (int round = 0;; ++round) {
    auto r = integrate(g, lo, hi, rel_tol, quad.abs_tol, quad.max_subdivisions);
    out.evaluations += r.evaluations;
    if (!r.converged) {
      std::ostringstream msg;
      msg << "z-quadrature did not converge at x = " << x << " on u in [" << lo << ", " << hi
          << "] after " << quad.max_subdivisions << " subdivisions";
      throw NumericError(msg.str(), value.value() + r.value, err.value() + r.error);
    }
    value.add(r.value);
    err.add(r.error);
    const double bound = z_tail_bound(kind, x + hi);
    if (bound <= std::max(quad.abs_tol, 0.01 * quad.rel_tol * std::abs(value.value())) || round > 40) {
      out.tail_bound = bound;
      break;
    }
    lo = hi;
    hi *= 2.0;
  }
  out.value = value.value();
  out.quadrature_error = err.value();
  return out;
}

double xi_of(double x, const Scenario& s) { return kConstants.c * x / (2.0 * s.separation); }

// TE response at x -> 0, as (eps - 1) x^2 in the limit. Negative means "ideal reflector".
constexpr double kPerfectTe = -1.0;

double te_zero_limit(const Scenario& s, const DielectricModel& model, ZeroModePolicy policy) {
  switch (zero_mode_class(model)) {
    case ZeroModeClass::TM_perfect_TE_perfect: return kPerfectTe;
    case ZeroModeClass::TM_perfect_TE_plasma: {
      const double wt = 2.0 * s.separation * *model.plasma_frequency() / kConstants.c;
      return wt * wt;
    }
    case ZeroModeClass::TM_perfect_TE_absent:
      return policy == ZeroModePolicy::SchwingerDeRaadMilton ? kPerfectTe : 0.0;
  }
  return 0.0;
}

Reflectance te_limit_reflectance(double limit, double z) {
  return limit == kPerfectTe ? Reflectance::perfect() : te_reflectance(limit, z);
}

PhiValue phi_detailed(Kind kind, double x, const Scenario& s, const DielectricModel& model,
                      const QuadratureSpec& quad, double rel_tol) {
  if (!(x >= 0.0) || !std::isfinite(x)) throw ContractViolation("phi evaluated at x < 0");
  auto density = [kind](const ModePair& m, double z) {
    return kind == Kind::Plates ? pp_density(m.tm, z) + pp_density(m.te, z)
                                : pl_density(m.tm, z) + pl_density(m.te, z);
  };
  if (x == 0.0) {
    if (model.is_drude())
      throw ContractViolation("phi at x = 0 is undefined for the Drude model; use zero_mode_term");
    const double te = te_zero_limit(s, model, ZeroModePolicy::ModelNatural);
    return integrate_semi_infinite(kind, 0.0, quad, rel_tol, [&](double z) {
      return density({Reflectance::perfect(), te_limit_reflectance(te, z)}, z);
    });
  }
  const Permittivity eps = permittivity(model, xi_of(x, s));
  return integrate_semi_infinite(kind, x, quad, rel_tol,
                                 [&](double z) { return density(reflectances(x, z, eps), z); });
}

double prefactor_thermal(const Scenario& s) {
  const auto& k = kConstants;
  const double a = s.separation;
  const double kT = k.k_B * s.temperature;
  if (s.is_sphere_plate()) return kT * s.radius() / (4.0 * a * a);
  return -kT / (8.0 * kPi * a * a * a);
}

}  // namespace

ReflectionSquares reflection_squares(double x, double z, const Permittivity& eps) {
  if (!(x > 0.0)) throw ContractViolation("reflection_squares requires x > 0");
  if (!(z >= x)) throw ContractViolation("reflection_squares requires z >= x");
  if (!eps.is_infinite() && !(eps.susceptibility() >= 0.0)) throw ContractViolation("eps must be >= 1");
  const auto m = reflectances(x, z, eps);
  auto q = [z](const Reflectance& r) {
    if (r.r == 0.0) return std::numeric_limits<double>::infinity();
    return (std::expm1(z) + r.one_minus_r2()) / (r.r * r.r);
  };
  return {q(m.tm), q(m.te)};
}

PhiValue phi_pp_detailed(double x, const Scenario& s, const DielectricModel& model, const QuadratureSpec& quad) {
  quad.validate();
  return phi_detailed(Kind::Plates, x, s, model, quad, quad.rel_tol);
}

PhiValue phi_pl_detailed(double x, const Scenario& s, const DielectricModel& model, const QuadratureSpec& quad) {
  quad.validate();
  return phi_detailed(Kind::SpherePlate, x, s, model, quad, quad.rel_tol);
}

double phi_pp(double x, const Scenario& s, const DielectricModel& model, const QuadratureSpec& quad) {
  return phi_pp_detailed(x, s, model, quad).value;
}

double phi_pl(double x, const Scenario& s, const DielectricModel& model, const QuadratureSpec& quad) {
  return phi_pl_detailed(x, s, model, quad).value;
}

ZeroModeIntegrals zero_mode_integrals(const Scenario& s, const DielectricModel& model, ZeroModePolicy policy,
                                      const QuadratureSpec& quad) {
  s.validate();
  quad.validate();
  const Kind kind = kind_of(s);
  auto one = [kind](const Reflectance& m, double z) {
    return kind == Kind::Plates ? pp_density(m, z) : pl_density(m, z);
  };
  const double te_limit = te_zero_limit(s, model, policy);
  const double tol = quad.rel_tol / 4.0;
  auto tm = integrate_semi_infinite(kind, 0.0, quad, tol, [&](double z) { return one(Reflectance::perfect(), z); });
  ZeroModeIntegrals out;
  out.tm = tm.value;
  out.error = tm.quadrature_error + tm.tail_bound;
  if (te_limit != 0.0) {
    auto te = integrate_semi_infinite(kind, 0.0, quad, tol,
                                      [&](double z) { return one(te_limit_reflectance(te_limit, z), z); });
    out.te = te.value;
    out.error += te.quadrature_error + te.tail_bound;
  }
  return out;
}

ForceResult zero_mode_term(const Scenario& s, const DielectricModel& model, ZeroModePolicy policy,
                           const QuadratureSpec& quad) {
  s.validate();
  if (!(s.temperature > 0.0)) throw ContractViolation("zero_mode_term requires T > 0");
  const auto zm = zero_mode_integrals(s, model, policy, quad);
  const double pref = prefactor_thermal(s);
  ForceResult out;
  out.value = pref * 0.5 * (zm.tm + zm.te);
  out.zero_mode_contribution = out.value;
  out.n_terms_used = 1;
  out.quadrature_error = std::abs(pref) * 0.5 * zm.error;
  out.truncation_estimate = out.quadrature_error;
  return out;
}

ForceResult matsubara_force(const Scenario& s, const DielectricModel& model, ZeroModePolicy policy,
                            const QuadratureSpec& quad, const MatsubaraOptions& options) {
  s.validate();
  quad.validate();
  if (!(s.temperature > 0.0))
    throw ContractViolation("matsubara_force requires T > 0; use zero_temperature_force at T = 0");
  const Kind kind = kind_of(s);
  const double tau = derive_scales(s, model).tau;
  const double pref = prefactor_thermal(s);
  const double term_tol = quad.rel_tol / 4.0;

  CompensatedSum sum;
  CompensatedSum quad_err;
  CompensatedSum tail;
  ForceResult out;

  if (options.include_zero_mode) {
    const auto zm = zero_mode_integrals(s, model, policy, quad);
    const double half = 0.5 * (zm.tm + zm.te);
    sum.add(half);
    quad_err.add(0.5 * zm.error);
    out.zero_mode_contribution = pref * half;
  }
  out.n_terms_used = 1;

  const double geometric = 1.0 / std::expm1(tau);
  double remainder = 0.0;
  for (int n = 1;; ++n) {
    if (n > options.max_terms) {
      std::ostringstream msg;
      msg << "Matsubara sum not converged after " << options.max_terms << " terms (tau = " << tau << ")";
      throw NumericError(msg.str(), pref * sum.value(), std::abs(pref) * remainder);
    }
    PhiValue term;
    try {
      term = phi_detailed(kind, n * tau, s, model, quad, term_tol);
    } catch (const NumericError& e) {
      std::ostringstream msg;
      msg << "Matsubara term n = " << n << ": " << e.what();
      throw NumericError(msg.str(), pref * (sum.value() + e.partial_value()), std::abs(pref) * e.error_estimate());
    }
    sum.add(term.value);
    quad_err.add(term.quadrature_error);
    tail.add(term.tail_bound);
    out.quadrature_evaluations += term.evaluations;
    out.n_terms_used = n + 1;
    const double partial = std::abs(sum.value());
    const double mag = std::abs(term.value);
    remainder = mag * geometric;
    if (mag <= quad.rel_tol * partial / 10.0 && remainder <= 0.5 * quad.rel_tol * partial) break;
  }

  out.value = pref * sum.value();
  out.quadrature_error = std::abs(pref) * quad_err.value();
  out.tail_bound = std::abs(pref) * tail.value();
  out.series_remainder = std::abs(pref) * remainder;
  out.truncation_estimate = out.quadrature_error + out.tail_bound + out.series_remainder;
  return out;
}

ForceResult zero_temperature_force(const Scenario& s, const DielectricModel& model, const QuadratureSpec& quad) {
  s.validate();
  quad.validate();
  const auto& k = kConstants;
  const Kind kind = kind_of(s);
  const double a = s.separation;
  const double pref = kind == Kind::Plates ? -k.hbar * k.c / (32.0 * kPi * kPi * a * a * a * a)
                                           : k.hbar * k.c * s.radius() / (16.0 * kPi * a * a * a);
  const double inner_tol = std::max(quad.rel_tol / 10.0, 1e-14);
  const double outer_tol = quad.rel_tol / 2.0;

  int evaluations = 0;
  auto phi = [&](double x) {
    auto v = phi_detailed(kind, x, s, model, quad, inner_tol);
    evaluations += v.evaluations;
    return v.value;
  };

  CompensatedSum value;
  CompensatedSum err;
  double lo = 0.0;
  double hi = quad.initial_tail_cut();
  double bound = 0.0;
  for (int round = 0;; ++round) {
    auto r = integrate(phi, lo, hi, outer_tol, quad.abs_tol, quad.max_subdivisions);
    if (!r.converged) {
      std::ostringstream msg;
      msg << "x-quadrature of the zero-temperature force did not converge on [" << lo << ", " << hi << "]";
      throw NumericError(msg.str(), pref * (value.value() + r.value), std::abs(pref) * (err.value() + r.error));
    }
    value.add(r.value);
    err.add(r.error);
    bound = x_tail_bound(kind, hi);
    if (bound <= std::max(quad.abs_tol, 0.01 * quad.rel_tol * std::abs(value.value())) || round > 40) break;
    lo = hi;
    hi *= 2.0;
  }

  ForceResult out;
  out.value = pref * value.value();
  out.n_terms_used = 0;
  out.quadrature_error = std::abs(pref) * (err.value() + inner_tol * std::abs(value.value()));
  out.tail_bound = std::abs(pref) * bound;
  out.truncation_estimate = out.quadrature_error + out.tail_bound;
  out.quadrature_evaluations = evaluations;
  return out;
}

}  // namespace casimir
