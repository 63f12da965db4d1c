#include "casimir/repro.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "casimir/error.hpp"
#include "casimir/perturbative.hpp"

namespace casimir::cli {

namespace {

constexpr double kPico = 1e12;

class Checker {
 public:
  explicit Checker(std::ostream& out) : out_(out) {}

  void band(const std::string& name, double measured, double lo, double hi, const char* unit = "") {
    record(name, measured >= lo && measured <= hi, measured, unit, "[" + num(lo) + ", " + num(hi) + "]");
  }
  void below(const std::string& name, double measured, double limit, const char* unit = "") {
    record(name, measured < limit, measured, unit, "< " + num(limit));
  }
  void exact(const std::string& name, bool ok, double measured) { record(name, ok, measured, "", "exact"); }
  void info(const std::string& line) { out_ << "      " << line << '\n'; }

  bool all_passed() const { return failures_ == 0; }

  static std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
  }

 private:
  void record(const std::string& name, bool ok, double measured, const char* unit, const std::string& band) {
    out_ << (ok ? "PASS  " : "FAIL  ") << name << ": measured " << num(measured) << unit << ", band " << band << unit
         << '\n';
    if (!ok) ++failures_;
  }

  std::ostream& out_;
  int failures_ = 0;
};

Scenario al_sphere(double a) { return make_sphere_plate(a, 300.0, 100e-6); }

bool study_high_t(const QuadratureSpec& quad, std::ostream& out) {
  Checker check(out);
  const auto s = al_sphere(6e-6);
  const auto perfect = DielectricModel::perfect_conductor();
  const double f0 = ideal_force(s);
  const double asym = high_T_asymptote_pl(s, 0.0);
  const auto mats = matsubara_force(s, perfect, ZeroModePolicy::SchwingerDeRaadMilton, quad);
  check.info("perfect conductor, a = 6 um, T = 300 K, R = 100 um");
  check.info("F0 = " + Checker::num(f0 * kPico) + " pN, asymptote = " + Checker::num(asym * kPico) +
             " pN, Matsubara = " + Checker::num(mats.value * kPico) + " pN");
  check.band("thermal excess (asymptote)", 100.0 * (std::abs(asym) / std::abs(f0) - 1.0), 170.0, 178.0, "%");
  check.band("thermal excess (Matsubara)", 100.0 * (std::abs(mats.value) / std::abs(f0) - 1.0), 170.0, 178.0, "%");
  return check.all_passed();
}

bool study_coeffs(std::ostream& out) {
  Checker check(out);
  const auto c = series_coefficients();
  for (int i = 2; i <= 6; ++i) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "c_%d = %.15g   c~_%d = %.15g", i, c.c_at(i), i, c.c_tilde_at(i));
    check.info(buf);
  }
  check.exact("c_2 == 24", c.c_at(2) == 24.0, c.c_at(2));
  for (int i = 2; i <= 6; ++i) {
    const double lhs = c.c_tilde_at(i) * (3.0 + i);
    const double rhs = 3.0 * c.c_at(i);
    const double rel = std::abs(lhs - rhs) / std::abs(rhs);
    check.below("c~_" + std::to_string(i) + " (3+i) vs 3 c_" + std::to_string(i) + " (relative)", rel, 4e-16);
  }
  const bool alternating = c.c_at(2) > 0 && c.c_at(3) < 0 && c.c_at(4) > 0 && c.c_at(5) < 0 && c.c_at(6) > 0;
  check.exact("alternating signs", alternating, alternating ? 1.0 : 0.0);
  return check.all_passed();
}

bool study_drude(const QuadratureSpec& quad, std::ostream& out) {
  Checker check(out);
  const auto plasma = DielectricModel::plasma(kAluminiumPlasmaFrequency);
  const auto drude = DielectricModel::drude(kAluminiumPlasmaFrequency, kAluminiumDrudeGamma);
  check.info("Al, omega_p = 1.92e16 rad/s, gamma = 9.6e13 rad/s, T = 300 K, R = 100 um");
  for (double a : {0.1e-6, 0.095e-6, 0.09e-6}) {
    const auto s = al_sphere(a);
    const auto dt_plasma = delta_T_force(s, plasma, ZeroModePolicy::SchwingerDeRaadMilton, quad);
    const auto dt_drude = delta_T_force(s, drude, ZeroModePolicy::ModelNatural, quad);
    const auto gap = prescription_discrepancy(s, kAluminiumPlasmaFrequency, kAluminiumDrudeGamma, quad);
    const std::string at = "a = " + Checker::num(a * 1e6) + " um";
    check.info(at + ": dT plasma = " + Checker::num(dt_plasma.value * kPico) +
               " pN, dT Drude(natural) = " + Checker::num(dt_drude.value * kPico) +
               " pN, Drude - plasma = " + Checker::num(gap.value * kPico) +
               " pN, zeta(3)RkT/(8a^2) = " + Checker::num(gap.analytic_zero_mode_gap * kPico) + " pN");
    check.band("|dT Drude| " + at, std::abs(dt_drude.value) * kPico, 2.5, 8.5, " pN");
    check.below("gap vs zero-mode value " + at,
                std::abs(std::abs(gap.value) - gap.analytic_zero_mode_gap) / gap.analytic_zero_mode_gap, 0.25);
  }
  return check.all_passed();
}

bool study_fig1(const QuadratureSpec& quad, std::ostream& out, ComparisonReport* dataset) {
  Checker check(out);
  auto sweep = figure1_defaults(make_grid(0.1e-6, 6e-6, 60, true));
  sweep.quad = quad;
  auto report = figure1_curves(sweep);
  if (dataset) *dataset = report;

  const auto model = sweep.models.front();
  auto point = [&](double a) {
    auto sp = sweep;
    sp.separations = {a};
    return figure1_curves(sp).rows.front();
  };
  check.info("Al plasma, T = 300 K, R = 100 um; solid = Matsubara, dotted = perturbative, dashed = T = 0");

  const auto far = point(6e-6);
  check.band("solid/dashed at 6 um", *far.values[0] / *far.values[2], 2.70, 2.78);

  const auto mid = point(1e-6);
  check.below("|solid - dotted| / |solid| at 1 um", std::abs(*mid.values[0] - *mid.values[1]) / std::abs(*mid.values[0]),
              0.01);

  const auto near = point(0.1e-6);
  const auto s = al_sphere(0.1e-6);
  const auto pert = perturbative_force_pl(s, derive_scales(s, model).delta0);
  const double dt = *near.values[3];
  check.info("a = 0.1 um: solid = " + Checker::num(*near.values[0] * kPico) + " pN, dotted = " +
             Checker::num(*near.values[1] * kPico) + " pN, dashed = " + Checker::num(*near.values[2] * kPico) +
             " pN, perturbative thermal part = " + Checker::num(pert.thermal() * kPico) + " pN");
  check.band("|dT| at 0.1 um", std::abs(dt) * kPico, 0.015, 0.045, " pN");
  check.below("perturbative vs numeric dT at 0.1 um (relative)", std::abs(pert.thermal() - dt) / std::abs(dt), 0.30);
  return check.all_passed();
}

}  // namespace

const std::vector<std::string>& study_names() {
  static const std::vector<std::string> names{"fig1", "drude-discrepancy", "high-T-174", "coeffs"};
  return names;
}

bool run_study(const std::string& name, const QuadratureSpec& quad, std::ostream& out, ComparisonReport* dataset) {
  if (name == "high-T-174") return study_high_t(quad, out);
  if (name == "coeffs") return study_coeffs(out);
  if (name == "drude-discrepancy") return study_drude(quad, out);
  if (name == "fig1") return study_fig1(quad, out, dataset);
  throw ContractViolation("unknown study '" + name + "'");
}

}  // namespace casimir::cli
