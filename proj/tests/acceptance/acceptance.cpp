// Acceptance gate: one PASS/FAIL line per criterion. Run with a criterion
// number to check a single one; without arguments every criterion runs.

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "casimir/analysis.hpp"
#include "casimir/dielectric.hpp"
#include "casimir/lifshitz.hpp"
#include "casimir/perturbative.hpp"

using namespace casimir;

namespace {

constexpr double kR = 100e-6;
constexpr double kT = 300.0;
const double kZeta3 = kConstants.zeta3;
const double kDelta0 = kConstants.c / kAluminiumPlasmaFrequency;

const DielectricModel kPerfect = DielectricModel::perfect_conductor();
const DielectricModel kPlasma = DielectricModel::plasma(kAluminiumPlasmaFrequency);
const DielectricModel kDrude = DielectricModel::drude(kAluminiumPlasmaFrequency, kAluminiumDrudeGamma);

struct Verdict {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

double rel(double got, double want) { return std::abs(got / want - 1.0); }

double pl_unit(double a) { return kZeta3 * kR * kConstants.k_B * kT / (a * a); }

Verdict zero_mode_closed_forms() {
  double worst = 0.0;
  for (double a : {0.1e-6, 1e-6, 6e-6}) {
    const auto s = make_sphere_plate(a, kT, kR);
    for (auto p : {ZeroModePolicy::SchwingerDeRaadMilton, ZeroModePolicy::ModelNatural})
      worst = std::max(worst, rel(zero_mode_term(s, kPerfect, p).value, -pl_unit(a) / 4));
    for (double gamma : {1e12, kAluminiumDrudeGamma, 1e15}) {
      const auto d = DielectricModel::drude(kAluminiumPlasmaFrequency, gamma);
      worst = std::max(worst, rel(zero_mode_term(s, d, ZeroModePolicy::ModelNatural).value, -pl_unit(a) / 8));
    }
  }
  // Plasma: first-order closed form, checked where the (delta0/a)^2 remainder is below the tolerance.
  const double a = 100e-6;
  const auto s = make_sphere_plate(a, kT, kR);
  const double plasma =
      rel(zero_mode_term(s, kPlasma, ZeroModePolicy::ModelNatural).value, -pl_unit(a) / 4 * (1 - 2 * kDelta0 / a));
  const double dev = std::max(worst, plasma);
  return {dev < 1e-6, "max rel dev " + fmt("%.2e", dev) + " (ideal/Drude " + fmt("%.2e", worst) +
                          ", plasma at a = 100 um " + fmt("%.2e", plasma) + "), tol 1e-6"};
}

Verdict thermal_excess_174() {
  const auto s = make_sphere_plate(6e-6, kT, kR);
  const double f0 = std::abs(ideal_force(s));
  const double via_asymptote = 100 * (std::abs(high_T_asymptote_pl(s, 0.0)) - f0) / f0;
  const double via_sum = 100 * (std::abs(matsubara_force(s, kPerfect).value) - f0) / f0;
  auto in = [](double v) { return v >= 170.0 && v <= 178.0; };
  return {in(via_asymptote) && in(via_sum), "asymptote " + fmt("%.2f", via_asymptote) + "%, Matsubara " +
                                                fmt("%.2f", via_sum) + "%, band [170, 178]%"};
}

Verdict small_separation_thermal() {
  const auto s = make_sphere_plate(0.1e-6, kT, kR);
  const auto d = delta_T_force(s, kPlasma, ZeroModePolicy::SchwingerDeRaadMilton);
  const double numeric = std::abs(d.value) * 1e12;
  const double pert = std::abs(perturbative_force_pl(s, kDelta0).thermal()) * 1e12;
  const bool band = numeric >= 0.015 && numeric <= 0.045;
  const double agree = rel(pert, numeric);
  return {band && agree < 0.30, "|dT F| " + fmt("%.4f", numeric) + " pN (band [0.015, 0.045]), perturbative " +
                                    fmt("%.4f", pert) + " pN, rel dev " + fmt("%.2e", agree) + " (tol 0.30)"};
}

Verdict drude_discrepancy() {
  bool ok = true;
  std::ostringstream os;
  for (double a : {0.1e-6, 0.095e-6, 0.09e-6}) {
    const auto s = make_sphere_plate(a, kT, kR);
    const double dt = std::abs(delta_T_force(s, kDrude, ZeroModePolicy::ModelNatural).value) * 1e12;
    const auto p = prescription_discrepancy(s, kAluminiumPlasmaFrequency, kAluminiumDrudeGamma);
    const double gap = rel(p.value, p.analytic_zero_mode_gap);
    ok = ok && dt >= 2.5 && dt <= 8.5 && gap < 0.25;
    os << "a=" << a * 1e6 << "um |dT F| " << fmt("%.3f", dt) << " pN gap " << fmt("%.3f", p.value * 1e12) << "/"
       << fmt("%.3f", p.analytic_zero_mode_gap * 1e12) << " pN (" << fmt("%.3f", gap) << "); ";
  }
  os << "bands [2.5, 8.5] pN, gap tol 0.25";
  return {ok, os.str()};
}

Verdict perturbative_band() {
  double worst = 0.0, worst_a = 0.0;
  for (double a : make_grid(0.2e-6, 3.5e-6, 12, true)) {
    const auto s = make_sphere_plate(a, kT, kR);
    const double dev = rel(perturbative_force_pl(s, kDelta0).total, matsubara_force(s, kPlasma).value);
    if (dev > worst) worst = dev, worst_a = a;
  }
  const auto s = make_sphere_plate(0.1e-6, kT, kR);
  const double near = rel(perturbative_force_pl(s, kDelta0).total, matsubara_force(s, kPlasma).value);
  return {worst < 0.01 && near < 0.05, "max rel dev on [0.2, 3.5] um " + fmt("%.3e", worst) + " at a = " +
                                           fmt("%.3g", worst_a * 1e6) + " um (tol 0.01); at 0.1 um " +
                                           fmt("%.3e", near) + " (tol 0.05)"};
}

Verdict high_t_asymptote() {
  double worst = 0.0;
  for (double a : make_grid(6e-6, 10e-6, 5, false)) {
    const auto s = make_sphere_plate(a, kT, kR);
    worst = std::max(worst, rel(high_T_asymptote_pl(s, kDelta0), matsubara_force(s, kPlasma).value));
  }
  return {worst < 0.01, "max rel dev on [6, 10] um " + fmt("%.3e", worst) + " (tol 0.01)"};
}

Verdict plasma_drude_zero_t() {
  double worst = 0.0, worst_a = 0.0;
  for (double a : make_grid(0.1e-6, 1e-6, 7, true)) {
    const auto s = make_sphere_plate(a, 0.0, kR);
    const double dev = rel(zero_temperature_force(s, kDrude).value, zero_temperature_force(s, kPlasma).value);
    if (dev > worst) worst = dev, worst_a = a;
  }
  return {worst < 0.02, "max rel difference " + fmt("%.4f", worst) + " at a = " + fmt("%.3g", worst_a * 1e6) +
                            " um, gamma = 9.6e13 rad/s (tol 0.02)"};
}

Verdict analytic_oracles() {
  const auto s1 = make_sphere_plate(1e-6, kT, kR);
  const double pp0 = rel(phi_pp(0.0, s1, kPerfect), 4 * kZeta3);
  const double pl0 = rel(phi_pl(0.0, s1, kPerfect), -2 * kZeta3);

  double pfa = 0.0;
  for (const auto& m : {kPerfect, kPlasma, kDrude}) {
    const double a = 1e-6, h = a / 1000;
    auto f = [&](double sep) { return matsubara_force(make_sphere_plate(sep, kT, kR), m).value; };
    const double deriv = (f(a + h) - f(a - h)) / (2 * h);
    pfa = std::max(pfa, rel(deriv, -2 * kPi * kR * matsubara_force(make_plates(a, kT), m).value));
  }

  double cont = 0.0;
  for (const auto& m : {kPerfect, kPlasma}) {
    const double a = 1e-6;
    const auto s = make_sphere_plate(a, effective_temperature(a) / 100, kR);
    cont = std::max(cont, rel(matsubara_force(s, m).value, zero_temperature_force(s, m).value));
  }

  QuadratureSpec q;
  q.rel_tol = 1e-12;
  const double a = 1e-6;
  const double f0 = ideal_force(make_plates(a, 0.0));
  auto g = [&](double t) {
    const auto s = make_plates(a, t * effective_temperature(a));
    return (matsubara_force(s, kPerfect, ZeroModePolicy::SchwingerDeRaadMilton, q).value / f0 - 1) / std::pow(t, 4);
  };
  const double coefficient = 2 * g(0.1) - g(0.2);
  const double low_t = rel(coefficient, 1.0 / 3.0);

  const bool ok = pp0 < 1e-9 && pl0 < 1e-9 && pfa < 1e-4 && cont < 1e-3 && low_t < 0.01;
  return {ok, "phi_pp(0) " + fmt("%.1e", pp0) + ", phi_pl(0) " + fmt("%.1e", pl0) + " (tol 1e-9); PFA " +
                  fmt("%.1e", pfa) + " (tol 1e-4); T->0 " + fmt("%.1e", cont) + " (tol 1e-3); t^4 coefficient " +
                  fmt("%.5f", coefficient) + " rel " + fmt("%.1e", low_t) + " (tol 0.01)"};
}

Verdict coefficient_identities() {
  using mp = boost::multiprecision::cpp_bin_float_50;
  const mp pi = boost::math::constants::pi<mp>();
  const mp p2 = pi * pi, p4 = p2 * p2;
  const mp ref[5] = {mp(24), -mp(640) / 7 * (1 - p2 / 210), mp(2800) / 9 * (1 - 163 * p2 / 7350),
                     -mp(10752) / 11 * (1 - 305 * p2 / 5292 + 379 * p4 / 1693440),
                     mp(37632) / 13 * (1 - 1135 * p2 / 9720 + 2879 * p4 / 1358280)};
  const auto s = series_coefficients();
  bool identity = true;
  double worst = 0.0;
  for (int i = 2; i <= 6; ++i) {
    identity = identity && s.c_tilde_at(i) * (3 + i) == 3 * s.c_at(i);
    worst = std::max(worst, rel(s.c_at(i), static_cast<double>(ref[i - 2])));
  }
  const bool c2 = s.c_at(2) == 24.0;
  return {c2 && identity && worst < 1e-12, std::string("c2 == 24 ") + (c2 ? "yes" : "no") + ", identity exact " +
                                               (identity ? "yes" : "no") + ", max rel dev vs 50-digit " +
                                               fmt("%.1e", worst) + " (tol 1e-12)"};
}

struct Criterion {
  const char* title;
  std::function<Verdict()> check;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> list{
      {"zero-mode closed forms", zero_mode_closed_forms},
      {"174% thermal excess", thermal_excess_174},
      {"small-separation thermal correction", small_separation_thermal},
      {"Drude discrepancy", drude_discrepancy},
      {"perturbative validity band", perturbative_band},
      {"high-temperature asymptote", high_t_asymptote},
      {"plasma vs Drude at T = 0", plasma_drude_zero_t},
      {"analytic oracle suite", analytic_oracles},
      {"coefficient identities", coefficient_identities},
  };
  return list;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));
  if (selected.empty())
    for (int i = 1; i <= static_cast<int>(criteria().size()); ++i) selected.push_back(i);

  int failures = 0;
  for (int n : selected) {
    if (n < 1 || n > static_cast<int>(criteria().size())) {
      std::fprintf(stderr, "unknown criterion %d\n", n);
      return 2;
    }
    const auto& c = criteria()[n - 1];
    Verdict v;
    try {
      v = c.check();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    std::printf("%s  criterion %d  %s: %s\n", v.pass ? "PASS" : "FAIL", n, c.title, v.detail.c_str());
    failures += !v.pass;
  }
  return failures == 0 ? 0 : 1;
}
