#include <doctest.h>

#include <cmath>

#include "casimir/analysis.hpp"
#include "casimir/error.hpp"

using namespace casimir;

namespace {

const DielectricModel kPerfect = DielectricModel::perfect_conductor();
const DielectricModel kPlasma = DielectricModel::plasma(kAluminiumPlasmaFrequency);
const DielectricModel kDrude = DielectricModel::drude(kAluminiumPlasmaFrequency, kAluminiumDrudeGamma);

SweepSpec sphere_sweep(std::vector<double> grid) {
  SweepSpec s;
  s.separations = std::move(grid);
  s.scenario = make_sphere_plate(1e-6, 300.0, 100e-6);
  s.models = {kPlasma};
  return s;
}

}  // namespace

TEST_CASE("grids") {
  const auto lin = make_grid(1.0, 2.0, 5, false);
  CHECK(lin.size() == 5);
  CHECK(lin.front() == 1.0);
  CHECK(lin.back() == 2.0);
  CHECK(lin[2] == doctest::Approx(1.5));
  const auto lg = make_grid(0.1e-6, 6e-6, 60, true);
  CHECK(lg.size() == 60);
  CHECK(lg.front() == 0.1e-6);
  CHECK(lg.back() == 6e-6);
  CHECK(lg[1] / lg[0] == doctest::Approx(lg[59] / lg[58]).epsilon(1e-12));
  CHECK(make_grid(3.0, 3.0, 1, false) == std::vector<double>{3.0});
  CHECK_THROWS_AS(make_grid(1.0, 2.0, 0, false), ContractViolation);
  CHECK_THROWS_AS(make_grid(-1.0, 2.0, 3, true), ContractViolation);
}

TEST_CASE("sweep validation") {
  auto s = sphere_sweep({});
  CHECK_THROWS_AS(s.validate(), ContractViolation);
  s.separations = {1e-6, 0.5e-6};
  CHECK_THROWS_AS(s.validate(), ContractViolation);
  s.separations = {5e-9};
  CHECK_THROWS_AS(s.validate(), ContractViolation);
  s.separations = {1e-3};
  CHECK_THROWS_AS(s.validate(), ContractViolation);
  s.separations = {1e-6};
  s.models.clear();
  CHECK_THROWS_AS(s.validate(), ContractViolation);
}

TEST_CASE("method names round-trip") {
  for (auto m : {Method::Matsubara, Method::ZeroT, Method::Perturbative, Method::Asymptote, Method::DeltaT})
    CHECK(parse_method(to_string(m)) == m);
  CHECK_THROWS_AS(parse_method("exact"), ContractViolation);
}

TEST_CASE("report self-consistency: deltaT column equals matsubara minus zeroT") {
  auto s = sphere_sweep(make_grid(0.1e-6, 2e-6, 5, true));
  s.methods = {Method::Matsubara, Method::ZeroT, Method::DeltaT, Method::Perturbative};
  s.models = {kPlasma, kDrude};
  s.policies = {ZeroModePolicy::SchwingerDeRaadMilton, ZeroModePolicy::ModelNatural};
  const auto r = run_sweep(s);
  CHECK(r.rows.size() == 5);
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    CHECK(r.rows[i].values.size() == r.columns.size());
    CHECK(r.rows[i].error.empty());
    for (const auto& v : r.rows[i].values) {
      REQUIRE(v.has_value());
    }
    for (const auto& m : {kPlasma, kDrude}) {
      for (std::string p : {"sdm", "natural"}) {
        const std::string key = "[" + m.label() + "|" + p + "]_N";
        const double th = *r.at(i, "matsubara" + key);
        const double z = *r.at(i, "zeroT[" + m.label() + "]_N");
        const double d = *r.at(i, "deltaT" + key);
        CHECK(d == th - z);
        CHECK(th <= 0.0);
        CHECK(z <= 0.0);
      }
    }
  }
  CHECK(r.rows.front().a < r.rows.back().a);
}

TEST_CASE("zero temperature routes to the T = 0 integral") {
  auto s = sphere_sweep({0.5e-6});
  s.scenario.temperature = 0.0;
  s.methods = {Method::Matsubara, Method::ZeroT};
  const auto r = run_sweep(s);
  CHECK(r.rows[0].values[0] == r.rows[0].values[1]);
}

TEST_CASE("policy invariance for plasma and the ideal metal") {
  for (const auto& m : {kPlasma, kPerfect}) {
    for (double a : {0.1e-6, 1e-6, 5e-6}) {
      for (const auto& s : {make_sphere_plate(a, 300.0, 100e-6), make_plates(a, 300.0)}) {
        const auto sdm = matsubara_force(s, m, ZeroModePolicy::SchwingerDeRaadMilton);
        const auto nat = matsubara_force(s, m, ZeroModePolicy::ModelNatural);
        CHECK(sdm.value == nat.value);
      }
    }
  }
}

TEST_CASE("Drude policy gap is the TE zero mode and does not depend on gamma") {
  const double a = 0.5e-6, R = 100e-6, T = 300.0;
  const auto s = make_sphere_plate(a, T, R);
  const double te_zero = kConstants.zeta3 * R * kConstants.k_B * T / (8 * a * a);
  for (double gamma : {1e11, 1e13, 9.6e13, 5e14}) {
    const auto m = DielectricModel::drude(kAluminiumPlasmaFrequency, gamma);
    const double gap = matsubara_force(s, m, ZeroModePolicy::ModelNatural).value -
                       matsubara_force(s, m, ZeroModePolicy::SchwingerDeRaadMilton).value;
    CHECK(gap == doctest::Approx(te_zero).epsilon(1e-9));
  }
}

TEST_CASE("delta_T_force and prescription_discrepancy") {
  const auto s = make_sphere_plate(0.1e-6, 300.0, 100e-6);
  const auto d = delta_T_force(s, kPlasma, ZeroModePolicy::SchwingerDeRaadMilton);
  CHECK(d.value == d.thermal.value - d.zero_temperature.value);
  CHECK(d.value < 0.0);
  const auto p = prescription_discrepancy(s, kAluminiumPlasmaFrequency, kAluminiumDrudeGamma);
  CHECK(p.value > 0.0);
  CHECK(p.value == p.drude.value - p.plasma.value);
  CHECK(p.analytic_zero_mode_gap ==
        doctest::Approx(kConstants.zeta3 * 100e-6 * kConstants.k_B * 300.0 / (8 * 1e-14)).epsilon(1e-14));
  CHECK(p.plasma_te_zero_mode > 0.0);
  CHECK(p.plasma_te_zero_mode < p.analytic_zero_mode_gap);
  CHECK_THROWS_AS(prescription_discrepancy(make_plates(1e-7, 300.0), 1e16, 1e14), ContractViolation);
  CHECK_THROWS_AS(delta_T_force(make_plates(1e-7, 0.0), kPlasma, ZeroModePolicy::ModelNatural), ContractViolation);
}

TEST_CASE("validity scan reports a contiguous band") {
  auto s = sphere_sweep(make_grid(0.1e-6, 6e-6, 12, true));
  const auto r = validity_scan(s, 0.01);
  REQUIRE(r.band.has_value());
  CHECK(r.band->first <= 0.2e-6);
  CHECK(r.band->second >= 2e-6);
  CHECK(r.band->second < 6e-6);
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    const double a = r.rows[i].a;
    const auto dev = r.at(i, "rel_dev");
    if (a >= r.band->first && a <= r.band->second) {
      REQUIRE(dev.has_value());
      CHECK(*dev < 0.01);
    }
  }
}

TEST_CASE("failed cells degrade to labelled gaps") {
  // delta0/a exceeds 1/4 at 50 nm, so only the perturbative cell fails.
  auto s = sphere_sweep({0.05e-6, 0.2e-6});
  s.methods = {Method::Matsubara, Method::Perturbative};
  const auto r = run_sweep(s);
  CHECK(r.rows[0].values[0].has_value());
  CHECK_FALSE(r.rows[0].values[1].has_value());
  CHECK(r.rows[0].error.find("delta0/a") != std::string::npos);
  CHECK(r.rows[1].error.empty());
  CHECK(r.rows[1].values[1].has_value());
}

TEST_CASE("figure curves") {
  const auto r = figure1_curves(figure1_defaults(make_grid(0.1e-6, 6e-6, 6, true)));
  CHECK(r.columns.size() == 4);
  // Close to the wall the solid and dashed curves nearly coincide.
  const double solid = *r.at(0, "solid_matsubara_N");
  const double dashed = *r.at(0, "dashed_zeroT_N");
  const double dotted = *r.at(0, "dotted_perturbative_N");
  CHECK(std::abs(solid - dashed) < 0.05e-12);
  CHECK(std::abs(dotted / solid - 1) < 0.05);
  CHECK(*r.at(0, "deltaT_N") == solid - dashed);
  // Far away the thermal force dominates.
  CHECK(*r.at(5, "solid_matsubara_N") / *r.at(5, "dashed_zeroT_N") > 2.5);
}
