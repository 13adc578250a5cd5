#include <cmath>
#include <numbers>
#include <string>

#include "chiral_casimir/constants.hpp"
#include "chiral_casimir/errors.hpp"
#include "chiral_casimir/estimator.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace chiral_casimir;
using namespace chiral_casimir::estimator;
using test_support::close_rel;

namespace {
const auto& K = constants::constants();
constexpr double kPi = std::numbers::pi;

CompoundData octanol() {
  return {.name = "2-octanol",
          .specific_rotation = 15.46,
          .wavelength = 4.8e-7,
          .refractive_index = 1.43,
          .mass_density = 0.82,
          .molecular_mass = 130.2,
          .chiral_center_mass = 12.011,
          .B0_magnitude = 10.0};
}

const char* kRecord = R"([{"name": "x", "specific_rotation_deg_dm_gcm3": 15.46, "wavelength_m": 4.8e-7,
  "refractive_index": 1.43, "mass_density_g_cm3": 0.82, "molecular_mass_u": 130.2,
  "chiral_center_mass_u": 12.011}])";
}  // namespace

TEST_CASE("estimator: 2-octanol chain re-keyed") {
  const auto d = octanol();
  const double rho = 0.82e3 / (130.2 * K.atomic_mass_unit);
  CHECK(close_rel(number_density(d), rho, 1e-14));
  // 15.46 deg/dm per g/cm^3 at 0.82 g/cm^3 -> rad/m
  const double phi = 15.46 * 0.82 * 10.0 * kPi / 180.0;
  CHECK(close_rel(beta_from_rotatory_power(d), phi * 4.8e-7 * 4.8e-7 * K.eps0 / (4.0 * kPi * kPi * rho), 1e-14));
  CHECK(close_rel(alphaE_from_index(d), 2.0 * 0.43 * K.eps0 / rho, 1e-14));
}

TEST_CASE("estimator: 2-octanol headline numbers") {
  const auto e = estimate(octanol());
  CHECK(close_rel(e.beta0, 3e-53, 0.10));
  CHECK(close_rel(e.alpha_E0, 2e-39, 0.05));
  CHECK(close_rel(std::abs(e.momentum), 1.4e-34, 0.10));
  CHECK(close_rel(std::abs(e.velocity), 0.6e-9, 0.15));
  CHECK(close_rel(e.chiral_length, e.beta0 / e.alpha_E0, 1e-15));
  CHECK(close_rel(std::abs(e.velocity), std::abs(e.momentum) / (130.2 * K.atomic_mass_unit), 1e-14));
  CHECK(close_rel(std::abs(e.momentum), std::abs(e.g_pseudoscalar) * K.e_charge * 10.0, 1e-14));
}

TEST_CASE("estimator: momentum scales linearly with field") {
  auto d = octanol();
  const double p10 = estimate(d).momentum;
  d.B0_magnitude = 5.0;
  CHECK(close_rel(estimate(d).momentum, 0.5 * p10, 1e-15));
  d.B0_magnitude = 0.0;
  CHECK(estimate(d).momentum == 0.0);
}

TEST_CASE("estimator: validation") {
  auto d = octanol();
  d.refractive_index = 1.0;
  CHECK_THROWS_AS(validate(d), DomainError);
  d = octanol();
  d.wavelength = -1.0;
  CHECK_THROWS_AS(estimate(d), DomainError);
  d = octanol();
  d.mass_density = std::nan("");
  CHECK_THROWS_AS(validate(d), DomainError);
  d = octanol();
  d.chiral_center_mass = 0.0;
  CHECK_THROWS_AS(validate(d), DomainError);
}

TEST_CASE("estimator: compound file parsing") {
  const auto rows = parse_compounds(kRecord, 7.0);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].name == "x");
  CHECK(rows[0].B0_magnitude == 7.0);
  CHECK(rows[0].molecular_mass == 130.2);

  std::string extra = kRecord;
  extra.insert(extra.find("\"name\""), "\"colour\": 1, ");
  CHECK_THROWS_WITH_AS(parse_compounds(extra, 10.0), doctest::Contains("colour"), DomainError);

  std::string missing = kRecord;
  missing.replace(missing.find("\"refractive_index\""), 18, "\"refractive_indx\"");
  CHECK_THROWS_AS(parse_compounds(missing, 10.0), DomainError);

  CHECK_THROWS_AS(parse_compounds("{not json", 10.0), DomainError);
  CHECK_THROWS_AS(parse_compounds("{}", 10.0), DomainError);
  CHECK_THROWS_AS(load_compounds("/nonexistent/compounds.json", 10.0), DomainError);
}
