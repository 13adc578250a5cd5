#include <cmath>

#include "chiral_casimir/constants.hpp"
#include "chiral_casimir/errors.hpp"
#include "doctest.h"

using namespace chiral_casimir;
using constants::kPi;

TEST_CASE("constants: alpha consistency and positivity") {
  const auto& k = constants::constants();
  const double alpha = k.e_charge * k.e_charge / (4.0 * kPi * k.eps0 * k.hbar * k.c);
  CHECK(std::abs(alpha / k.fine_structure_alpha - 1.0) <= 1e-9);
  for (double v : {k.hbar, k.c, k.eps0, k.e_charge, k.m_electron, k.atomic_mass_unit, k.fine_structure_alpha}) {
    CHECK(v > 0.0);
  }
  CHECK(k.e_charge == doctest::Approx(1.602e-19).epsilon(1e-3));
  CHECK(k.atomic_mass_unit / k.m_electron == doctest::Approx(1822.888).epsilon(1e-6));
}

TEST_CASE("constants: specific rotation conversion") {
  // 15.46 deg/dm/(g/cm^3) at 0.82 g/cm^3: 15.46 * 0.82 = 12.6772 deg/dm = 126.772 deg/m
  CHECK(constants::specific_rotation_to_si(15.46, 0.82) == doctest::Approx(126.772 * kPi / 180.0).epsilon(1e-14));
  CHECK(constants::specific_rotation_to_si(15.46, 0.82) == doctest::Approx(2.2126).epsilon(1e-4));
  CHECK(constants::specific_rotation_to_si(0.0, 0.7) == 0.0);
  CHECK(constants::specific_rotation_to_si(180.0 / kPi * 0.1, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(constants::specific_rotation_to_si(1.0, 0.0), DomainError);
  CHECK_THROWS_AS(constants::specific_rotation_to_si(1.0, -2.0), DomainError);
}

TEST_CASE("constants: round trip property") {
  for (double rho : {0.1, 0.82, 1.0, 3.7, 19.3}) {
    for (double phi : {-5.0, 1.0, 1e-3, 250.0}) {
      const double back =
          constants::specific_rotation_to_si(constants::si_to_specific_rotation(phi, rho), rho);
      CHECK(std::abs(back / phi - 1.0) <= 1e-12);
    }
  }
}
