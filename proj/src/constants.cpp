#include "chiral_casimir/constants.hpp"

#include "chiral_casimir/errors.hpp"

namespace chiral_casimir::constants {

namespace {
constexpr double kDegToRad = kPi / 180.0;
constexpr double kDecimeter = 0.1;  // polarimeter cell length unit
}  // namespace

double specific_rotation_to_si(double specific_rotation, double mass_density_g_cm3) {
  if (!(mass_density_g_cm3 > 0.0)) {
    throw DomainError("specific_rotation_to_si: mass density must be positive");
  }
  return specific_rotation * mass_density_g_cm3 * kDegToRad / kDecimeter;
}

double si_to_specific_rotation(double rotatory_power_rad_m, double mass_density_g_cm3) {
  if (!(mass_density_g_cm3 > 0.0)) {
    throw DomainError("si_to_specific_rotation: mass density must be positive");
  }
  return rotatory_power_rad_m * kDecimeter / (kDegToRad * mass_density_g_cm3);
}

}  // namespace chiral_casimir::constants
