#pragma once

namespace chiral_casimir::constants {

/// SI values of the physical constants used throughout the library (CODATA 2018).
struct PhysicalConstants {
  double hbar;                  // J s
  double c;                     // m / s
  double eps0;                  // F / m
  double e_charge;              // C, positive elementary charge
  double m_electron;            // kg
  double atomic_mass_unit;      // kg
  double fine_structure_alpha;  // dimensionless
};

inline constexpr PhysicalConstants kCodata2018{
    .hbar = 1.054571817646156e-34,
    .c = 299792458.0,
    .eps0 = 8.8541878128e-12,
    .e_charge = 1.602176634e-19,
    .m_electron = 9.1093837015e-31,
    .atomic_mass_unit = 1.66053906660e-27,
    .fine_structure_alpha = 7.2973525693e-3,
};

constexpr const PhysicalConstants& constants() { return kCodata2018; }

inline constexpr double kPi = 3.14159265358979323846;

/// Specific rotation [deg dm^-1 (g/cm^3)^-1] times mass density [g/cm^3] -> rotatory power [rad/m].
/// Throws DomainError for a non-positive density.
double specific_rotation_to_si(double specific_rotation, double mass_density_g_cm3);

/// Inverse of specific_rotation_to_si.
double si_to_specific_rotation(double rotatory_power_rad_m, double mass_density_g_cm3);

}  // namespace chiral_casimir::constants
