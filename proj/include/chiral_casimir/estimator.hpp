#pragma once

// Observable Casimir-momentum estimate for a chiral liquid from tabulated optical data.

#include <string>
#include <vector>

namespace chiral_casimir::estimator {

struct CompoundData {
  std::string name;
  double specific_rotation = 0.0;   // deg dm^-1 (g/cm^3)^-1
  double wavelength = 0.0;          // m
  double refractive_index = 0.0;    // dimensionless
  double mass_density = 0.0;        // g/cm^3
  double molecular_mass = 0.0;      // u
  double chiral_center_mass = 0.0;  // u
  double B0_magnitude = 10.0;       // T
};

struct Estimate {
  std::string name;
  double number_density = 0.0;  // 1/m^3
  double beta0 = 0.0;           // rad C^2 m^3 / J
  double alpha_E0 = 0.0;        // C^2 m^2 / J
  double chiral_length = 0.0;   // m
  double g_pseudoscalar = 0.0;  // m, P = g e B0
  double momentum = 0.0;        // kg m / s
  double velocity = 0.0;        // m / s
};

/// Throws DomainError unless wavelength, densities and masses are positive, the index
/// exceeds 1, and every value is finite.
void validate(const CompoundData& d);

double number_density(const CompoundData& d);
/// beta(0) = phi lambda^2 eps0 / (4 pi^2 rho)
double beta_from_rotatory_power(const CompoundData& d);
/// alpha_E(0) = 2 (n - 1) eps0 / rho
double alphaE_from_index(const CompoundData& d);
Estimate estimate(const CompoundData& d);

/// Parses a JSON array of compound records. Each record has exactly the keys name,
/// specific_rotation_deg_dm_gcm3, wavelength_m, refractive_index, mass_density_g_cm3,
/// molecular_mass_u, chiral_center_mass_u. B0_magnitude is applied to every record.
/// Throws DomainError naming the record and key on any schema violation.
std::vector<CompoundData> parse_compounds(const std::string& json_text, double B0_magnitude);
std::vector<CompoundData> load_compounds(const std::string& path, double B0_magnitude);

}  // namespace chiral_casimir::estimator
