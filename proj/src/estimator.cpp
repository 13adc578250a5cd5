#include "chiral_casimir/estimator.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "chiral_casimir/casimir.hpp"
#include "chiral_casimir/constants.hpp"
#include "chiral_casimir/errors.hpp"
#include "json.hpp"

namespace chiral_casimir::estimator {

namespace {

using constants::kPi;
const constants::PhysicalConstants& K() { return constants::constants(); }

constexpr double kGramPerCm3 = 1000.0;  // kg/m^3

void require(bool ok, const CompoundData& d, const char* what) {
  if (!ok) {
    throw DomainError("compound '" + d.name + "': " + what);
  }
}

}  // namespace

void validate(const CompoundData& d) {
  for (double v : {d.specific_rotation, d.wavelength, d.refractive_index, d.mass_density, d.molecular_mass,
                   d.chiral_center_mass, d.B0_magnitude}) {
    require(std::isfinite(v), d, "non-finite value");
  }
  require(d.wavelength > 0.0, d, "wavelength must be positive");
  require(d.mass_density > 0.0, d, "mass density must be positive");
  require(d.molecular_mass > 0.0, d, "molecular mass must be positive");
  require(d.chiral_center_mass > 0.0, d, "chiral center mass must be positive");
  require(d.refractive_index > 1.0, d, "refractive index must exceed 1");
}

double number_density(const CompoundData& d) {
  validate(d);
  return d.mass_density * kGramPerCm3 / (d.molecular_mass * K().atomic_mass_unit);
}

double beta_from_rotatory_power(const CompoundData& d) {
  const double rho = number_density(d);
  const double phi = constants::specific_rotation_to_si(d.specific_rotation, d.mass_density);
  return phi * d.wavelength * d.wavelength * K().eps0 / (4.0 * kPi * kPi * rho);
}

double alphaE_from_index(const CompoundData& d) {
  const double rho = number_density(d);
  return 2.0 * (d.refractive_index - 1.0) * K().eps0 / rho;
}

Estimate estimate(const CompoundData& d) {
  Estimate e;
  e.name = d.name;
  e.number_density = number_density(d);
  e.beta0 = beta_from_rotatory_power(d);
  e.alpha_E0 = alphaE_from_index(d);
  e.chiral_length = e.beta0 / e.alpha_E0;
  const double m_N = d.chiral_center_mass * K().atomic_mass_unit;
  const Vec3 unit_field{0.0, 0.0, 1.0};
  // g from P = g e B0 at B0 = 1 T along z
  e.g_pseudoscalar = casimir::observable_form(e.chiral_length, m_N, K().m_electron, unit_field)[2] / K().e_charge;
  e.momentum = std::abs(e.g_pseudoscalar) * K().e_charge * d.B0_magnitude;
  e.velocity = e.momentum / (d.molecular_mass * K().atomic_mass_unit);
  return e;
}

std::vector<CompoundData> parse_compounds(const std::string& json_text, double B0_magnitude) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& err) {
    throw DomainError(std::string("compound file: ") + err.what());
  }
  if (!doc.is_array()) {
    throw DomainError("compound file: top level must be an array of records");
  }
  static const std::set<std::string> kNumeric = {"specific_rotation_deg_dm_gcm3", "wavelength_m",
                                                 "refractive_index",              "mass_density_g_cm3",
                                                 "molecular_mass_u",              "chiral_center_mass_u"};
  std::vector<CompoundData> out;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const auto& rec = doc[i];
    const std::string where = "compound record " + std::to_string(i);
    if (!rec.is_object()) {
      throw DomainError(where + ": not an object");
    }
    for (const auto& [key, value] : rec.items()) {
      if (key != "name" && !kNumeric.contains(key)) {
        throw DomainError(where + ": unknown key '" + key + "'");
      }
    }
    auto number = [&](const char* key) {
      if (!rec.contains(key)) {
        throw DomainError(where + ": missing key '" + key + "'");
      }
      if (!rec.at(key).is_number()) {
        throw DomainError(where + ": key '" + key + "' must be a number");
      }
      return rec.at(key).get<double>();
    };
    if (!rec.contains("name") || !rec.at("name").is_string()) {
      throw DomainError(where + ": key 'name' must be a string");
    }
    CompoundData d;
    d.name = rec.at("name").get<std::string>();
    d.specific_rotation = number("specific_rotation_deg_dm_gcm3");
    d.wavelength = number("wavelength_m");
    d.refractive_index = number("refractive_index");
    d.mass_density = number("mass_density_g_cm3");
    d.molecular_mass = number("molecular_mass_u");
    d.chiral_center_mass = number("chiral_center_mass_u");
    d.B0_magnitude = B0_magnitude;
    validate(d);
    out.push_back(std::move(d));
  }
  return out;
}

std::vector<CompoundData> load_compounds(const std::string& path, double B0_magnitude) {
  std::ifstream in(path);
  if (!in) {
    throw DomainError("cannot open compound file '" + path + "'");
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_compounds(ss.str(), B0_magnitude);
}

}  // namespace chiral_casimir::estimator
