#pragma once

// Longitudinal and transverse Casimir momentum of the chiral oscillator in a static
// magnetic field: resolvent quadrature over photon wavenumber, closed forms, and the
// isotropic orientation average.

#include <functional>
#include <optional>
#include <string_view>

#include "chiral_casimir/fock.hpp"
#include "chiral_casimir/model.hpp"
#include "chiral_casimir/pt.hpp"
#include "chiral_casimir/quadrature.hpp"

namespace chiral_casimir::casimir {

using model::OscillatorParams;

enum class Method { quadrature, closed_form };
std::string_view method_name(Method m);

struct MomentumParts {
  std::optional<Vec3> longitudinal;
  std::optional<Vec3> transverse;
};

struct Diagnostics {
  int k_subdivisions = 0;
  double estimated_quadrature_error = 0.0;  // relative to |vector|
  double estimated_abs_error = 0.0;         // kg m/s
  int basis_cutoff = 0;
};

struct MomentumResult {
  Vec3 vector{};  // kg m/s
  MomentumParts parts;
  Method method = Method::closed_form;
  Diagnostics diagnostics;
};

/// Bracketed photon-exchange integrand (per unit k) at order C B0, difference of the
/// electron and nucleus mass terms. The O(C B0) pieces of the perturbed ground state
/// are taken from the Rayleigh-Schroedinger solution by order tag.
class LongitudinalIntegrand {
 public:
  LongitudinalIntegrand(const OscillatorParams& p, const fock::Basis& basis);

  /// k > 0 in 1/m. Throws ComputationError if any resolvent denominator is not positive.
  Vec3 operator()(double k) const;
  /// The contribution of a single mass (before the subtraction), for diagnostics and tests.
  Vec3 single_mass(double k, double m) const;

  const OscillatorParams& params() const { return p_; }
  const fock::Basis& basis() const { return basis_; }
  /// Physical scales E0/(hbar c), m_e c/hbar, m_N c/hbar.
  std::array<double, 3> split_points() const;

 private:
  OscillatorParams p_;
  fock::Basis basis_;
  std::vector<double> eps_;  // E_n - E0
  fock::SparseOperator vc_;
  fock::SparseOperator vz_;
  fock::StateVector zero_;
  fock::StateVector psi_c_;
  fock::StateVector psi_b_;
  // k-independent products p_a |0>, p_a |psi_C>, p_a |psi_B>
  std::array<fock::StateVector, 3> p0_;
  std::array<fock::StateVector, 3> pc_;
  std::array<fock::StateVector, 3> pb_;
  bool trivial_ = false;
};

Vec3 longitudinal_integrand(double k, const OscillatorParams& p, const fock::Basis& basis);

/// Integral of the integrand over k in (0, inf), split at the three physical scales, with
/// logarithmic mapping on the middle panels and k = k3/t on the tail.
/// rel_tol must lie in [1e-10, 1e-2]. Throws quad::NonConvergence on budget exhaustion.
MomentumResult longitudinal_quadrature(const OscillatorParams& p, const fock::Basis& basis, double rel_tol);

/// Leading-logarithm closed form; component i is proportional to B0^i.
MomentumResult longitudinal_closed_form(const OscillatorParams& p);

/// Diagonal response tensor of the closed form, P_i = G_ii B0^i (kg m / (s T)).
Vec3 longitudinal_closed_form_response(const OscillatorParams& p);

struct RotationalAverage {
  Vec3 vector{};
  std::array<Vec3, 3> tensor{};  // tensor[i][j] = dP_i / dB0_j
  double trace_over_3 = 0.0;
};

using FieldEvaluator = std::function<Vec3(const OscillatorParams&)>;

/// Isotropic average of a field-linear momentum: G from three axis-aligned evaluations at
/// |B0| (1 T if B0 = 0), linearity checked by doubling the field (1e-10 relative),
/// returns (tr G / 3) B0. Throws ComputationError if the evaluator is not linear.
RotationalAverage rotational_average(const OscillatorParams& p, const FieldEvaluator& evaluator);

/// Orientation-averaged longitudinal closed form.
Vec3 longitudinal_rot_closed_form(const OscillatorParams& p);

/// Orientation-averaged transverse closed form, with its fixed coefficient 1.06.
Vec3 transverse_rot_closed_form(const OscillatorParams& p);
inline constexpr double kTransverseCoefficient = 1.06;

/// Sum of the two averaged closed forms.
MomentumResult total_casimir(const OscillatorParams& p);

/// -(2 alpha / 9 pi) (beta/alpha_E) [ln(m_N/m_e) + 1] e B0
Vec3 observable_form(double beta_over_alpha, double m_N, double m_e, const Vec3& B0);

}  // namespace chiral_casimir::casimir
