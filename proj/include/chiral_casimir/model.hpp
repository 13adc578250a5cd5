#pragma once

// Internal-motion Hamiltonian of the two-particle chiral oscillator in the number
// basis of the anisotropic harmonic oscillator, and its dimensionless parameters.
// Relative coordinate r = r_N - r_e; charges q_e = -e, q_N = +e.

#include <array>
#include <vector>

#include "chiral_casimir/fock.hpp"
#include "chiral_casimir/vec3.hpp"

namespace chiral_casimir::model {

using fock::Axis;
using fock::Basis;
using fock::SparseOperator;

struct OscillatorParams {
  Vec3 omega{};           // rad/s per axis
  double C_chiral = 0.0;  // J/m^3, coefficient of C x y z
  double m_e_eff = 0.0;   // kg
  double m_N = 0.0;       // kg
  Vec3 B0{};              // T
};

struct DerivedParams {
  double M_total;  // m_N + m_e
  double mu;       // m_N m_e / M
  double mu_star;  // m_N m_e / (m_N - m_e); negative if the masses are swapped
  double E0;       // hbar (wx + wy + wz) / 2
  double script_C;
  Vec3 script_B;
  std::array<Vec3, 3> eta;  // eta[i][j] = (w_i - w_j) / (w_i + w_j)
};

/// Throws DomainError for non-finite input, non-positive frequency or mass, or m_N == m_e.
/// Swapped masses (m_N < m_e) are accepted here; see validate_physical.
DerivedParams derive(const OscillatorParams& p);

/// derive() plus the physical ordering m_N > m_e_eff.
void validate_physical(const OscillatorParams& p);

double eta(const Vec3& omega, int i, int j);

/// Test parameter set: a slightly anisotropic electron-carbon oscillator with small
/// couplings (script_C ~ 1e-2, script_B ~ 5e-3).
OscillatorParams ref1();

/// sqrt(hbar / 2 mu w_axis)
double oscillator_length(const OscillatorParams& p, Axis axis);

// Ladder-polynomial forms of the basic operators (used to build exact projections).
fock::LadderPolynomial position_poly(const OscillatorParams& p, Axis axis);
fock::LadderPolynomial momentum_poly(const OscillatorParams& p, Axis axis);
/// Component of r ^ p along axis.
fock::LadderPolynomial angular_momentum_poly(const OscillatorParams& p, Axis axis);

SparseOperator build_position(const Basis& basis, const OscillatorParams& p, Axis axis);
SparseOperator build_momentum(const Basis& basis, const OscillatorParams& p, Axis axis);
/// (mu/2) sum_i w_i^2 x_i^2
SparseOperator build_VHO(const Basis& basis, const OscillatorParams& p);
/// p^2 / 2 mu
SparseOperator build_kinetic(const Basis& basis, const OscillatorParams& p);
/// Oscillator Hamiltonian, written directly as its diagonal hbar w.(n + 1/2).
SparseOperator build_H_HO(const Basis& basis, const OscillatorParams& p);
/// E_n - E0 for every basis state, in basis order.
std::vector<double> excitation_energies(const Basis& basis, const OscillatorParams& p);
SparseOperator build_VC(const Basis& basis, const OscillatorParams& p);
/// (e / 2 mu*) (r ^ p) . B0
SparseOperator build_VZ(const Basis& basis, const OscillatorParams& p);
SparseOperator build_angular_momentum(const Basis& basis, const OscillatorParams& p, Axis axis);

struct Include {
  bool VC = true;
  bool VZ = true;
};
SparseOperator build_H_internal(const Basis& basis, const OscillatorParams& p, Include include = {});

/// Diagonal (-1)^{n_axis}: reflection of one axis.
SparseOperator parity(const Basis& basis, Axis axis);

}  // namespace chiral_casimir::model
