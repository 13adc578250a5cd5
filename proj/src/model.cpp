#include "chiral_casimir/model.hpp"

#include <cmath>
#include <string>

#include "chiral_casimir/constants.hpp"
#include "chiral_casimir/errors.hpp"

namespace chiral_casimir::model {

namespace {

using fock::Complex;
using fock::Ladder;
using fock::LadderPolynomial;

void require_finite(double v, const char* name) {
  if (!std::isfinite(v)) {
    throw DomainError(std::string("non-finite parameter: ") + name);
  }
}

double reduced_mass(const OscillatorParams& p) { return p.m_N * p.m_e_eff / (p.m_N + p.m_e_eff); }

LadderPolynomial raise(Axis a) { return LadderPolynomial::single(a, Ladder::raise); }
LadderPolynomial lower(Axis a) { return LadderPolynomial::single(a, Ladder::lower); }

}  // namespace

double eta(const Vec3& omega, int i, int j) { return (omega[i] - omega[j]) / (omega[i] + omega[j]); }

DerivedParams derive(const OscillatorParams& p) {
  static constexpr const char* kOmegaNames[3] = {"omega_x", "omega_y", "omega_z"};
  for (int i = 0; i < 3; ++i) {
    require_finite(p.omega[i], kOmegaNames[i]);
    if (p.omega[i] <= 0.0) {
      throw DomainError(std::string(kOmegaNames[i]) + " must be positive");
    }
    require_finite(p.B0[i], "B0");
  }
  require_finite(p.C_chiral, "C");
  require_finite(p.m_e_eff, "m_e_eff");
  require_finite(p.m_N, "m_N");
  if (p.m_e_eff <= 0.0 || p.m_N <= 0.0) {
    throw DomainError("masses must be positive");
  }
  if (p.m_N == p.m_e_eff) {
    throw DomainError("m_N == m_e_eff makes mu* singular");
  }

  const auto& k = constants::constants();
  DerivedParams d{};
  d.M_total = p.m_N + p.m_e_eff;
  d.mu = reduced_mass(p);
  d.mu_star = p.m_N * p.m_e_eff / (p.m_N - p.m_e_eff);
  const double sum = p.omega[0] + p.omega[1] + p.omega[2];
  const double prod = p.omega[0] * p.omega[1] * p.omega[2];
  d.E0 = 0.5 * k.hbar * sum;
  d.script_C = p.C_chiral * std::sqrt(k.hbar) / (std::pow(2.0 * d.mu, 1.5) * sum * std::sqrt(prod));
  for (int i = 0; i < 3; ++i) {
    const int j = (i + 1) % 3;
    const int l = (i + 2) % 3;
    d.script_B[i] = k.e_charge * p.B0[i] / (4.0 * d.mu_star * std::sqrt(p.omega[j] * p.omega[l]));
    for (int m = 0; m < 3; ++m) {
      d.eta[i][m] = eta(p.omega, i, m);
    }
  }
  return d;
}

void validate_physical(const OscillatorParams& p) {
  derive(p);
  if (!(p.m_N > p.m_e_eff)) {
    throw DomainError("m_N must exceed m_e_eff");
  }
}

OscillatorParams ref1() {
  const auto& k = constants::constants();
  OscillatorParams p;
  p.omega = {2.0e14, 2.1e14, 2.2e14};
  p.C_chiral = 4.5e6;
  p.m_e_eff = k.m_electron;
  p.m_N = 12.0 * k.atomic_mass_unit;
  p.B0 = {20.0, 30.0, 40.0};
  return p;
}

double oscillator_length(const OscillatorParams& p, Axis axis) {
  return std::sqrt(constants::constants().hbar / (2.0 * reduced_mass(p) * p.omega[fock::index(axis)]));
}

LadderPolynomial position_poly(const OscillatorParams& p, Axis axis) {
  return Complex(oscillator_length(p, axis)) * (lower(axis) + raise(axis));
}

LadderPolynomial momentum_poly(const OscillatorParams& p, Axis axis) {
  const double t = std::sqrt(constants::constants().hbar * reduced_mass(p) * p.omega[fock::index(axis)] / 2.0);
  return Complex(0.0, t) * (raise(axis) - lower(axis));
}

LadderPolynomial angular_momentum_poly(const OscillatorParams& p, Axis axis) {
  const int i = fock::index(axis);
  const Axis j = fock::axis_from_index((i + 1) % 3);
  const Axis l = fock::axis_from_index((i + 2) % 3);
  return position_poly(p, j) * momentum_poly(p, l) - position_poly(p, l) * momentum_poly(p, j);
}

SparseOperator build_position(const Basis& basis, const OscillatorParams& p, Axis axis) {
  return fock::project(basis, position_poly(p, axis));
}

SparseOperator build_momentum(const Basis& basis, const OscillatorParams& p, Axis axis) {
  return fock::project(basis, momentum_poly(p, axis));
}

SparseOperator build_VHO(const Basis& basis, const OscillatorParams& p) {
  const double mu = reduced_mass(p);
  LadderPolynomial v;
  for (const Axis a : fock::kAxes) {
    const double w = p.omega[fock::index(a)];
    v += Complex(0.5 * mu * w * w) * (position_poly(p, a) * position_poly(p, a));
  }
  return fock::project(basis, v);
}

SparseOperator build_kinetic(const Basis& basis, const OscillatorParams& p) {
  const double mu = reduced_mass(p);
  LadderPolynomial t;
  for (const Axis a : fock::kAxes) {
    t += Complex(0.5 / mu) * (momentum_poly(p, a) * momentum_poly(p, a));
  }
  return fock::project(basis, t);
}

std::vector<double> excitation_energies(const Basis& basis, const OscillatorParams& p) {
  const double hbar = constants::constants().hbar;
  std::vector<double> out(basis.size());
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const auto& s = basis[k];
    out[k] = hbar * (p.omega[0] * s.nx + p.omega[1] * s.ny + p.omega[2] * s.nz);
  }
  return out;
}

SparseOperator build_H_HO(const Basis& basis, const OscillatorParams& p) {
  const double E0 = 0.5 * constants::constants().hbar * (p.omega[0] + p.omega[1] + p.omega[2]);
  auto e = excitation_energies(basis, p);
  for (auto& v : e) {
    v += E0;
  }
  return SparseOperator::diagonal(e);
}

SparseOperator build_VC(const Basis& basis, const OscillatorParams& p) {
  if (p.C_chiral == 0.0) {
    return SparseOperator::zero(basis.size());
  }
  return fock::project(basis, Complex(p.C_chiral) * (position_poly(p, Axis::x) * position_poly(p, Axis::y) *
                                                      position_poly(p, Axis::z)));
}

SparseOperator build_VZ(const Basis& basis, const OscillatorParams& p) {
  const double mu_star = p.m_N * p.m_e_eff / (p.m_N - p.m_e_eff);
  const double pref = constants::constants().e_charge / (2.0 * mu_star);
  LadderPolynomial v;
  for (const Axis a : fock::kAxes) {
    const double b = p.B0[fock::index(a)];
    if (b != 0.0) {
      v += Complex(pref * b) * angular_momentum_poly(p, a);
    }
  }
  return fock::project(basis, v);
}

SparseOperator build_angular_momentum(const Basis& basis, const OscillatorParams& p, Axis axis) {
  return fock::project(basis, angular_momentum_poly(p, axis));
}

SparseOperator build_H_internal(const Basis& basis, const OscillatorParams& p, Include include) {
  SparseOperator h = build_H_HO(basis, p);
  if (include.VC) {
    h = fock::add(h, build_VC(basis, p));
  }
  if (include.VZ) {
    h = fock::add(h, build_VZ(basis, p));
  }
  return h;
}

SparseOperator parity(const Basis& basis, Axis axis) {
  std::vector<double> d(basis.size());
  for (std::size_t k = 0; k < basis.size(); ++k) {
    d[k] = (basis[k][axis] % 2 == 0) ? 1.0 : -1.0;
  }
  return SparseOperator::diagonal(d);
}

}  // namespace chiral_casimir::model
