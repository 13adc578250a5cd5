#include "chiral_casimir/response.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "chiral_casimir/constants.hpp"
#include "chiral_casimir/errors.hpp"

namespace chiral_casimir::response {

namespace {

using fock::Axis;
using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Complex = std::complex<double>;

const constants::PhysicalConstants& K() { return constants::constants(); }

MatrixXcd dense(const fock::SparseOperator& op) {
  MatrixXcd m = MatrixXcd::Zero(static_cast<Eigen::Index>(op.dim()), static_cast<Eigen::Index>(op.dim()));
  for (const auto& e : op.entries()) {
    m(static_cast<Eigen::Index>(e.row), static_cast<Eigen::Index>(e.col)) = e.value;
  }
  return m;
}

struct Spectrum {
  Eigen::VectorXd energy;
  MatrixXd vectors;  // columns are eigenstates (H_HO + V_C is real symmetric)
};

Spectrum diagonalize(const OscillatorParams& p, const fock::Basis& basis) {
  const MatrixXcd h = dense(model::build_H_internal(basis, p, {true, false}));
  const double scale = h.cwiseAbs().maxCoeff();
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(h.real() / scale);
  if (es.info() != Eigen::Success) {
    throw ComputationError("beta_static_oracle: dense eigensolver failed");
  }
  return {es.eigenvalues() * scale, es.eigenvectors()};
}

// Linear response amplitude of X to the perturbation W e^{-i w t} + h.c. in the ground state:
// sum_n X_0n W_n0 / (E0 - En + hbar w) + W_0n X_n0 / (E0 - En - hbar w)
Complex kubo(const Eigen::VectorXcd& x0n, const Eigen::VectorXcd& xn0, const Eigen::VectorXcd& w0n,
             const Eigen::VectorXcd& wn0, const Eigen::VectorXd& energy, double hbar_w) {
  Complex s = 0.0;
  for (Eigen::Index n = 1; n < energy.size(); ++n) {
    const double de = energy[0] - energy[n];
    s += x0n[n] * wn0[n] / (de + hbar_w) + w0n[n] * xn0[n] / (de - hbar_w);
  }
  return s;
}

struct Operators {
  std::array<fock::SparseOperator, 3> r;
  std::array<fock::SparseOperator, 3> p;
};

using Tensor = std::array<Complex, 27>;  // T[a*9 + b*3 + c]

Eigen::VectorXcd to_eigen(const fock::StateVector& v) {
  return Eigen::Map<const Eigen::VectorXcd>(v.span().data(), static_cast<Eigen::Index>(v.dim()));
}

fock::StateVector from_eigen(const Eigen::VectorXcd& v) {
  return fock::StateVector(std::vector<Complex>(v.data(), v.data() + v.size()));
}

// Wavevector-linear dipole response T_abc: <d_a> = T_abc k_b E_c, from the field coupling
// per unit k_b E_c, (e / mu* w) r_b p_c (velocity gauge, A = -i E / w). Only the entries
// with a, b, c distinct are computed.
Tensor response_tensor(const OscillatorParams& p, const Spectrum& s, const Operators& ops, double omega) {
  const double e = K().e_charge;
  const auto d = model::derive(p);
  const Eigen::MatrixXcd v = s.vectors.cast<Complex>();
  const fock::StateVector g = from_eigen(v.col(0));
  const double coupling = e / (d.mu_star * omega);
  Tensor t{};
  for (int a = 0; a < 3; ++a) {
    const Eigen::VectorXcd xn0 = v.adjoint() * to_eigen(fock::apply(ops.r[a], g)) * e;  // <n|d_a|0>
    const Eigen::VectorXcd x0n = xn0.conjugate();
    for (int b = 0; b < 3; ++b) {
      for (int c = 0; c < 3; ++c) {
        if (a == b || b == c || a == c) {
          continue;
        }
        // W|0> = r_b p_c |0>,  W^dagger|0> = p_c r_b |0>
        const auto w_g = fock::apply(ops.r[b], fock::apply(ops.p[c], g));
        const auto wd_g = fock::apply(ops.p[c], fock::apply(ops.r[b], g));
        const Eigen::VectorXcd wn0 = v.adjoint() * to_eigen(w_g) * coupling;
        const Eigen::VectorXcd w0n = (v.adjoint() * to_eigen(wd_g) * coupling).conjugate();
        t[a * 9 + b * 3 + c] = kubo(x0n, xn0, w0n, wn0, s.energy, K().hbar * omega);
      }
    }
  }
  return t;
}

// beta = -Im(eps : T) / 6, and the relative size of the part of T that is not a multiple of eps
std::pair<double, double> isotropic_projection(const Tensor& t) {
  Complex contraction = 0.0;
  double t_norm2 = 0.0;
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      for (int c = 0; c < 3; ++c) {
        contraction += static_cast<double>(levi_civita(a, b, c)) * t[a * 9 + b * 3 + c];
        t_norm2 += std::norm(t[a * 9 + b * 3 + c]);
      }
    }
  }
  // |eps|^2 = 6
  const double iso_norm2 = std::norm(contraction) / 6.0;
  const double residual = t_norm2 > 0.0 ? std::sqrt(std::max(t_norm2 - iso_norm2, 0.0) / t_norm2) : 0.0;
  return {-(contraction / 6.0).imag(), residual};
}

}  // namespace

std::string_view method_name(Method m) { return m == Method::closed_form ? "closed_form" : "sum_over_states"; }

double alpha_E_static(const OscillatorParams& p) {
  const auto d = model::derive(p);
  const double e = K().e_charge;
  double s = 0.0;
  for (const double w : p.omega) {
    s += 1.0 / (w * w);
  }
  return e * e / (3.0 * d.mu) * s;
}

double alpha_E_sum_over_states(const OscillatorParams& p, const fock::Basis& basis) {
  model::derive(p);
  if (basis.n_total_max() < 1) {
    throw DomainError("alpha_E_sum_over_states needs a basis cutoff of at least 1");
  }
  const auto eps = model::excitation_energies(basis, p);
  const double e = K().e_charge;
  const auto g = fock::StateVector::basis_state(basis.size(), basis.require_index({0, 0, 0}));
  double trace = 0.0;
  for (const Axis a : fock::kAxes) {
    const auto dr = fock::apply(model::build_position(basis, p, a), g);
    for (std::size_t n = 0; n < basis.size(); ++n) {
      if (eps[n] > 0.0) {
        trace += 2.0 * e * e * std::norm(dr[n]) / eps[n];
      }
    }
  }
  return trace / 3.0;
}

double ratio_static_closed_form(const OscillatorParams& p) {
  const auto d = model::derive(p);
  const double eta3 = d.eta[2][1] * d.eta[0][2] * d.eta[1][0];
  return K().hbar * p.C_chiral / (8.0 * d.mu * d.mu_star * p.omega[0] * p.omega[1] * p.omega[2]) * eta3;
}

namespace {

struct OracleDetail {
  double beta;
  double residual;
  double omega1;
};

OracleDetail oracle(const OscillatorParams& p, const fock::Basis& basis) {
  const auto d = model::derive(p);
  if (basis.n_total_max() < 8) {
    throw DomainError("beta_static_oracle needs a basis cutoff of at least 8");
  }
  const double omega1 = 1e-3 * std::min({p.omega[0], p.omega[1], p.omega[2]});
  if (p.C_chiral == 0.0) {
    return {0.0, 0.0, omega1};
  }
  Operators ops;
  for (const Axis a : fock::kAxes) {
    ops.r[fock::index(a)] = model::build_position(basis, p, a);
    ops.p[fock::index(a)] = model::build_momentum(basis, p, a);
  }
  // probe coupling with script_C = 1e-4: small enough that C^3 terms stay below 1e-7
  const double c_probe = std::abs(p.C_chiral) * 1e-4 / std::abs(d.script_C);
  OscillatorParams plus = p;
  OscillatorParams minus = p;
  plus.B0 = minus.B0 = {0.0, 0.0, 0.0};
  plus.C_chiral = c_probe;
  minus.C_chiral = -c_probe;
  const Spectrum sp = diagonalize(plus, basis);
  const Spectrum sm = diagonalize(minus, basis);

  // chirality-odd part, rescaled from the probe to the actual coupling
  auto linear_beta = [&](double omega, double* residual) {
    const Tensor tp = response_tensor(plus, sp, ops, omega);
    const Tensor tm = response_tensor(minus, sm, ops, omega);
    Tensor odd{};
    for (std::size_t i = 0; i < odd.size(); ++i) {
      odd[i] = (tp[i] - tm[i]) * (p.C_chiral / (2.0 * c_probe));
    }
    const auto [beta, res] = isotropic_projection(odd);
    if (residual != nullptr) {
      *residual = res;
    }
    return beta;
  };
  double residual = 0.0;
  const double f1 = linear_beta(omega1, &residual);
  const double f2 = linear_beta(2.0 * omega1, nullptr);
  // f(w) = f(0) + a w^2 + ...
  return {(4.0 * f1 - f2) / 3.0, residual, omega1};
}

}  // namespace

double beta_static_oracle(const OscillatorParams& p, const fock::Basis& basis) { return oracle(p, basis).beta; }

ResponseResult closed_form(const OscillatorParams& p) {
  ResponseResult r;
  r.alpha_E = alpha_E_static(p);
  r.ratio = ratio_static_closed_form(p);
  r.beta = r.ratio * r.alpha_E;
  r.D_effective = 1.0;
  r.method = Method::closed_form;
  return r;
}

ResponseResult sum_over_states(const OscillatorParams& p, const fock::Basis& basis) {
  const auto o = oracle(p, basis);
  ResponseResult r;
  r.alpha_E = alpha_E_sum_over_states(p, basis);
  r.beta = o.beta;
  r.ratio = r.beta / r.alpha_E;
  const double closed = ratio_static_closed_form(p);
  r.D_effective = closed != 0.0 ? r.ratio / closed : NAN;
  r.method = Method::sum_over_states;
  r.anisotropic_residual = o.residual;
  r.probe_frequency = o.omega1;
  return r;
}

}  // namespace chiral_casimir::response
