#include "chiral_casimir/casimir.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>

#include "chiral_casimir/constants.hpp"
#include "chiral_casimir/errors.hpp"
#include "chiral_casimir/kernels.hpp"

namespace chiral_casimir::casimir {

namespace {

using fock::Axis;
using fock::Complex;
using fock::StateVector;
using constants::kPi;

const constants::PhysicalConstants& K() { return constants::constants(); }

// ln(m_N/m_e) written so that exchanging the masses flips its sign exactly.
double log_mass_ratio(double m_N, double m_e) { return std::log(m_N) - std::log(m_e); }

double eta_triple(const Vec3& w) {
  return model::eta(w, 2, 1) * model::eta(w, 0, 2) * model::eta(w, 1, 0);
}

// C e^3 / (c eps0 mu mu*): common factor of the longitudinal closed forms
double longitudinal_factor(const OscillatorParams& p) {
  const auto d = model::derive(p);
  const double e = K().e_charge;
  return p.C_chiral * e * e * e / (K().c * K().eps0 * d.mu * d.mu_star);
}

StateVector resolvent(double kappa, const std::vector<double>& eps, const StateVector& x) {
  StateVector y(x.dim());
  kernels::shifted_inverse(kappa, eps, x.span(), y.span());
  return y;
}

}  // namespace

std::string_view method_name(Method m) { return m == Method::quadrature ? "quadrature" : "closed_form"; }

LongitudinalIntegrand::LongitudinalIntegrand(const OscillatorParams& p, const fock::Basis& basis)
    : p_(p), basis_(basis) {
  model::derive(p);
  eps_ = model::excitation_energies(basis, p);
  vc_ = model::build_VC(basis, p);
  vz_ = model::build_VZ(basis, p);
  const auto psi = pt::ground_state_rs(p, basis);
  zero_ = psi.component({0, 0});
  psi_c_ = psi.component(pt::kOrderC);
  psi_b_ = psi.component(pt::kOrderB);
  for (const Axis a : fock::kAxes) {
    const auto pa = model::build_momentum(basis, p, a);
    const int i = fock::index(a);
    p0_[i] = fock::apply(pa, zero_);
    pc_[i] = fock::apply(pa, psi_c_);
    pb_[i] = fock::apply(pa, psi_b_);
  }
}

std::array<double, 3> LongitudinalIntegrand::split_points() const {
  const double hbar = K().hbar;
  const double c = K().c;
  const double E0 = model::derive(p_).E0;
  return {E0 / (hbar * c), p_.m_e_eff * c / hbar, p_.m_N * c / hbar};
}

Vec3 LongitudinalIntegrand::single_mass(double k, double m) const {
  const double hbar = K().hbar;
  const double c = K().c;
  const double kappa = hbar * hbar * k * k / (2.0 * m) + hbar * c * k;
  // every denominator is kappa + (E_n - E0) >= kappa
  if (!(kappa > 0.0) || !std::isfinite(kappa)) {
    std::ostringstream msg;
    msg << "longitudinal integrand: non-positive resolvent denominator at k = " << k;
    throw ComputationError(msg.str());
  }
  const std::size_t n = basis_.size();
  // order C B0 pieces of Re{ <W|R V R p|W> - <0|R V R V R p|0> }, with V Hermitian moved
  // onto the bra so that only six matrix-vector products are needed per k
  const StateVector r0 = resolvent(kappa, eps_, zero_);
  const StateVector rc = resolvent(kappa, eps_, psi_c_);
  const StateVector rb = resolvent(kappa, eps_, psi_b_);
  const StateVector vc_r0 = fock::apply(vc_, r0);
  const StateVector vz_r0 = fock::apply(vz_, r0);
  const StateVector vz_rc = fock::apply(vz_, rc);
  const StateVector vc_rb = fock::apply(vc_, rb);
  StateVector w = fock::apply(vz_, resolvent(kappa, eps_, vc_r0));
  w += fock::apply(vc_, resolvent(kappa, eps_, vz_r0));

  const double pref = k * hbar * K().e_charge * K().e_charge / (3.0 * kPi * kPi * c * K().eps0 * m);
  Vec3 out{};
  StateVector u0(n), uc(n), ub(n);
  for (int a = 0; a < 3; ++a) {
    kernels::shifted_inverse(kappa, eps_, p0_[a].span(), u0.span());
    kernels::shifted_inverse(kappa, eps_, pc_[a].span(), uc.span());
    kernels::shifted_inverse(kappa, eps_, pb_[a].span(), ub.span());
    const Complex t1 = kernels::dot(vc_r0.span(), ub.span()) + kernels::dot(vz_r0.span(), uc.span()) +
                       kernels::dot(vz_rc.span(), u0.span()) + kernels::dot(vc_rb.span(), u0.span());
    const Complex t2 = kernels::dot(w.span(), u0.span());
    out[a] = pref * (t1 - t2).real();
  }
  return out;
}

Vec3 LongitudinalIntegrand::operator()(double k) const {
  return single_mass(k, p_.m_e_eff) - single_mass(k, p_.m_N);
}

Vec3 longitudinal_integrand(double k, const OscillatorParams& p, const fock::Basis& basis) {
  return LongitudinalIntegrand(p, basis)(k);
}

MomentumResult longitudinal_quadrature(const OscillatorParams& p, const fock::Basis& basis, double rel_tol) {
  if (!(rel_tol >= 1e-10 && rel_tol <= 1e-2)) {
    throw DomainError("longitudinal_quadrature: rel_tol must lie in [1e-10, 1e-2]");
  }
  const auto f = std::make_shared<LongitudinalIntegrand>(p, basis);
  auto s = f->split_points();
  std::sort(s.begin(), s.end());

  std::vector<quad::Panel> panels;
  panels.push_back({[f](double k) { return (*f)(k); }, 0.0, s[0]});
  auto log_panel = [&](double lo, double hi) {
    if (hi > lo) {
      panels.push_back({[f](double u) {
                          const double k = std::exp(u);
                          return k * (*f)(k);
                        },
                        std::log(lo), std::log(hi)});
    }
  };
  log_panel(s[0], s[1]);
  log_panel(s[1], s[2]);
  const double k3 = s[2];
  panels.push_back({[f, k3](double t) {
                      const double k = k3 / t;
                      return (k3 / (t * t)) * (*f)(k);
                    },
                    0.0, 1.0});

  quad::Options opts;
  opts.rel_tol = rel_tol;
  const auto r = quad::integrate(panels, opts);

  MomentumResult out;
  out.vector = r.value;
  out.parts.longitudinal = r.value;
  out.method = Method::quadrature;
  out.diagnostics.k_subdivisions = r.subdivisions;
  out.diagnostics.estimated_quadrature_error = r.relative_error();
  out.diagnostics.estimated_abs_error = r.abs_error;
  out.diagnostics.basis_cutoff = basis.n_total_max();
  return out;
}

Vec3 longitudinal_closed_form_response(const OscillatorParams& p) {
  const double S = p.omega[0] + p.omega[1] + p.omega[2];
  const double pref = longitudinal_factor(p) * log_mass_ratio(p.m_N, p.m_e_eff) / (96.0 * kPi * kPi * S);
  Vec3 g{};
  for (int i = 0; i < 3; ++i) {
    double s = 0.0;
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) {
        const int eps = levi_civita(i, j, k);
        if (eps != 0) {
          s += eps * model::eta(p.omega, k, j) / (p.omega[k] * p.omega[j]);
        }
      }
    }
    g[i] = pref * s;
  }
  return g;
}

MomentumResult longitudinal_closed_form(const OscillatorParams& p) {
  const Vec3 g = longitudinal_closed_form_response(p);
  MomentumResult out;
  out.vector = {g[0] * p.B0[0], g[1] * p.B0[1], g[2] * p.B0[2]};
  out.parts.longitudinal = out.vector;
  out.method = Method::closed_form;
  return out;
}

RotationalAverage rotational_average(const OscillatorParams& p, const FieldEvaluator& evaluator) {
  const double bmag = norm(p.B0) > 0.0 ? norm(p.B0) : 1.0;
  RotationalAverage out;
  for (int j = 0; j < 3; ++j) {
    OscillatorParams q = p;
    q.B0 = {0.0, 0.0, 0.0};
    q.B0[j] = bmag;
    const Vec3 once = evaluator(q);
    q.B0[j] = 2.0 * bmag;
    const Vec3 twice = evaluator(q);
    const double dev = norm(twice - 2.0 * once);
    if (dev > 1e-10 * norm(twice)) {
      std::ostringstream msg;
      msg << "rotational_average: evaluator is not linear in B0 (axis " << j << ", relative deviation "
          << dev / norm(twice) << ")";
      throw ComputationError(msg.str());
    }
    for (int i = 0; i < 3; ++i) {
      out.tensor[i][j] = once[i] / bmag;
    }
  }
  out.trace_over_3 = (out.tensor[0][0] + out.tensor[1][1] + out.tensor[2][2]) / 3.0;
  out.vector = out.trace_over_3 * p.B0;
  return out;
}

Vec3 longitudinal_rot_closed_form(const OscillatorParams& p) {
  const double prod = p.omega[0] * p.omega[1] * p.omega[2];
  const double g = longitudinal_factor(p) * log_mass_ratio(p.m_e_eff, p.m_N) / (144.0 * kPi * kPi * prod) *
                   eta_triple(p.omega);
  return g * p.B0;
}

Vec3 transverse_rot_closed_form(const OscillatorParams& p) {
  model::derive(p);
  const double e = K().e_charge;
  const double prod = p.omega[0] * p.omega[1] * p.omega[2];
  const double g = -kTransverseCoefficient * p.C_chiral * e * e * e /
                   (144.0 * kPi * kPi * K().c * K().eps0 * p.m_e_eff * p.m_e_eff * prod) * eta_triple(p.omega);
  return g * p.B0;
}

MomentumResult total_casimir(const OscillatorParams& p) {
  MomentumResult out;
  const Vec3 l = longitudinal_rot_closed_form(p);
  const Vec3 t = transverse_rot_closed_form(p);
  out.parts.longitudinal = l;
  out.parts.transverse = t;
  out.vector = l + t;
  out.method = Method::closed_form;
  return out;
}

Vec3 observable_form(double beta_over_alpha, double m_N, double m_e, const Vec3& B0) {
  if (!(m_N > 0.0 && m_e > 0.0)) {
    throw DomainError("observable_form: masses must be positive");
  }
  const double g = -(2.0 * K().fine_structure_alpha / (9.0 * kPi)) * beta_over_alpha *
                   (log_mass_ratio(m_N, m_e) + 1.0);
  return (g * K().e_charge) * B0;
}

}  // namespace chiral_casimir::casimir
