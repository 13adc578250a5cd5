#include "chiral_casimir/pt.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "chiral_casimir/errors.hpp"
#include "chiral_casimir/kernels.hpp"
#include "chiral_casimir/lanczos.hpp"

namespace chiral_casimir::pt {

using fock::Axis;

PerturbedState::PerturbedState(Basis basis, std::size_t ground_index)
    : basis_(std::move(basis)), ground_(ground_index), zero_(basis_.size()) {
  StateVector g = StateVector::basis_state(basis_.size(), ground_index);
  parts_.emplace(OrderTag{0, 0}, std::move(g));
}

const StateVector& PerturbedState::component(OrderTag tag) const {
  const auto it = parts_.find(tag);
  return it == parts_.end() ? zero_ : it->second;
}

void PerturbedState::set_component(OrderTag tag, StateVector v) {
  if (v.dim() != basis_.size()) {
    throw DomainError("PerturbedState: component dimension mismatch");
  }
  parts_[tag] = std::move(v);
}

std::vector<OrderTag> PerturbedState::orders() const {
  std::vector<OrderTag> out;
  for (const auto& [tag, v] : parts_) {
    out.push_back(tag);
  }
  return out;
}

StateVector PerturbedState::total() const {
  StateVector s(basis_.size());
  for (const auto& [tag, v] : parts_) {
    s += v;
  }
  return s;
}

Complex PerturbedState::amplitude(const FockIndex& s) const {
  const std::size_t k = basis_.require_index(s);
  Complex a = 0.0;
  for (const auto& [tag, v] : parts_) {
    a += v[k];
  }
  return a;
}

Complex PerturbedState::amplitude(const FockIndex& s, OrderTag tag) const {
  return component(tag)[basis_.require_index(s)];
}

std::vector<OrderTag> PerturbedState::order_tags(const FockIndex& s) const {
  const std::size_t k = basis_.require_index(s);
  std::vector<OrderTag> out;
  for (const auto& [tag, v] : parts_) {
    if (v[k] != Complex(0.0)) {
      out.push_back(tag);
    }
  }
  return out;
}

std::map<FockIndex, std::vector<OrderTag>> PerturbedState::tagged_states() const {
  std::map<FockIndex, std::vector<OrderTag>> out;
  for (std::size_t k = 0; k < basis_.size(); ++k) {
    for (const auto& [tag, v] : parts_) {
      if (v[k] != Complex(0.0)) {
        out[basis_[k]].push_back(tag);
      }
    }
  }
  return out;
}

PerturbedState ground_state_analytic(const OscillatorParams& p, const Basis& basis) {
  if (basis.n_total_max() < 5) {
    throw DomainError("ground_state_analytic needs a basis cutoff of at least 5 (|221> has 5 quanta)");
  }
  const auto d = model::derive(p);
  const std::size_t dim = basis.size();
  PerturbedState out(basis, basis.require_index({0, 0, 0}));
  StateVector c1(dim);
  StateVector b1(dim);
  StateVector cb(dim);
  const Complex i(0.0, 1.0);
  const double sqrt2 = std::sqrt(2.0);
  const auto& w = p.omega;

  c1[basis.require_index({1, 1, 1})] += -d.script_C;

  // (X, Y, Z) runs over (x, y, z), (y, z, x), (z, x, y).
  for (int r = 0; r < 3; ++r) {
    const int X = r;
    const int Y = (r + 1) % 3;
    const int Z = (r + 2) % 3;
    auto state = [&](int nX, int nY, int nZ) {
      FockIndex s;
      s[fock::axis_from_index(X)] = nX;
      s[fock::axis_from_index(Y)] = nY;
      s[fock::axis_from_index(Z)] = nZ;
      return basis.require_index(s);
    };
    const double B = d.script_B[Z];
    const double e = d.eta[Y][X];
    const double C = d.script_C;
    b1[state(1, 1, 0)] += -i * B * e;
    cb[state(0, 0, 1)] += i * B * C * e;
    cb[state(2, 2, 1)] += 2.0 * i * B * C * e;
    cb[state(2, 0, 1)] += -sqrt2 * i * B * C * (2.0 * w[X] - w[Z] * e) / (w[Z] + 2.0 * w[X]);
    cb[state(0, 2, 1)] += sqrt2 * i * B * C * (2.0 * w[Y] + w[Z] * e) / (w[Z] + 2.0 * w[Y]);
  }
  out.set_component(kOrderC, std::move(c1));
  out.set_component(kOrderB, std::move(b1));
  out.set_component(kOrderCB, std::move(cb));
  return out;
}

PerturbedState rs_ground_state(const Basis& basis, const SparseOperator& h_diag,
                               const std::vector<Perturbation>& perturbations, int max_total_order) {
  const std::size_t dim = basis.size();
  if (h_diag.dim() != dim) {
    throw DomainError("rs_ground_state: dimension mismatch");
  }
  if (!h_diag.is_diagonal()) {
    throw DomainError("rs_ground_state: unperturbed Hamiltonian must be diagonal");
  }
  if (perturbations.size() > 16) {
    throw DomainError("rs_ground_state: too many perturbations");
  }
  for (const auto& v : perturbations) {
    if (v.op.dim() != dim) {
      throw DomainError("rs_ground_state: perturbation dimension mismatch");
    }
  }
  const auto dv = h_diag.diagonal_values();
  std::vector<double> energy(dim);
  std::size_t g = 0;
  for (std::size_t n = 0; n < dim; ++n) {
    energy[n] = dv[n].real();
    if (energy[n] < energy[g]) {
      g = n;
    }
  }
  // inverse denominators 1/(E_g - E_n), zero on the ground state
  std::vector<double> inv(dim, 0.0);
  for (std::size_t n = 0; n < dim; ++n) {
    if (n == g) {
      continue;
    }
    const double den = energy[g] - energy[n];
    const double scale = std::max(std::abs(energy[g]), std::abs(energy[n]));
    if (!(std::abs(den) > 8.0 * std::numeric_limits<double>::epsilon() * scale)) {
      std::ostringstream msg;
      msg << "rs_ground_state: vanishing denominator E_0 - E_n at state " << basis[n].label()
          << " (degenerate with the ground level " << basis[g].label() << ")";
      throw ComputationError(msg.str());
    }
    inv[n] = 1.0 / den;
  }

  const std::size_t nch = perturbations.size();
  const std::size_t nsub = std::size_t{1} << nch;
  std::vector<StateVector> psi(nsub);
  std::vector<Complex> e_corr(nsub, 0.0);
  psi[0] = StateVector::basis_state(dim, g);

  // subsets in order of increasing size, so every proper subset is ready
  std::vector<std::size_t> order;
  for (int size = 1; size <= static_cast<int>(nch); ++size) {
    if (size > max_total_order) {
      break;
    }
    for (std::size_t s = 1; s < nsub; ++s) {
      if (__builtin_popcountll(s) == size) {
        order.push_back(s);
      }
    }
  }

  PerturbedState out(basis, g);
  std::map<OrderTag, StateVector> by_tag;
  for (const std::size_t s : order) {
    StateVector rhs(dim);
    Complex e_s = 0.0;
    for (std::size_t a = 0; a < nch; ++a) {
      if (!(s & (std::size_t{1} << a))) {
        continue;
      }
      const StateVector vpsi = fock::apply(perturbations[a].op, psi[s ^ (std::size_t{1} << a)]);
      rhs += vpsi;
      e_s += vpsi[g];
    }
    e_corr[s] = e_s;
    // - sum over nonempty proper subsets T of E_T psi_{S\T}
    for (std::size_t t = (s - 1) & s; t != 0; t = (t - 1) & s) {
      if (e_corr[t] != Complex(0.0)) {
        kernels::axpy(-e_corr[t], psi[s ^ t].span(), rhs.span());
      }
    }
    StateVector v(dim);
    kernels::scale_real(inv, rhs.span(), v.span());
    psi[s] = v;

    OrderTag tag{};
    for (std::size_t a = 0; a < nch; ++a) {
      if (s & (std::size_t{1} << a)) {
        tag.c += perturbations[a].unit.c;
        tag.b += perturbations[a].unit.b;
      }
    }
    auto [it, inserted] = by_tag.try_emplace(tag, StateVector(dim));
    it->second += v;
  }
  for (auto& [tag, v] : by_tag) {
    out.set_component(tag, std::move(v));
  }
  return out;
}

PerturbedState ground_state_rs(const OscillatorParams& p, const Basis& basis) {
  model::derive(p);
  std::vector<Perturbation> v;
  if (p.C_chiral != 0.0) {
    v.push_back({kOrderC, model::build_VC(basis, p)});
  }
  if (p.B0[0] != 0.0 || p.B0[1] != 0.0 || p.B0[2] != 0.0) {
    v.push_back({kOrderB, model::build_VZ(basis, p)});
  }
  return rs_ground_state(basis, model::build_H_HO(basis, p), v, 2);
}

ExactGroundState ground_state_exact(const OscillatorParams& p, const Basis& basis) {
  model::derive(p);
  const SparseOperator h = model::build_H_internal(basis, p);
  const std::size_t g = basis.require_index({0, 0, 0});
  linalg::LanczosOptions opts;
  opts.residual_tol = 1e-10;
  auto ep = linalg::lowest_eigenpair(h, StateVector::basis_state(basis.size(), g), opts);
  const Complex a0 = ep.vector[g];
  if (std::abs(a0) == 0.0) {
    throw ComputationError("ground_state_exact: eigenvector orthogonal to |000>");
  }
  const Complex phase = std::conj(a0) / std::abs(a0);
  StateVector v = ep.vector;
  v *= phase;
  v = fock::normalized(v);
  v[g] = Complex(v[g].real(), 0.0);
  return {std::move(v), ep.value, ep.relative_residual};
}

Vec3 expectation_r(const OscillatorParams& p, const Basis& basis, const StateVector& psi) {
  const double nrm2 = kernels::norm_sq(psi.span());
  if (!(nrm2 > 0.0)) {
    throw DomainError("expectation_r: zero state");
  }
  Vec3 r{};
  for (const Axis a : fock::kAxes) {
    r[fock::index(a)] = fock::matrix_element(psi, model::build_position(basis, p, a), psi).real() / nrm2;
  }
  return r;
}

Vec3 expectation_r(const OscillatorParams& p, const PerturbedState& psi, OrderTag through) {
  const auto tags = psi.orders();
  auto within = [&](OrderTag a, OrderTag b) { return a.c + b.c <= through.c && a.b + b.b <= through.b; };
  double nrm2 = 0.0;
  for (const auto a : tags) {
    for (const auto b : tags) {
      if (within(a, b)) {
        nrm2 += fock::inner(psi.component(a), psi.component(b)).real();
      }
    }
  }
  Vec3 r{};
  for (const Axis ax : fock::kAxes) {
    const auto x = model::build_position(psi.basis(), p, ax);
    double acc = 0.0;
    for (const auto a : tags) {
      for (const auto b : tags) {
        if (within(a, b)) {
          acc += fock::matrix_element(psi.component(a), x, psi.component(b)).real();
        }
      }
    }
    r[fock::index(ax)] = acc / nrm2;
  }
  return r;
}

double overlap_deficit(const StateVector& a, const StateVector& b) {
  if (a.dim() != b.dim()) {
    throw DomainError("overlap_deficit: dimension mismatch");
  }
  const Complex ov = fock::inner(b, a);
  const Complex phase = std::abs(ov) > 0.0 ? ov / std::abs(ov) : Complex(1.0);
  double s = 0.0;
  for (std::size_t k = 0; k < a.dim(); ++k) {
    s += std::norm(a[k] - phase * b[k]);
  }
  return 0.5 * s;
}

}  // namespace chiral_casimir::pt
