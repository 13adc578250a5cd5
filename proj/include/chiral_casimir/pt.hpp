#pragma once

// Perturbed ground state of the chiral oscillator in a magnetic field: the analytic
// closed form, generic Rayleigh-Schroedinger theory, and an exact-diagonalization oracle.

#include <compare>
#include <map>
#include <vector>

#include "chiral_casimir/fock.hpp"
#include "chiral_casimir/model.hpp"

namespace chiral_casimir::pt {

using fock::Basis;
using fock::Complex;
using fock::FockIndex;
using fock::SparseOperator;
using fock::StateVector;
using model::OscillatorParams;

/// Order in the chiral coupling C and in the field B0.
struct OrderTag {
  int c = 0;
  int b = 0;
  constexpr int total() const { return c + b; }
  constexpr auto operator<=>(const OrderTag&) const = default;
};

inline constexpr OrderTag kOrderC{1, 0};
inline constexpr OrderTag kOrderB{0, 1};
inline constexpr OrderTag kOrderCB{1, 1};

/// Intermediate-normalized state split by perturbative order. The (0,0) component is
/// the unperturbed ground state; every other component is orthogonal to it.
class PerturbedState {
 public:
  PerturbedState(Basis basis, std::size_t ground_index);

  const Basis& basis() const { return basis_; }
  std::size_t ground_index() const { return ground_; }

  /// Zero vector for an order that was not computed.
  const StateVector& component(OrderTag tag) const;
  void set_component(OrderTag tag, StateVector v);
  std::vector<OrderTag> orders() const;

  /// Sum over all orders.
  StateVector total() const;
  Complex amplitude(const FockIndex& s) const;
  Complex amplitude(const FockIndex& s, OrderTag tag) const;
  /// Orders with a nonzero amplitude on s.
  std::vector<OrderTag> order_tags(const FockIndex& s) const;
  /// Every (state, order) pair with a nonzero amplitude, in basis order.
  std::map<FockIndex, std::vector<OrderTag>> tagged_states() const;

 private:
  Basis basis_;
  std::size_t ground_;
  std::map<OrderTag, StateVector> parts_;
  StateVector zero_;
};

/// Closed-form state: the B0^z block and its cyclic images x->y->z->x.
/// Throws DomainError for a basis cutoff below 5.
PerturbedState ground_state_analytic(const OscillatorParams& p, const Basis& basis);

struct Perturbation {
  OrderTag unit;  // order carried by one power of this operator
  SparseOperator op;
};

/// Rayleigh-Schroedinger corrections for every order that is at most linear in each
/// perturbation and has total order <= max_total_order. The ground level is the lowest
/// diagonal entry of h_diag. Throws DomainError if h_diag is not diagonal, and
/// ComputationError for a degenerate ground level or a vanishing denominator (naming
/// the state).
PerturbedState rs_ground_state(const Basis& basis, const SparseOperator& h_diag,
                               const std::vector<Perturbation>& perturbations, int max_total_order = 2);

/// rs_ground_state on the oscillator with V_C and V_Z; terms with a vanishing
/// coupling are skipped.
PerturbedState ground_state_rs(const OscillatorParams& p, const Basis& basis);

/// Normalized lowest eigenvector of H_internal (both couplings on), |000> amplitude
/// real and positive. Throws ComputationError if the eigensolver fails.
struct ExactGroundState {
  StateVector state;
  double energy = 0.0;
  double relative_residual = 0.0;
};
ExactGroundState ground_state_exact(const OscillatorParams& p, const Basis& basis);

/// <psi|r|psi> / <psi|psi> in metres.
Vec3 expectation_r(const OscillatorParams& p, const Basis& basis, const StateVector& psi);

/// <r> of a perturbed state kept to the state's own accuracy: only bra/ket order pairs
/// whose combined order is at most `through` (componentwise) contribute.
Vec3 expectation_r(const OscillatorParams& p, const PerturbedState& psi, OrderTag through = kOrderCB);

/// 1 - |<a|b>| for normalized a, b, evaluated as (1/2) min_phi |a - e^{i phi} b|^2
/// so that small deficits keep their relative precision.
double overlap_deficit(const StateVector& a, const StateVector& b);

}  // namespace chiral_casimir::pt
