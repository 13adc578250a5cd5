#pragma once

#include "chiral_casimir/fock.hpp"

namespace chiral_casimir::linalg {

struct EigenPair {
  double value = 0.0;
  fock::StateVector vector;
  double relative_residual = 0.0;  // |(H - E) v| / |H v|
  int iterations = 0;
};

struct LanczosOptions {
  double residual_tol = 1e-10;
  int krylov_dim = 120;
  int max_restarts = 40;
};

/// Lowest eigenpair of a Hermitian sparse matrix by restarted Lanczos with full
/// reorthogonalization. Deterministic: the Krylov space is grown from `start`, and
/// each restart begins from the current Ritz vector. The lowest eigenvector must
/// have nonzero overlap with `start`.
/// Throws ComputationError (with the residual) if the tolerance is not reached.
EigenPair lowest_eigenpair(const fock::SparseOperator& h, const fock::StateVector& start,
                           const LanczosOptions& opts = {});

}  // namespace chiral_casimir::linalg
