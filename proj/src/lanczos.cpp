#include "chiral_casimir/lanczos.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "chiral_casimir/errors.hpp"
#include "chiral_casimir/kernels.hpp"

namespace chiral_casimir::linalg {

namespace {

using fock::Complex;
using fock::StateVector;

double norm_of(const StateVector& v) { return std::sqrt(kernels::norm_sq(v.span())); }

void scale_in_place(StateVector& v, double s) {
  for (std::size_t i = 0; i < v.dim(); ++i) {
    v[i] *= s;
  }
}

// Two passes of classical Gram-Schmidt against the stored basis.
void orthogonalize(StateVector& w, const std::vector<StateVector>& q) {
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& qi : q) {
      const Complex c = kernels::dot(qi.span(), w.span());
      kernels::axpy(-c, qi.span(), w.span());
    }
  }
}

}  // namespace

EigenPair lowest_eigenpair(const fock::SparseOperator& h, const StateVector& start,
                           const LanczosOptions& opts) {
  const std::size_t n = h.dim();
  if (start.dim() != n || n == 0) {
    throw DomainError("lowest_eigenpair: start vector dimension mismatch");
  }
  StateVector x = start;
  {
    const double s = norm_of(x);
    if (!(s > 0.0)) {
      throw DomainError("lowest_eigenpair: zero start vector");
    }
    scale_in_place(x, 1.0 / s);
  }

  const int m_max = static_cast<int>(std::min<std::size_t>(n, static_cast<std::size_t>(opts.krylov_dim)));
  EigenPair best;
  best.relative_residual = INFINITY;
  int total_iter = 0;

  for (int restart = 0; restart <= opts.max_restarts; ++restart) {
    std::vector<StateVector> q;
    std::vector<double> alpha;
    std::vector<double> beta;
    q.push_back(x);
    StateVector w(n);
    for (int j = 0; j < m_max; ++j) {
      fock::apply_into(h, q[j].span(), w.span());
      ++total_iter;
      alpha.push_back(kernels::dot(q[j].span(), w.span()).real());
      orthogonalize(w, q);
      const double b = norm_of(w);
      // invariant subspace reached (or numerically so)
      if (j + 1 == m_max || b <= 1e-14 * std::abs(alpha.back())) {
        break;
      }
      beta.push_back(b);
      StateVector next = w;
      scale_in_place(next, 1.0 / b);
      q.push_back(std::move(next));
    }

    const int m = static_cast<int>(alpha.size());
    // Eigen's tridiagonal QL has absolute thresholds; solve at unit scale (SI energies
    // are ~1e-19 J and otherwise lose about four digits).
    double scale = 0.0;
    for (const double a : alpha) {
      scale = std::max(scale, std::abs(a));
    }
    for (int i = 0; i + 1 < m; ++i) {
      scale = std::max(scale, beta[i]);
    }
    if (!(scale > 0.0)) {
      scale = 1.0;
    }
    Eigen::VectorXd d = Eigen::Map<Eigen::VectorXd>(alpha.data(), m) / scale;
    Eigen::VectorXd e = Eigen::VectorXd::Zero(std::max(m - 1, 0));
    for (int i = 0; i + 1 < m; ++i) {
      e[i] = beta[i] / scale;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
    if (m == 1) {
      tri.computeFromTridiagonal(d, Eigen::VectorXd(0));
    } else {
      tri.computeFromTridiagonal(d, e);
    }
    const double theta = tri.eigenvalues()[0] * scale;
    const Eigen::VectorXd y = tri.eigenvectors().col(0);

    StateVector ritz(n);
    for (int i = 0; i < m; ++i) {
      kernels::axpy(Complex(y[i]), q[i].span(), ritz.span());
    }
    scale_in_place(ritz, 1.0 / norm_of(ritz));

    StateVector hv = fock::apply(h, ritz);
    StateVector r = hv;
    kernels::axpy(Complex(-theta), ritz.span(), r.span());
    const double rel = norm_of(r) / norm_of(hv);

    if (rel < best.relative_residual) {
      best.value = theta;
      best.vector = ritz;
      best.relative_residual = rel;
    }
    if (rel <= opts.residual_tol) {
      break;
    }
    x = std::move(ritz);
  }
  best.iterations = total_iter;
  if (!(best.relative_residual <= opts.residual_tol)) {
    std::ostringstream msg;
    msg << "Lanczos did not converge: relative residual " << best.relative_residual << " after "
        << total_iter << " matrix-vector products";
    throw ComputationError(msg.str());
  }
  return best;
}

}  // namespace chiral_casimir::linalg
