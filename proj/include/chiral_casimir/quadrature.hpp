#pragma once

// Globally adaptive Gauss-Kronrod (7/15) quadrature for 3-vector integrands.

#include <functional>
#include <vector>

#include "chiral_casimir/errors.hpp"
#include "chiral_casimir/vec3.hpp"

namespace chiral_casimir::quad {

using VecFunction = std::function<Vec3(double)>;

/// One finite integration range. Several panels share a single error budget.
struct Panel {
  VecFunction f;
  double a;
  double b;
};

struct Options {
  double rel_tol = 1e-8;
  int max_subdivisions = 2000;
};

struct Result {
  Vec3 value{};
  double abs_error = 0.0;   // sum over intervals of |K15 - G7| (Euclidean norm)
  double abs_l1 = 0.0;      // K15 estimate of the integral of |f|
  int subdivisions = 0;     // bisections performed
  int evaluations = 0;
  /// abs_error / |value| (0 when both vanish)
  double relative_error() const;
};

/// Thrown when the subdivision budget runs out; carries the best estimate.
class NonConvergence : public ComputationError {
 public:
  NonConvergence(const std::string& what, Result best) : ComputationError(what), best_(best) {}
  const Result& best() const { return best_; }

 private:
  Result best_;
};

/// Converged when abs_error <= max(rel_tol |value|, 64 eps abs_l1). The interval with the
/// largest error estimate is bisected first (ties: lowest position). The returned value is
/// a pairwise sum over the final intervals in (panel, position) order, so results are
/// reproducible bit for bit.
Result integrate(const std::vector<Panel>& panels, const Options& opts);

/// Single interval convenience overload.
Result integrate(const VecFunction& f, double a, double b, const Options& opts);

}  // namespace chiral_casimir::quad
