#include "chiral_casimir/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace chiral_casimir::quad {

namespace {

constexpr double kXgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                            0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                            0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                            0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                            0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                            0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                            0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for kXgk[1], kXgk[3], kXgk[5], kXgk[7]
constexpr double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Interval {
  std::size_t panel;
  double a;
  double b;
  Vec3 value;
  double error;
  double l1;
};

Interval evaluate(const VecFunction& f, std::size_t panel, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  Vec3 kron{};
  Vec3 gauss{};
  double l1 = 0.0;
  for (int i = 0; i < 8; ++i) {
    const int npts = (i == 7) ? 1 : 2;
    for (int s = 0; s < npts; ++s) {
      const double x = (s == 0) ? c - h * kXgk[i] : c + h * kXgk[i];
      const Vec3 v = f(x);
      kron = kron + kWgk[i] * v;
      l1 += kWgk[i] * norm(v);
      if (i % 2 == 1) {
        gauss = gauss + kWg[i / 2] * v;
      }
    }
  }
  kron = h * kron;
  gauss = h * gauss;
  return {panel, a, b, kron, norm(kron - gauss), std::abs(h) * l1};
}

Vec3 pairwise_sum(const std::vector<Vec3>& v, std::size_t lo, std::size_t hi) {
  if (hi - lo == 0) {
    return {};
  }
  if (hi - lo == 1) {
    return v[lo];
  }
  const std::size_t mid = lo + (hi - lo) / 2;
  return pairwise_sum(v, lo, mid) + pairwise_sum(v, mid, hi);
}

double pairwise_sum(const std::vector<double>& v, std::size_t lo, std::size_t hi) {
  if (hi - lo == 0) {
    return 0.0;
  }
  if (hi - lo == 1) {
    return v[lo];
  }
  const std::size_t mid = lo + (hi - lo) / 2;
  return pairwise_sum(v, lo, mid) + pairwise_sum(v, mid, hi);
}

Result summarize(std::vector<Interval> iv, int subdivisions, int evaluations) {
  std::sort(iv.begin(), iv.end(), [](const Interval& l, const Interval& r) {
    return l.panel != r.panel ? l.panel < r.panel : l.a < r.a;
  });
  std::vector<Vec3> vals;
  std::vector<double> errs;
  std::vector<double> l1s;
  for (const auto& i : iv) {
    vals.push_back(i.value);
    errs.push_back(i.error);
    l1s.push_back(i.l1);
  }
  Result r;
  r.value = pairwise_sum(vals, 0, vals.size());
  r.abs_error = pairwise_sum(errs, 0, errs.size());
  r.abs_l1 = pairwise_sum(l1s, 0, l1s.size());
  r.subdivisions = subdivisions;
  r.evaluations = evaluations;
  return r;
}

bool converged(const Result& r, double rel_tol) {
  const double floor = 64.0 * std::numeric_limits<double>::epsilon() * r.abs_l1;
  return r.abs_error <= std::max(rel_tol * norm(r.value), floor);
}

}  // namespace

double Result::relative_error() const {
  const double n = norm(value);
  if (n == 0.0) {
    return abs_error == 0.0 ? 0.0 : INFINITY;
  }
  return abs_error / n;
}

Result integrate(const std::vector<Panel>& panels, const Options& opts) {
  if (!(opts.rel_tol > 0.0)) {
    throw DomainError("quadrature: rel_tol must be positive");
  }
  std::vector<Interval> iv;
  int evals = 0;
  for (std::size_t p = 0; p < panels.size(); ++p) {
    if (!(std::isfinite(panels[p].a) && std::isfinite(panels[p].b))) {
      throw DomainError("quadrature: panel limits must be finite");
    }
    iv.push_back(evaluate(panels[p].f, p, panels[p].a, panels[p].b));
    evals += 15;
  }
  int subdivisions = 0;
  for (;;) {
    Result r = summarize(iv, subdivisions, evals);
    if (converged(r, opts.rel_tol)) {
      return r;
    }
    if (subdivisions >= opts.max_subdivisions) {
      std::ostringstream msg;
      msg << "quadrature did not converge within " << opts.max_subdivisions
          << " subdivisions: estimate norm " << norm(r.value) << ", error bound " << r.abs_error;
      throw NonConvergence(msg.str(), r);
    }
    // bisect the interval with the largest error (first one on ties)
    std::size_t worst = 0;
    for (std::size_t k = 1; k < iv.size(); ++k) {
      if (iv[k].error > iv[worst].error) {
        worst = k;
      }
    }
    const Interval w = iv[worst];
    const double mid = 0.5 * (w.a + w.b);
    if (!(mid > std::min(w.a, w.b) && mid < std::max(w.a, w.b))) {
      throw NonConvergence("quadrature: interval cannot be bisected further", r);
    }
    const VecFunction& f = panels[w.panel].f;
    iv[worst] = evaluate(f, w.panel, w.a, mid);
    iv.push_back(evaluate(f, w.panel, mid, w.b));
    evals += 30;
    ++subdivisions;
  }
}

Result integrate(const VecFunction& f, double a, double b, const Options& opts) {
  return integrate(std::vector<Panel>{{f, a, b}}, opts);
}

}  // namespace chiral_casimir::quad
