#pragma once

#include <cmath>
#include <complex>
#include <random>

#include "chiral_casimir/fock.hpp"
#include "chiral_casimir/model.hpp"

namespace test_support {

inline bool close_rel(double a, double b, double rel, double abs_floor = 0.0) {
  return std::abs(a - b) <= std::max(rel * std::max(std::abs(a), std::abs(b)), abs_floor);
}

inline bool close_rel(std::complex<double> a, std::complex<double> b, double rel, double abs_floor = 0.0) {
  return std::abs(a - b) <= std::max(rel * std::max(std::abs(a), std::abs(b)), abs_floor);
}

/// Random complex vector with entries in the unit square.
inline chiral_casimir::fock::StateVector random_state(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  chiral_casimir::fock::StateVector v(n);
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = {u(rng), u(rng)};
  }
  return v;
}

/// Random oscillator with frequencies near 2e14 rad/s and small couplings.
inline chiral_casimir::model::OscillatorParams random_params(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  auto p = chiral_casimir::model::ref1();
  for (auto& w : p.omega) {
    w = 2.0e14 * (1.0 + 0.2 * u(rng));
  }
  p.C_chiral = 5e6 * u(rng);
  for (auto& b : p.B0) {
    b = 40.0 * u(rng);
  }
  return p;
}

}  // namespace test_support
