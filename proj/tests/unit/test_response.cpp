#include <cmath>
#include <numbers>
#include <random>

#include "chiral_casimir/constants.hpp"
#include "chiral_casimir/errors.hpp"
#include "chiral_casimir/response.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace chiral_casimir;
using fock::Basis;
using test_support::close_rel;

namespace {
const auto& K = constants::constants();

model::OscillatorParams near_isotropic(double eps) {
  auto p = model::ref1();
  const double w = 2.0e14;
  p.omega = {w, w * (1.0 + 0.5 * eps), w * (1.0 + eps)};
  return p;
}
}  // namespace

TEST_CASE("response: static polarizability re-keyed") {
  const auto p = model::ref1();
  const auto d = model::derive(p);
  double s = 0.0;
  for (const double w : p.omega) {
    s += 1.0 / (w * w);
  }
  CHECK(close_rel(response::alpha_E_static(p), K.e_charge * K.e_charge / (3.0 * d.mu) * s, 1e-15));
}

TEST_CASE("response: sum over states reproduces the static polarizability (random parameters)") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 8; ++trial) {
    const auto p = test_support::random_params(rng);
    CHECK(close_rel(response::alpha_E_sum_over_states(p, Basis(3)), response::alpha_E_static(p), 1e-12));
  }
}

TEST_CASE("response: closed-form ratio re-keyed") {
  const auto p = model::ref1();
  const auto d = model::derive(p);
  const double eta3 = d.eta[2][1] * d.eta[0][2] * d.eta[1][0];
  const double expect = K.hbar * p.C_chiral / (8.0 * d.mu * d.mu_star * p.omega[0] * p.omega[1] * p.omega[2]) * eta3;
  CHECK(close_rel(response::ratio_static_closed_form(p), expect, 1e-14));
  const auto cf = response::closed_form(p);
  CHECK(close_rel(cf.ratio, expect, 1e-14));
  CHECK(close_rel(cf.beta, expect * cf.alpha_E, 1e-14));
  CHECK(cf.D_effective == 1.0);
}

TEST_CASE("response: oracle beta is odd in C and vanishes at C = 0") {
  auto p = near_isotropic(0.05);
  const Basis basis(8);
  const double b = response::beta_static_oracle(p, basis);
  CHECK(b != 0.0);
  p.C_chiral = -p.C_chiral;
  CHECK(close_rel(response::beta_static_oracle(p, basis), -b, 1e-12));
  p.C_chiral = 0.0;
  CHECK(response::beta_static_oracle(p, basis) == 0.0);
  CHECK_THROWS_AS(response::beta_static_oracle(near_isotropic(0.05), Basis(7)), DomainError);
}

TEST_CASE("response: oracle ratio approaches the closed form as anisotropy shrinks") {
  const Basis basis(10);
  double prev_dev = 1.0;
  for (const double eps : {0.05, 0.02, 0.01}) {
    const auto r = response::sum_over_states(near_isotropic(eps), basis);
    CHECK(r.method == response::Method::sum_over_states);
    CHECK(close_rel(r.D_effective, 1.0, 0.10));
    const double dev = std::abs(r.D_effective - 1.0);
    CHECK(dev < prev_dev);
    prev_dev = dev;
    CHECK(r.probe_frequency > 0.0);
  }
}
