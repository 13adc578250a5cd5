#include <cmath>
#include <random>

#include "chiral_casimir/constants.hpp"
#include "chiral_casimir/errors.hpp"
#include "chiral_casimir/model.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace chiral_casimir;
using namespace chiral_casimir::model;
using fock::Complex;
using fock::FockIndex;

namespace {
const auto& K = constants::constants();

bool operator_equal(const SparseOperator& a, const SparseOperator& b, double tol) {
  const auto diff = fock::subtract(a, b);
  return diff.max_abs() <= tol * std::max(a.max_abs(), b.max_abs());
}
}  // namespace

TEST_CASE("model: derive") {
  OscillatorParams p = ref1();
  p.omega = {1.0, 1.2, 1.0};
  const auto d = derive(p);
  CHECK(d.eta[0][1] == doctest::Approx(-1.0 / 11.0).epsilon(1e-15));

  p = ref1();
  p.m_N = 2.0 * p.m_e_eff;
  const auto d2 = derive(p);
  CHECK(d2.mu == doctest::Approx(2.0 / 3.0 * p.m_e_eff).epsilon(1e-15));
  CHECK(d2.mu_star == doctest::Approx(2.0 * p.m_e_eff).epsilon(1e-15));
  CHECK(d2.M_total == doctest::Approx(3.0 * p.m_e_eff).epsilon(1e-15));

  p = ref1();
  p.omega = {3e14, 3e14, 3e14};
  for (const auto& row : derive(p).eta) {
    for (double e : row) {
      CHECK(e == 0.0);
    }
  }

  p = ref1();
  const auto r = derive(p);
  CHECK(r.E0 == doctest::Approx(0.5 * K.hbar * (p.omega[0] + p.omega[1] + p.omega[2])).epsilon(1e-15));
  const double sc = p.C_chiral * std::sqrt(K.hbar) /
                    (std::pow(2.0 * r.mu, 1.5) * (p.omega[0] + p.omega[1] + p.omega[2]) *
                     std::sqrt(p.omega[0] * p.omega[1] * p.omega[2]));
  CHECK(r.script_C == doctest::Approx(sc).epsilon(1e-14));
  CHECK(r.script_B[2] ==
        doctest::Approx(K.e_charge * p.B0[2] / (4.0 * r.mu_star * std::sqrt(p.omega[0] * p.omega[1]))).epsilon(1e-14));
  CHECK(r.mu < p.m_e_eff);
}

TEST_CASE("model: derive errors") {
  auto p = ref1();
  p.m_N = p.m_e_eff;
  CHECK_THROWS_AS(derive(p), DomainError);
  p = ref1();
  p.omega[1] = 0.0;
  CHECK_THROWS_AS(derive(p), DomainError);
  p = ref1();
  p.omega[2] = -1.0;
  CHECK_THROWS_AS(derive(p), DomainError);
  p = ref1();
  p.m_e_eff = -1.0;
  CHECK_THROWS_AS(derive(p), DomainError);
  p = ref1();
  p.C_chiral = NAN;
  CHECK_THROWS_AS(derive(p), DomainError);
  p = ref1();
  std::swap(p.m_N, p.m_e_eff);
  CHECK_NOTHROW(derive(p));
  CHECK(derive(p).mu_star < 0.0);
  CHECK_THROWS_AS(validate_physical(p), DomainError);
  CHECK_NOTHROW(validate_physical(ref1()));
}

TEST_CASE("model: eta antisymmetry property") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 200; ++t) {
    const auto d = derive(test_support::random_params(rng));
    for (int i = 0; i < 3; ++i) {
      CHECK(d.eta[i][i] == 0.0);
      for (int j = 0; j < 3; ++j) {
        CHECK(d.eta[i][j] == -d.eta[j][i]);
        CHECK(std::abs(d.eta[i][j]) < 1.0);
      }
    }
  }
}

TEST_CASE("model: position and momentum") {
  const auto p = ref1();
  const fock::Basis b(8);
  const double mu = derive(p).mu;
  const auto x = build_position(b, p, Axis::x);
  CHECK(x.at(b.require_index({1, 0, 0}), 0).real() ==
        doctest::Approx(std::sqrt(K.hbar / (2.0 * mu * p.omega[0]))).epsilon(1e-14));
  CHECK(x.at(0, 0) == Complex(0.0));
  for (const Axis a : fock::kAxes) {
    const auto xa = build_position(b, p, a);
    const auto pa = build_momentum(b, p, a);
    CHECK(fock::hermiticity_defect(xa) <= 1e-14 * xa.max_abs());
    CHECK(fock::hermiticity_defect(pa) <= 1e-14 * pa.max_abs());
    const auto comm = fock::subtract(fock::multiply(xa, pa), fock::multiply(pa, xa));
    for (std::size_t r = 0; r < b.size(); ++r) {
      if (b[r].total() >= b.n_total_max()) {
        continue;
      }
      for (std::size_t c = 0; c < b.size(); ++c) {
        if (b[c].total() >= b.n_total_max()) {
          continue;
        }
        const Complex want = r == c ? Complex(0.0, K.hbar) : Complex(0.0);
        CHECK(std::abs(comm.at(r, c) - want) <= 1e-12 * K.hbar);
      }
    }
  }
}

TEST_CASE("model: oscillator Hamiltonian") {
  const auto p = ref1();
  const fock::Basis b(10);
  const auto d = derive(p);
  const auto h = build_H_HO(b, p);
  CHECK(h.is_diagonal());
  CHECK(h.at(0, 0).real() == doctest::Approx(d.E0).epsilon(1e-15));
  const auto i111 = b.require_index({1, 1, 1});
  CHECK(h.at(i111, i111).real() ==
        doctest::Approx(d.E0 + K.hbar * (p.omega[0] + p.omega[1] + p.omega[2])).epsilon(1e-15));
  // kinetic + potential built from x and p reproduces the same diagonal matrix
  const auto parts = fock::add(build_kinetic(b, p), build_VHO(b, p));
  CHECK(operator_equal(parts, h, 1e-14));
  const auto flags_off = build_H_internal(b, p, {false, false});
  CHECK(operator_equal(flags_off, h, 0.0));
}

TEST_CASE("model: chiral potential") {
  const auto p = ref1();
  const fock::Basis b(8);
  const double mu = derive(p).mu;
  const auto vc = build_VC(b, p);
  const double want = p.C_chiral * std::pow(K.hbar / (2.0 * mu), 1.5) /
                      std::sqrt(p.omega[0] * p.omega[1] * p.omega[2]);
  CHECK(vc.at(b.require_index({1, 1, 1}), 0).real() == doctest::Approx(want).epsilon(1e-14));
  CHECK(vc.at(0, 0) == Complex(0.0));
  CHECK(fock::hermiticity_defect(vc) == 0.0);
  auto p0 = p;
  p0.C_chiral = 0.0;
  CHECK(build_VC(b, p0).nnz() == 0);
  for (const Axis a : fock::kAxes) {
    const auto pa = parity(b, a);
    CHECK(operator_equal(fock::multiply(fock::multiply(pa, vc), pa), fock::scale(-1.0, vc), 0.0));
    const auto vho = build_VHO(b, p);
    CHECK(operator_equal(fock::multiply(fock::multiply(pa, vho), pa), vho, 0.0));
  }
}

TEST_CASE("model: Zeeman potential") {
  auto p = ref1();
  p.B0 = {0.0, 0.0, 25.0};
  const fock::Basis b(8);
  const auto d = derive(p);
  const auto vz = build_VZ(b, p);
  const Complex el = vz.at(b.require_index({1, 1, 0}), 0);
  const double mag = K.e_charge * p.B0[2] * K.hbar / (4.0 * d.mu_star) *
                     (std::sqrt(p.omega[1] / p.omega[0]) - std::sqrt(p.omega[0] / p.omega[1]));
  CHECK(el.real() == 0.0);
  CHECK(el.imag() == doctest::Approx(mag).epsilon(1e-13));
  // first order: <110|V_Z|000> / (E_000 - E_110) = -i B^z eta^{yx}
  const Complex amp = el / (-K.hbar * (p.omega[0] + p.omega[1]));
  CHECK(test_support::close_rel(amp, Complex(0.0, -d.script_B[2] * d.eta[1][0]), 1e-13));

  CHECK(fock::hermiticity_defect(vz) <= 1e-14 * vz.max_abs());
  for (const auto& e : vz.entries()) {
    CHECK(e.value.real() == 0.0);
    CHECK(vz.at(e.col, e.row) == -e.value);
  }
  for (const Axis a : {Axis::x, Axis::y}) {
    const auto pa = parity(b, a);
    CHECK(operator_equal(fock::multiply(fock::multiply(pa, vz), pa), fock::scale(-1.0, vz), 0.0));
  }
  p.B0 = {0.0, 0.0, 0.0};
  CHECK(build_VZ(b, p).nnz() == 0);
}

TEST_CASE("model: angular momentum is the unit-coefficient Zeeman operator") {
  auto p = ref1();
  const fock::Basis b(7);
  const auto d = derive(p);
  SparseOperator sum = SparseOperator::zero(b.size());
  for (const Axis a : fock::kAxes) {
    const auto l = build_angular_momentum(b, p, a);
    CHECK(fock::hermiticity_defect(l) <= 1e-14 * l.max_abs());
    sum = fock::add(sum, fock::scale(K.e_charge / (2.0 * d.mu_star) * p.B0[fock::index(a)], l));
  }
  CHECK(operator_equal(sum, build_VZ(b, p), 1e-14));
}

TEST_CASE("model: full Hamiltonian is the sum of its parts and Hermitian") {
  std::mt19937_64 rng(5);
  const fock::Basis b(7);
  for (int t = 0; t < 5; ++t) {
    const auto p = test_support::random_params(rng);
    const auto h = build_H_internal(b, p);
    const auto parts = fock::add(fock::add(build_H_HO(b, p), build_VC(b, p)), build_VZ(b, p));
    CHECK(operator_equal(h, parts, 0.0));
    CHECK(fock::hermiticity_defect(h) <= 1e-14 * h.max_abs());
  }
}
