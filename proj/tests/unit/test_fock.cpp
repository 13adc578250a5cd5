#include <cmath>
#include <random>
#include <set>
#include <tuple>

#include "chiral_casimir/errors.hpp"
#include "chiral_casimir/fock.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace chiral_casimir;
using namespace chiral_casimir::fock;

TEST_CASE("fock: basis enumeration") {
  CHECK(enumerate_basis(0).size() == 1);
  CHECK(enumerate_basis(0)[0] == FockIndex{0, 0, 0});
  const Basis b1 = enumerate_basis(1);
  REQUIRE(b1.size() == 4);
  CHECK(b1[0] == FockIndex{0, 0, 0});
  CHECK(b1[1] == FockIndex{0, 0, 1});
  CHECK(b1[2] == FockIndex{0, 1, 0});
  CHECK(b1[3] == FockIndex{1, 0, 0});
  CHECK(enumerate_basis(5).size() == 56);
  CHECK_THROWS_AS(enumerate_basis(-1), DomainError);
  CHECK(FockIndex{2, 2, 1}.label() == "|221>");
}

TEST_CASE("fock: basis is a bijection with the documented order and size") {
  for (int n = 0; n <= 16; ++n) {
    const Basis b(n);
    CHECK(b.size() == static_cast<std::size_t>((n + 1) * (n + 2) * (n + 3) / 6));
    CHECK(Basis::count(n) == b.size());
    std::set<FockIndex> seen;
    for (std::size_t k = 0; k < b.size(); ++k) {
      const auto& s = b[k];
      CHECK(s.total() <= n);
      CHECK(b.index_of(s).value() == k);
      seen.insert(s);
      if (k > 0) {
        const auto& prev = b[k - 1];
        const bool ordered = std::make_tuple(prev.total(), prev.nx, prev.ny, prev.nz) <
                             std::make_tuple(s.total(), s.nx, s.ny, s.nz);
        CHECK(ordered);
      }
    }
    CHECK(seen.size() == b.size());
    CHECK_FALSE(b.contains({n + 1, 0, 0}));
    CHECK_FALSE(b.contains({-1, 0, 0}));
  }
}

TEST_CASE("fock: ladder matrix elements") {
  const Basis b(4);
  const auto ax_dag = ladder(b, Axis::x, Ladder::raise);
  const auto ax = ladder(b, Axis::x, Ladder::lower);
  CHECK(ax_dag.at(b.require_index({1, 0, 0}), b.require_index({0, 0, 0})) == Complex(1.0));
  CHECK(ax_dag.at(b.require_index({2, 0, 0}), b.require_index({1, 0, 0})) == Complex(std::sqrt(2.0)));
  const auto v = apply(ax, StateVector::basis_state(b.size(), 0));
  CHECK(v.norm() == 0.0);
  for (const Axis a : kAxes) {
    for (const auto kind : {Ladder::raise, Ladder::lower}) {
      for (const auto& e : ladder(b, a, kind).entries()) {
        CHECK(e.value.imag() == 0.0);
      }
    }
  }
}

TEST_CASE("fock: canonical commutators on interior states") {
  const int n = 6;
  const Basis b(n);
  for (const Axis i : kAxes) {
    for (const Axis j : kAxes) {
      const auto ai = ladder(b, i, Ladder::lower);
      const auto aj_dag = ladder(b, j, Ladder::raise);
      const auto comm = subtract(multiply(ai, aj_dag), multiply(aj_dag, ai));
      for (std::size_t r = 0; r < b.size(); ++r) {
        if (b[r].total() > n - 1) {
          continue;
        }
        for (std::size_t c = 0; c < b.size(); ++c) {
          if (b[c].total() > n - 1) {
            continue;
          }
          const double expected = (i == j && r == c) ? 1.0 : 0.0;
          CHECK(std::abs(comm.at(r, c) - expected) <= 1e-14);
        }
      }
    }
  }
}

TEST_CASE("fock: operator algebra identities") {
  std::mt19937_64 rng(7);
  const Basis b(5);
  const auto id = SparseOperator::identity(b.size());
  const auto v = test_support::random_state(rng, b.size());
  const auto w = apply(id, v);
  for (std::size_t k = 0; k < b.size(); ++k) {
    CHECK(w[k] == v[k]);
  }
  const auto a = add(scale(Complex(0.5, 2.0), ladder(b, Axis::y, Ladder::raise)),
                     multiply(ladder(b, Axis::z, Ladder::lower), ladder(b, Axis::x, Ladder::raise)));
  const auto aa = adjoint(adjoint(a));
  CHECK(aa.nnz() == a.nnz());
  for (const auto& e : a.entries()) {
    CHECK(aa.at(e.row, e.col) == e.value);
  }
  // <u|A v> = <A^dagger u|v>
  const auto u = test_support::random_state(rng, b.size());
  const Complex lhs = inner(u, apply(a, v));
  const Complex rhs = inner(apply(adjoint(a), u), v);
  CHECK(test_support::close_rel(lhs, rhs, 1e-13));
  CHECK_THROWS_AS(add(a, SparseOperator::identity(3)), DomainError);
  CHECK_THROWS_AS(multiply(a, SparseOperator::identity(3)), DomainError);
  CHECK_THROWS_AS(apply(a, StateVector(3)), DomainError);
}

TEST_CASE("fock: coalescing and zero dropping") {
  const SparseOperator m(3, {{0, 1, 1.0}, {0, 1, 2.0}, {2, 2, 1.0}, {2, 2, -1.0}});
  CHECK(m.nnz() == 1);
  CHECK(m.at(0, 1) == Complex(3.0));
  CHECK(m.at(2, 2) == Complex(0.0));
}

TEST_CASE("fock: projected polynomial equals the product away from the edge") {
  // x_x x_y with x = a + a^dagger: exact projection agrees with the product of truncated
  // matrices on states where no intermediate leaves the basis, and is Hermitian everywhere.
  const int n = 6;
  const Basis b(n);
  auto q = [&](Axis a) {
    return LadderPolynomial::single(a, Ladder::lower) + LadderPolynomial::single(a, Ladder::raise);
  };
  const auto proj = project(b, q(Axis::x) * q(Axis::y) * q(Axis::z));
  auto qm = [&](Axis a) { return add(ladder(b, a, Ladder::lower), ladder(b, a, Ladder::raise)); };
  const auto prod = multiply(multiply(qm(Axis::x), qm(Axis::y)), qm(Axis::z));
  CHECK(hermiticity_defect(proj) == 0.0);
  CHECK(hermiticity_defect(prod) > 0.0);
  for (std::size_t r = 0; r < b.size(); ++r) {
    for (std::size_t c = 0; c < b.size(); ++c) {
      if (b[r].total() <= n - 2 && b[c].total() <= n - 2) {
        CHECK(std::abs(proj.at(r, c) - prod.at(r, c)) <= 1e-14);
      }
    }
  }
  // (a + a^dagger)^2 keeps the full 2n+1 diagonal at the top shell
  const auto sq = project(b, q(Axis::x) * q(Axis::x));
  const auto top = b.require_index({n, 0, 0});
  CHECK(sq.at(top, top) == Complex(2.0 * n + 1.0));
}
