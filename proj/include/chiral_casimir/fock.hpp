#pragma once

// Truncated three-mode oscillator number basis and complex sparse operators on it.

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "chiral_casimir/kernels.hpp"

namespace chiral_casimir::fock {

using Complex = std::complex<double>;

enum class Axis : int { x = 0, y = 1, z = 2 };
inline constexpr std::array<Axis, 3> kAxes{Axis::x, Axis::y, Axis::z};
constexpr int index(Axis a) { return static_cast<int>(a); }
constexpr Axis axis_from_index(int i) { return static_cast<Axis>(i); }
char axis_name(Axis a);

enum class Ladder { raise, lower };

/// Occupation numbers |nx ny nz>.
struct FockIndex {
  int nx = 0;
  int ny = 0;
  int nz = 0;

  constexpr int total() const { return nx + ny + nz; }
  constexpr int operator[](Axis a) const {
    return a == Axis::x ? nx : (a == Axis::y ? ny : nz);
  }
  constexpr int& operator[](Axis a) { return a == Axis::x ? nx : (a == Axis::y ? ny : nz); }
  constexpr auto operator<=>(const FockIndex&) const = default;

  /// "|nx ny nz>" rendered compactly, e.g. "|221>".
  std::string label() const;
};

/// All FockIndex with nx+ny+nz <= n_total_max, ordered ascending by (total, nx, ny, nz).
class Basis {
 public:
  explicit Basis(int n_total_max);

  int n_total_max() const { return n_total_max_; }
  std::size_t size() const { return states_.size(); }
  std::span<const FockIndex> states() const { return states_; }
  const FockIndex& operator[](std::size_t k) const { return states_[k]; }

  std::optional<std::size_t> index_of(const FockIndex& s) const;
  /// Index for a state known to be in the basis; throws DomainError otherwise.
  std::size_t require_index(const FockIndex& s) const;
  bool contains(const FockIndex& s) const { return index_of(s).has_value(); }

  static std::size_t count(int n_total_max);

 private:
  int n_total_max_;
  std::vector<FockIndex> states_;
};

/// Throws DomainError for a negative cutoff.
Basis enumerate_basis(int n_total_max);

class StateVector {
 public:
  StateVector() = default;
  explicit StateVector(std::size_t dim) : amp_(dim) {}
  explicit StateVector(std::vector<Complex> amplitudes) : amp_(std::move(amplitudes)) {}

  static StateVector basis_state(std::size_t dim, std::size_t k);

  std::size_t dim() const { return amp_.size(); }
  Complex& operator[](std::size_t k) { return amp_[k]; }
  const Complex& operator[](std::size_t k) const { return amp_[k]; }
  std::span<Complex> span() { return amp_; }
  std::span<const Complex> span() const { return amp_; }
  const std::vector<Complex>& amplitudes() const { return amp_; }

  double norm() const;
  StateVector& operator+=(const StateVector& o);
  StateVector& operator*=(Complex s);

 private:
  std::vector<Complex> amp_;
};

/// <a|b>
Complex inner(const StateVector& a, const StateVector& b);
StateVector normalized(const StateVector& v);

struct Entry {
  std::size_t row;
  std::size_t col;
  Complex value;
};

/// Coalesced complex sparse matrix (CSR). Exact zeros are never stored.
class SparseOperator {
 public:
  SparseOperator() = default;
  /// Duplicates are summed; entries that end up exactly zero are dropped.
  SparseOperator(std::size_t dim, std::vector<Entry> entries);

  static SparseOperator identity(std::size_t dim);
  static SparseOperator diagonal(std::span<const double> values);
  static SparseOperator zero(std::size_t dim) { return SparseOperator(dim, {}); }

  std::size_t dim() const { return dim_; }
  std::size_t nnz() const { return values_.size(); }
  std::vector<Entry> entries() const;
  Complex at(std::size_t row, std::size_t col) const;
  double max_abs() const;
  bool is_diagonal() const;
  std::vector<Complex> diagonal_values() const;

  kernels::CsrView view() const;

  std::span<const std::size_t> row_ptr() const { return row_ptr_; }
  std::span<const std::uint32_t> cols() const { return cols_; }
  std::span<const Complex> values() const { return values_; }

 private:
  std::size_t dim_ = 0;
  std::vector<std::size_t> row_ptr_{0};
  std::vector<std::uint32_t> cols_;
  std::vector<Complex> values_;
};

/// Annihilation (lower) or creation (raise) operator on one axis. Raising out of the
/// truncated basis drops the amplitude.
SparseOperator ladder(const Basis& basis, Axis axis, Ladder kind);

/// coefficient * (word_x)(word_y)(word_z); each word is a product of ladder operators
/// on one axis, written left to right as in operator notation.
struct LadderMonomial {
  Complex coefficient = 1.0;
  std::array<std::vector<Ladder>, 3> words;
};

/// Polynomial in the three modes' ladder operators. Products concatenate words, so
/// operator ordering is preserved exactly.
class LadderPolynomial {
 public:
  LadderPolynomial() = default;
  explicit LadderPolynomial(std::vector<LadderMonomial> terms) : terms_(std::move(terms)) {}

  static LadderPolynomial constant(Complex c);
  static LadderPolynomial single(Axis axis, Ladder kind, Complex c = 1.0);

  std::span<const LadderMonomial> terms() const { return terms_; }

  LadderPolynomial& operator+=(const LadderPolynomial& o);
  friend LadderPolynomial operator+(LadderPolynomial a, const LadderPolynomial& b) {
    return a += b;
  }
  friend LadderPolynomial operator-(LadderPolynomial a, const LadderPolynomial& b);
  friend LadderPolynomial operator*(const LadderPolynomial& a, const LadderPolynomial& b);
  friend LadderPolynomial operator*(Complex c, LadderPolynomial a);

 private:
  std::vector<LadderMonomial> terms_;
};

/// Matrix of P O P, with O evaluated in the untruncated space and P the projector on
/// the basis. Hermitian polynomials give exactly Hermitian matrices, and matrix
/// elements between basis states are free of truncation error.
SparseOperator project(const Basis& basis, const LadderPolynomial& poly);

// Operator algebra. All binary operations throw DomainError on dimension mismatch.
SparseOperator add(const SparseOperator& a, const SparseOperator& b);
SparseOperator subtract(const SparseOperator& a, const SparseOperator& b);
SparseOperator scale(Complex lambda, const SparseOperator& a);
SparseOperator multiply(const SparseOperator& a, const SparseOperator& b);
SparseOperator adjoint(const SparseOperator& a);
StateVector apply(const SparseOperator& a, const StateVector& v);
/// out = A v, out must already have the right dimension.
void apply_into(const SparseOperator& a, std::span<const Complex> v, std::span<Complex> out);

/// max |A - A^dagger| entry.
double hermiticity_defect(const SparseOperator& a);

/// <a|A|b>
Complex matrix_element(const StateVector& a, const SparseOperator& op, const StateVector& b);

}  // namespace chiral_casimir::fock
