#include "chiral_casimir/fock.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "chiral_casimir/errors.hpp"

namespace chiral_casimir::fock {

namespace {

// Entries whose real and imaginary magnitudes both fall below this are treated as
// exact zeros (this only catches exact cancellations and denormal debris).
constexpr double kDropTolerance = 1e-300;

bool is_zero(const Complex& v) {
  return std::abs(v.real()) < kDropTolerance && std::abs(v.imag()) < kDropTolerance;
}

void require_same_dim(const SparseOperator& a, const SparseOperator& b, const char* what) {
  if (a.dim() != b.dim()) {
    throw DomainError(std::string(what) + ": dimension mismatch (" + std::to_string(a.dim()) +
                      " vs " + std::to_string(b.dim()) + ")");
  }
}

}  // namespace

char axis_name(Axis a) { return "xyz"[index(a)]; }

std::string FockIndex::label() const {
  return "|" + std::to_string(nx) + std::to_string(ny) + std::to_string(nz) + ">";
}

// ---------------------------------------------------------------------------
// Basis

Basis::Basis(int n_total_max) : n_total_max_(n_total_max) {
  if (n_total_max < 0) {
    throw DomainError("enumerate_basis: cutoff must be non-negative");
  }
  states_.reserve(count(n_total_max));
  for (int n = 0; n <= n_total_max; ++n) {
    for (int nx = 0; nx <= n; ++nx) {
      for (int ny = 0; ny <= n - nx; ++ny) {
        states_.push_back({nx, ny, n - nx - ny});
      }
    }
  }
}

std::size_t Basis::count(int n_total_max) {
  const auto n = static_cast<std::size_t>(n_total_max);
  return (n + 1) * (n + 2) * (n + 3) / 6;
}

std::optional<std::size_t> Basis::index_of(const FockIndex& s) const {
  if (s.nx < 0 || s.ny < 0 || s.nz < 0 || s.total() > n_total_max_) {
    return std::nullopt;
  }
  const auto n = static_cast<std::size_t>(s.total());
  const auto nx = static_cast<std::size_t>(s.nx);
  const auto ny = static_cast<std::size_t>(s.ny);
  const std::size_t shell_offset = n * (n + 1) * (n + 2) / 6;
  return shell_offset + nx * (n + 1) - nx * (nx - 1) / 2 + ny;
}

std::size_t Basis::require_index(const FockIndex& s) const {
  const auto k = index_of(s);
  if (!k) {
    throw DomainError("state " + s.label() + " outside basis with cutoff " +
                      std::to_string(n_total_max_));
  }
  return *k;
}

Basis enumerate_basis(int n_total_max) { return Basis(n_total_max); }

// ---------------------------------------------------------------------------
// StateVector

StateVector StateVector::basis_state(std::size_t dim, std::size_t k) {
  StateVector v(dim);
  v[k] = 1.0;
  return v;
}

double StateVector::norm() const { return std::sqrt(kernels::norm_sq(amp_)); }

StateVector& StateVector::operator+=(const StateVector& o) {
  if (o.dim() != dim()) {
    throw DomainError("StateVector +=: dimension mismatch");
  }
  kernels::axpy(1.0, o.span(), span());
  return *this;
}

StateVector& StateVector::operator*=(Complex s) {
  for (auto& a : amp_) {
    a *= s;
  }
  return *this;
}

Complex inner(const StateVector& a, const StateVector& b) {
  if (a.dim() != b.dim()) {
    throw DomainError("inner: dimension mismatch");
  }
  return kernels::dot(a.span(), b.span());
}

StateVector normalized(const StateVector& v) {
  const double n = v.norm();
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw DomainError("normalized: vector has zero or non-finite norm");
  }
  StateVector out = v;
  out *= 1.0 / n;
  return out;
}

// ---------------------------------------------------------------------------
// SparseOperator

SparseOperator::SparseOperator(std::size_t dim, std::vector<Entry> entries) : dim_(dim) {
  if (dim > std::numeric_limits<std::uint32_t>::max()) {
    throw DomainError("SparseOperator: dimension too large");
  }
  for (const auto& e : entries) {
    if (e.row >= dim || e.col >= dim) {
      throw DomainError("SparseOperator: entry index out of range");
    }
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  row_ptr_.assign(dim + 1, 0);
  cols_.reserve(entries.size());
  values_.reserve(entries.size());
  std::size_t i = 0;
  for (std::size_t r = 0; r < dim; ++r) {
    row_ptr_[r] = values_.size();
    while (i < entries.size() && entries[i].row == r) {
      const std::size_t c = entries[i].col;
      Complex sum = 0.0;
      while (i < entries.size() && entries[i].row == r && entries[i].col == c) {
        sum += entries[i].value;
        ++i;
      }
      if (!is_zero(sum)) {
        cols_.push_back(static_cast<std::uint32_t>(c));
        values_.push_back(sum);
      }
    }
  }
  row_ptr_[dim] = values_.size();
}

SparseOperator SparseOperator::identity(std::size_t dim) {
  std::vector<Entry> e;
  e.reserve(dim);
  for (std::size_t k = 0; k < dim; ++k) {
    e.push_back({k, k, 1.0});
  }
  return SparseOperator(dim, std::move(e));
}

SparseOperator SparseOperator::diagonal(std::span<const double> values) {
  std::vector<Entry> e;
  e.reserve(values.size());
  for (std::size_t k = 0; k < values.size(); ++k) {
    e.push_back({k, k, values[k]});
  }
  return SparseOperator(values.size(), std::move(e));
}

std::vector<Entry> SparseOperator::entries() const {
  std::vector<Entry> out;
  out.reserve(nnz());
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) {
      out.push_back({r, cols_[k], values_[k]});
    }
  }
  return out;
}

Complex SparseOperator::at(std::size_t row, std::size_t col) const {
  if (row >= dim_ || col >= dim_) {
    throw DomainError("SparseOperator::at: index out of range");
  }
  const auto first = cols_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[row]);
  const auto last = cols_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[row + 1]);
  const auto it = std::lower_bound(first, last, static_cast<std::uint32_t>(col));
  if (it == last || *it != col) {
    return 0.0;
  }
  return values_[static_cast<std::size_t>(it - cols_.begin())];
}

double SparseOperator::max_abs() const {
  double m = 0.0;
  for (const auto& v : values_) {
    m = std::max(m, std::abs(v));
  }
  return m;
}

bool SparseOperator::is_diagonal() const {
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) {
      if (cols_[k] != r) {
        return false;
      }
    }
  }
  return true;
}

std::vector<Complex> SparseOperator::diagonal_values() const {
  std::vector<Complex> d(dim_);
  for (std::size_t r = 0; r < dim_; ++r) {
    d[r] = at(r, r);
  }
  return d;
}

kernels::CsrView SparseOperator::view() const {
  return {dim_, row_ptr_, cols_, values_};
}

// ---------------------------------------------------------------------------
// Construction and algebra

SparseOperator ladder(const Basis& basis, Axis axis, Ladder kind) {
  std::vector<Entry> e;
  e.reserve(basis.size());
  for (std::size_t col = 0; col < basis.size(); ++col) {
    FockIndex target = basis[col];
    const int n = target[axis];
    if (kind == Ladder::lower) {
      if (n == 0) {
        continue;
      }
      target[axis] = n - 1;
      e.push_back({basis.require_index(target), col, std::sqrt(static_cast<double>(n))});
    } else {
      target[axis] = n + 1;
      if (const auto row = basis.index_of(target)) {
        e.push_back({*row, col, std::sqrt(static_cast<double>(n + 1))});
      }
    }
  }
  return SparseOperator(basis.size(), std::move(e));
}

LadderPolynomial LadderPolynomial::constant(Complex c) {
  return LadderPolynomial({LadderMonomial{c, {}}});
}

LadderPolynomial LadderPolynomial::single(Axis axis, Ladder kind, Complex c) {
  LadderMonomial m{c, {}};
  m.words[index(axis)].push_back(kind);
  return LadderPolynomial({std::move(m)});
}

LadderPolynomial& LadderPolynomial::operator+=(const LadderPolynomial& o) {
  terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
  return *this;
}

LadderPolynomial operator-(LadderPolynomial a, const LadderPolynomial& b) {
  return a += (-1.0 * b);
}

LadderPolynomial operator*(Complex c, LadderPolynomial a) {
  for (auto& t : a.terms_) {
    t.coefficient *= c;
  }
  return a;
}

LadderPolynomial operator*(const LadderPolynomial& a, const LadderPolynomial& b) {
  std::vector<LadderMonomial> out;
  out.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& ta : a.terms_) {
    for (const auto& tb : b.terms_) {
      LadderMonomial m{ta.coefficient * tb.coefficient, ta.words};
      for (int ax = 0; ax < 3; ++ax) {
        m.words[ax].insert(m.words[ax].end(), tb.words[ax].begin(), tb.words[ax].end());
      }
      out.push_back(std::move(m));
    }
  }
  return LadderPolynomial(std::move(out));
}

SparseOperator project(const Basis& basis, const LadderPolynomial& poly) {
  std::vector<Entry> e;
  for (std::size_t col = 0; col < basis.size(); ++col) {
    for (const auto& term : poly.terms()) {
      FockIndex s = basis[col];
      double amp = 1.0;
      bool vanished = false;
      for (const Axis ax : kAxes) {
        const auto& word = term.words[index(ax)];
        int n = s[ax];
        // rightmost operator acts first
        for (auto it = word.rbegin(); it != word.rend(); ++it) {
          if (*it == Ladder::lower) {
            if (n == 0) {
              vanished = true;
              break;
            }
            amp *= std::sqrt(static_cast<double>(n));
            --n;
          } else {
            ++n;
            amp *= std::sqrt(static_cast<double>(n));
          }
        }
        if (vanished) {
          break;
        }
        s[ax] = n;
      }
      if (vanished) {
        continue;
      }
      if (const auto row = basis.index_of(s)) {
        e.push_back({*row, col, term.coefficient * amp});
      }
    }
  }
  return SparseOperator(basis.size(), std::move(e));
}

SparseOperator add(const SparseOperator& a, const SparseOperator& b) {
  require_same_dim(a, b, "add");
  auto e = a.entries();
  auto eb = b.entries();
  e.insert(e.end(), eb.begin(), eb.end());
  return SparseOperator(a.dim(), std::move(e));
}

SparseOperator subtract(const SparseOperator& a, const SparseOperator& b) {
  return add(a, scale(-1.0, b));
}

SparseOperator scale(Complex lambda, const SparseOperator& a) {
  auto e = a.entries();
  for (auto& x : e) {
    x.value *= lambda;
  }
  return SparseOperator(a.dim(), std::move(e));
}

SparseOperator multiply(const SparseOperator& a, const SparseOperator& b) {
  require_same_dim(a, b, "multiply");
  const std::size_t n = a.dim();
  std::vector<Entry> out;
  std::vector<Complex> acc(n);
  std::vector<char> touched(n, 0);
  std::vector<std::size_t> cols;
  const auto arp = a.row_ptr();
  const auto acol = a.cols();
  const auto aval = a.values();
  const auto brp = b.row_ptr();
  const auto bcol = b.cols();
  const auto bval = b.values();
  for (std::size_t r = 0; r < n; ++r) {
    cols.clear();
    for (std::size_t ka = arp[r]; ka < arp[r + 1]; ++ka) {
      const std::size_t mid = acol[ka];
      for (std::size_t kb = brp[mid]; kb < brp[mid + 1]; ++kb) {
        const std::size_t c = bcol[kb];
        if (!touched[c]) {
          touched[c] = 1;
          cols.push_back(c);
        }
        acc[c] += aval[ka] * bval[kb];
      }
    }
    std::sort(cols.begin(), cols.end());
    for (const std::size_t c : cols) {
      out.push_back({r, c, acc[c]});
      acc[c] = 0.0;
      touched[c] = 0;
    }
  }
  return SparseOperator(n, std::move(out));
}

SparseOperator adjoint(const SparseOperator& a) {
  auto e = a.entries();
  for (auto& x : e) {
    std::swap(x.row, x.col);
    x.value = std::conj(x.value);
  }
  return SparseOperator(a.dim(), std::move(e));
}

void apply_into(const SparseOperator& a, std::span<const Complex> v, std::span<Complex> out) {
  if (v.size() != a.dim() || out.size() != a.dim()) {
    throw DomainError("apply: dimension mismatch");
  }
  kernels::active().csr_apply(a.view(), v.data(), out.data());
}

StateVector apply(const SparseOperator& a, const StateVector& v) {
  StateVector out(a.dim());
  apply_into(a, v.span(), out.span());
  return out;
}

double hermiticity_defect(const SparseOperator& a) {
  return subtract(a, adjoint(a)).max_abs();
}

Complex matrix_element(const StateVector& a, const SparseOperator& op, const StateVector& b) {
  return inner(a, apply(op, b));
}

}  // namespace chiral_casimir::fock
