#pragma once

// Data-parallel inner loops shared by the operator algebra, the eigensolver and
// the resolvent quadrature. Every kernel has a scalar reference implementation;
// an AVX2/FMA variant is selected at runtime when the CPU supports it.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace chiral_casimir::kernels {

using Complex = std::complex<double>;

/// Read-only view of a compressed-sparse-row complex matrix.
struct CsrView {
  std::size_t rows = 0;
  std::span<const std::size_t> row_ptr;  // rows + 1 offsets
  std::span<const std::uint32_t> cols;
  std::span<const Complex> values;
};

enum class Backend { scalar, avx2 };

struct KernelTable {
  Backend backend;
  /// y = A x
  void (*csr_apply)(const CsrView& a, const Complex* x, Complex* y);
  /// sum_i conj(a_i) b_i
  Complex (*dot)(const Complex* a, const Complex* b, std::size_t n);
  /// sum_i |x_i|^2
  double (*norm_sq)(const Complex* x, std::size_t n);
  /// y += alpha x
  void (*axpy)(Complex alpha, const Complex* x, Complex* y, std::size_t n);
  /// y_i = x_i / (shift + diag_i)   (diagonal resolvent)
  void (*shifted_inverse)(double shift, const double* diag, const Complex* x, Complex* y,
                          std::size_t n);
  /// y_i = d_i x_i
  void (*scale_real)(const double* d, const Complex* x, Complex* y, std::size_t n);
};

const KernelTable& scalar_table();
/// Null when the AVX2 variant was not compiled in.
const KernelTable* avx2_table();

bool cpu_supports_avx2();

/// Active table. Chosen on first use: CHIRAL_CASIMIR_SIMD=scalar|avx2|auto (default auto).
const KernelTable& active();

/// Override the active backend (tests, benchmarking). Throws DomainError if unavailable.
void set_backend(Backend backend);

std::string_view backend_name(Backend backend);

// Convenience wrappers over the active table.

inline Complex dot(std::span<const Complex> a, std::span<const Complex> b) {
  return active().dot(a.data(), b.data(), a.size());
}
inline double norm_sq(std::span<const Complex> x) { return active().norm_sq(x.data(), x.size()); }
inline void axpy(Complex alpha, std::span<const Complex> x, std::span<Complex> y) {
  active().axpy(alpha, x.data(), y.data(), x.size());
}
inline void shifted_inverse(double shift, std::span<const double> diag, std::span<const Complex> x,
                            std::span<Complex> y) {
  active().shifted_inverse(shift, diag.data(), x.data(), y.data(), x.size());
}
inline void scale_real(std::span<const double> d, std::span<const Complex> x, std::span<Complex> y) {
  active().scale_real(d.data(), x.data(), y.data(), x.size());
}

}  // namespace chiral_casimir::kernels
