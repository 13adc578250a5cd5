// Scalar reference kernels. These define the semantics the SIMD variants must reproduce.

#include "chiral_casimir/kernels.hpp"

namespace chiral_casimir::kernels {

namespace {

void csr_apply(const CsrView& a, const Complex* x, Complex* y) {
  for (std::size_t r = 0; r < a.rows; ++r) {
    double re = 0.0;
    double im = 0.0;
    for (std::size_t k = a.row_ptr[r]; k < a.row_ptr[r + 1]; ++k) {
      const Complex v = a.values[k];
      const Complex xv = x[a.cols[k]];
      re += v.real() * xv.real() - v.imag() * xv.imag();
      im += v.real() * xv.imag() + v.imag() * xv.real();
    }
    y[r] = Complex(re, im);
  }
}

Complex dot(const Complex* a, const Complex* b, std::size_t n) {
  double re = 0.0;
  double im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    re += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
    im += a[i].real() * b[i].imag() - a[i].imag() * b[i].real();
  }
  return {re, im};
}

double norm_sq(const Complex* x, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    s += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
  }
  return s;
}

void axpy(Complex alpha, const Complex* x, Complex* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    y[i] += alpha * x[i];
  }
}

void shifted_inverse(double shift, const double* diag, const Complex* x, Complex* y,
                     std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double inv = 1.0 / (shift + diag[i]);
    y[i] = Complex(x[i].real() * inv, x[i].imag() * inv);
  }
}

void scale_real(const double* d, const Complex* x, Complex* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    y[i] = Complex(x[i].real() * d[i], x[i].imag() * d[i]);
  }
}

constexpr KernelTable kScalar{
    .backend = Backend::scalar,
    .csr_apply = &csr_apply,
    .dot = &dot,
    .norm_sq = &norm_sq,
    .axpy = &axpy,
    .shifted_inverse = &shifted_inverse,
    .scale_real = &scale_real,
};

}  // namespace

const KernelTable& scalar_table() { return kScalar; }

}  // namespace chiral_casimir::kernels
