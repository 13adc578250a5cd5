// AVX2/FMA kernel variants. Functions carry a target attribute instead of the
// translation unit being built with -mavx2, so no inline library code in this file
// is emitted with AVX2 encodings; dispatch guarantees they only run on capable CPUs.
//
// Layout: std::complex<double> is two contiguous doubles (re, im), so one __m256d
// holds two complex values.

#include "chiral_casimir/kernels.hpp"

#if defined(CHIRAL_CASIMIR_HAVE_AVX2) && (defined(__x86_64__) || defined(__i386__))

#include <immintrin.h>

#define CC_AVX2 __attribute__((target("avx2,fma")))

namespace chiral_casimir::kernels {

namespace {

// [a0 a1] * [b0 b1] complex-wise
CC_AVX2 inline __m256d cmul(__m256d a, __m256d b) {
  const __m256d b_re = _mm256_movedup_pd(b);
  const __m256d b_im = _mm256_permute_pd(b, 0xF);
  const __m256d a_sw = _mm256_permute_pd(a, 0x5);
  return _mm256_fmaddsub_pd(a, b_re, _mm256_mul_pd(a_sw, b_im));
}

CC_AVX2 inline __m128d fold(__m256d v) {
  return _mm_add_pd(_mm256_castpd256_pd128(v), _mm256_extractf128_pd(v, 1));
}

CC_AVX2 void csr_apply(const CsrView& a, const Complex* x, Complex* y) {
  const std::size_t* row_ptr = a.row_ptr.data();
  const std::uint32_t* cols = a.cols.data();
  const double* vals = reinterpret_cast<const double*>(a.values.data());
  const double* xd = reinterpret_cast<const double*>(x);
  double* yd = reinterpret_cast<double*>(y);
  for (std::size_t r = 0; r < a.rows; ++r) {
    std::size_t k = row_ptr[r];
    const std::size_t end = row_ptr[r + 1];
    __m256d acc = _mm256_setzero_pd();
    for (; k + 2 <= end; k += 2) {
      const __m256d v = _mm256_loadu_pd(vals + 2 * k);
      const __m256d xv = _mm256_set_m128d(_mm_loadu_pd(xd + 2 * cols[k + 1]),
                                          _mm_loadu_pd(xd + 2 * cols[k]));
      acc = _mm256_add_pd(acc, cmul(v, xv));
    }
    __m128d s = fold(acc);
    if (k < end) {
      const __m128d v = _mm_loadu_pd(vals + 2 * k);
      const __m128d xv = _mm_loadu_pd(xd + 2 * cols[k]);
      const __m128d prod = _mm256_castpd256_pd128(
          cmul(_mm256_castpd128_pd256(v), _mm256_castpd128_pd256(xv)));
      s = _mm_add_pd(s, prod);
    }
    _mm_storeu_pd(yd + 2 * r, s);
  }
}

CC_AVX2 Complex dot(const Complex* a, const Complex* b, std::size_t n) {
  const double* ad = reinterpret_cast<const double*>(a);
  const double* bd = reinterpret_cast<const double*>(b);
  __m256d acc_re = _mm256_setzero_pd();  // (ar br, ai bi)
  __m256d acc_im = _mm256_setzero_pd();  // (ar bi, ai br)
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d av = _mm256_loadu_pd(ad + 2 * i);
    const __m256d bv = _mm256_loadu_pd(bd + 2 * i);
    acc_re = _mm256_fmadd_pd(av, bv, acc_re);
    acc_im = _mm256_fmadd_pd(av, _mm256_permute_pd(bv, 0x5), acc_im);
  }
  const __m128d re2 = fold(acc_re);
  const __m128d im2 = fold(acc_im);
  double re = _mm_cvtsd_f64(re2) + _mm_cvtsd_f64(_mm_unpackhi_pd(re2, re2));
  double im = _mm_cvtsd_f64(im2) - _mm_cvtsd_f64(_mm_unpackhi_pd(im2, im2));
  for (; i < n; ++i) {
    re += ad[2 * i] * bd[2 * i] + ad[2 * i + 1] * bd[2 * i + 1];
    im += ad[2 * i] * bd[2 * i + 1] - ad[2 * i + 1] * bd[2 * i];
  }
  return {re, im};
}

CC_AVX2 double norm_sq(const Complex* x, std::size_t n) {
  const double* xd = reinterpret_cast<const double*>(x);
  const std::size_t len = 2 * n;
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= len; i += 4) {
    const __m256d v = _mm256_loadu_pd(xd + i);
    acc = _mm256_fmadd_pd(v, v, acc);
  }
  const __m128d s2 = fold(acc);
  double s = _mm_cvtsd_f64(s2) + _mm_cvtsd_f64(_mm_unpackhi_pd(s2, s2));
  for (; i < len; ++i) {
    s += xd[i] * xd[i];
  }
  return s;
}

CC_AVX2 void axpy(Complex alpha, const Complex* x, Complex* y, std::size_t n) {
  const double* xd = reinterpret_cast<const double*>(x);
  double* yd = reinterpret_cast<double*>(y);
  const double ar = alpha.real();
  const double ai = alpha.imag();
  const __m256d av = _mm256_setr_pd(ar, ai, ar, ai);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = _mm256_loadu_pd(xd + 2 * i);
    const __m256d yv = _mm256_loadu_pd(yd + 2 * i);
    _mm256_storeu_pd(yd + 2 * i, _mm256_add_pd(yv, cmul(xv, av)));
  }
  for (; i < n; ++i) {
    const double xr = xd[2 * i];
    const double xi = xd[2 * i + 1];
    yd[2 * i] += xr * ar - xi * ai;
    yd[2 * i + 1] += xi * ar + xr * ai;
  }
}

CC_AVX2 void shifted_inverse(double shift, const double* diag, const Complex* x, Complex* y,
                             std::size_t n) {
  const double* xd = reinterpret_cast<const double*>(x);
  double* yd = reinterpret_cast<double*>(y);
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d sh = _mm256_set1_pd(shift);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d = _mm256_loadu_pd(diag + i);
    const __m256d inv = _mm256_div_pd(one, _mm256_add_pd(sh, d));  // inv0 inv1 inv2 inv3
    const __m256d lo = _mm256_permute4x64_pd(inv, 0x50);            // inv0 inv0 inv1 inv1
    const __m256d hi = _mm256_permute4x64_pd(inv, 0xFA);            // inv2 inv2 inv3 inv3
    _mm256_storeu_pd(yd + 2 * i, _mm256_mul_pd(_mm256_loadu_pd(xd + 2 * i), lo));
    _mm256_storeu_pd(yd + 2 * i + 4, _mm256_mul_pd(_mm256_loadu_pd(xd + 2 * i + 4), hi));
  }
  for (; i < n; ++i) {
    const double inv = 1.0 / (shift + diag[i]);
    yd[2 * i] = xd[2 * i] * inv;
    yd[2 * i + 1] = xd[2 * i + 1] * inv;
  }
}

CC_AVX2 void scale_real(const double* d, const Complex* x, Complex* y, std::size_t n) {
  const double* xd = reinterpret_cast<const double*>(x);
  double* yd = reinterpret_cast<double*>(y);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d dv = _mm256_loadu_pd(d + i);
    const __m256d lo = _mm256_permute4x64_pd(dv, 0x50);
    const __m256d hi = _mm256_permute4x64_pd(dv, 0xFA);
    _mm256_storeu_pd(yd + 2 * i, _mm256_mul_pd(_mm256_loadu_pd(xd + 2 * i), lo));
    _mm256_storeu_pd(yd + 2 * i + 4, _mm256_mul_pd(_mm256_loadu_pd(xd + 2 * i + 4), hi));
  }
  for (; i < n; ++i) {
    yd[2 * i] = xd[2 * i] * d[i];
    yd[2 * i + 1] = xd[2 * i + 1] * d[i];
  }
}

constexpr KernelTable kAvx2{
    .backend = Backend::avx2,
    .csr_apply = &csr_apply,
    .dot = &dot,
    .norm_sq = &norm_sq,
    .axpy = &axpy,
    .shifted_inverse = &shifted_inverse,
    .scale_real = &scale_real,
};

}  // namespace

const KernelTable* avx2_table() { return &kAvx2; }

}  // namespace chiral_casimir::kernels

#else

namespace chiral_casimir::kernels {
const KernelTable* avx2_table() { return nullptr; }
}  // namespace chiral_casimir::kernels

#endif
