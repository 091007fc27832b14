// Compiled with -mavx2 (and without -mfma) so that every product and sum is
// rounded exactly as in the scalar kernels.

#include <immintrin.h>

#include <cmath>

#include "kernels_internal.hpp"

namespace parapost::kernels {
namespace {

inline __m256d abs_pd(__m256d v) {
  return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v);
}

// max_pd(a, m) returns a > m ? a : m, the same selection as the scalar loop.
inline double hmax(__m256d m) {
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, m);
  double r = lanes[0];
  for (int k = 1; k < 4; ++k) r = lanes[k] > r ? lanes[k] : r;
  return r;
}

void tridiag_matvec_avx2(const double* sub, const double* diag,
                         const double* sup, const double* x, double* y,
                         std::size_t n) {
  if (n < 6) {
    scalar_table().tridiag_matvec(sub, diag, sup, x, y, n);
    return;
  }
  y[0] = diag[0] * x[0] + sup[0] * x[1];
  std::size_t i = 1;
  for (; i + 4 < n; i += 4) {
    const __m256d xc = _mm256_loadu_pd(x + i);
    const __m256d xm = _mm256_loadu_pd(x + i - 1);
    const __m256d xp = _mm256_loadu_pd(x + i + 1);
    __m256d acc = _mm256_mul_pd(_mm256_loadu_pd(diag + i), xc);
    acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(sub + i), xm));
    acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_loadu_pd(sup + i), xp));
    _mm256_storeu_pd(y + i, acc);
  }
  for (; i + 1 < n; ++i) {
    y[i] = (diag[i] * x[i] + sub[i] * x[i - 1]) + sup[i] * x[i + 1];
  }
  y[n - 1] = diag[n - 1] * x[n - 1] + sub[n - 1] * x[n - 2];
}

void axpby_avx2(double a, const double* x, double b, const double* y,
                double* out, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  const __m256d vb = _mm256_set1_pd(b);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d r =
        _mm256_add_pd(_mm256_mul_pd(va, _mm256_loadu_pd(x + i)),
                      _mm256_mul_pd(vb, _mm256_loadu_pd(y + i)));
    _mm256_storeu_pd(out + i, r);
  }
  for (; i < n; ++i) out[i] = a * x[i] + b * y[i];
}

double max_abs_avx2(const double* x, std::size_t n) {
  __m256d m = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    m = _mm256_max_pd(abs_pd(_mm256_loadu_pd(x + i)), m);
  }
  double r = hmax(m);
  for (; i < n; ++i) {
    const double v = std::fabs(x[i]);
    r = v > r ? v : r;
  }
  return r;
}

double max_abs_diff_avx2(const double* x, const double* y, std::size_t n) {
  __m256d m = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d =
        _mm256_sub_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i));
    m = _mm256_max_pd(abs_pd(d), m);
  }
  double r = hmax(m);
  for (; i < n; ++i) {
    const double v = std::fabs(x[i] - y[i]);
    r = v > r ? v : r;
  }
  return r;
}

}  // namespace

namespace detail {

const KernelTable* avx2_table_if_compiled() {
  static const KernelTable table{"avx2", tridiag_matvec_avx2, axpby_avx2,
                                 max_abs_avx2, max_abs_diff_avx2};
  return &table;
}

}  // namespace detail
}  // namespace parapost::kernels
