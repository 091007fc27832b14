#include <arm_neon.h>

#include <cmath>

#include "kernels_internal.hpp"

namespace parapost::kernels {
namespace {

// vmaxq_f64 and the scalar "v > m ? v : m" agree for non-NaN input.
inline double hmax(float64x2_t m) {
  const double a = vgetq_lane_f64(m, 0);
  const double b = vgetq_lane_f64(m, 1);
  return b > a ? b : a;
}

void tridiag_matvec_neon(const double* sub, const double* diag,
                         const double* sup, const double* x, double* y,
                         std::size_t n) {
  if (n < 4) {
    scalar_table().tridiag_matvec(sub, diag, sup, x, y, n);
    return;
  }
  y[0] = diag[0] * x[0] + sup[0] * x[1];
  std::size_t i = 1;
  for (; i + 2 < n; i += 2) {
    float64x2_t acc = vmulq_f64(vld1q_f64(diag + i), vld1q_f64(x + i));
    acc = vaddq_f64(acc, vmulq_f64(vld1q_f64(sub + i), vld1q_f64(x + i - 1)));
    acc = vaddq_f64(acc, vmulq_f64(vld1q_f64(sup + i), vld1q_f64(x + i + 1)));
    vst1q_f64(y + i, acc);
  }
  for (; i + 1 < n; ++i) {
    y[i] = (diag[i] * x[i] + sub[i] * x[i - 1]) + sup[i] * x[i + 1];
  }
  y[n - 1] = diag[n - 1] * x[n - 1] + sub[n - 1] * x[n - 2];
}

void axpby_neon(double a, const double* x, double b, const double* y,
                double* out, std::size_t n) {
  const float64x2_t va = vdupq_n_f64(a);
  const float64x2_t vb = vdupq_n_f64(b);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    vst1q_f64(out + i, vaddq_f64(vmulq_f64(va, vld1q_f64(x + i)),
                                 vmulq_f64(vb, vld1q_f64(y + i))));
  }
  for (; i < n; ++i) out[i] = a * x[i] + b * y[i];
}

double max_abs_neon(const double* x, std::size_t n) {
  float64x2_t m = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) m = vmaxq_f64(vabsq_f64(vld1q_f64(x + i)), m);
  double r = hmax(m);
  for (; i < n; ++i) {
    const double v = std::fabs(x[i]);
    r = v > r ? v : r;
  }
  return r;
}

double max_abs_diff_neon(const double* x, const double* y, std::size_t n) {
  float64x2_t m = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    m = vmaxq_f64(vabdq_f64(vld1q_f64(x + i), vld1q_f64(y + i)), m);
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

const KernelTable* neon_table_if_compiled() {
  static const KernelTable table{"neon", tridiag_matvec_neon, axpby_neon,
                                 max_abs_neon, max_abs_diff_neon};
  return &table;
}

}  // namespace detail
}  // namespace parapost::kernels
