#include "parapost/kernels.hpp"

#include <cmath>

namespace parapost::kernels {
namespace {

void tridiag_matvec_scalar(const double* sub, const double* diag,
                           const double* sup, const double* x, double* y,
                           std::size_t n) {
  if (n == 0) return;
  if (n == 1) {
    y[0] = diag[0] * x[0];
    return;
  }
  y[0] = diag[0] * x[0] + sup[0] * x[1];
  for (std::size_t i = 1; i + 1 < n; ++i) {
    y[i] = (diag[i] * x[i] + sub[i] * x[i - 1]) + sup[i] * x[i + 1];
  }
  y[n - 1] = diag[n - 1] * x[n - 1] + sub[n - 1] * x[n - 2];
}

void axpby_scalar(double a, const double* x, double b, const double* y,
                  double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a * x[i] + b * y[i];
}

double max_abs_scalar(const double* x, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double v = std::fabs(x[i]);
    m = v > m ? v : m;
  }
  return m;
}

double max_abs_diff_scalar(const double* x, const double* y, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double v = std::fabs(x[i] - y[i]);
    m = v > m ? v : m;
  }
  return m;
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable table{"scalar", tridiag_matvec_scalar, axpby_scalar,
                                 max_abs_scalar, max_abs_diff_scalar};
  return table;
}

}  // namespace parapost::kernels
