#pragma once

// Data-parallel inner loops of the discrete algebra. Every kernel has a
// scalar reference version; vector versions (AVX2 on x86-64, NEON on
// AArch64) evaluate the same operations in the same order and are required
// to reproduce the scalar results bit for bit.

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace parapost::kernels {

struct KernelTable {
  std::string_view name;
  /// y[i] = (diag[i] x[i] + sub[i] x[i-1]) + sup[i] x[i+1], missing
  /// neighbours at the ends omitted.
  void (*tridiag_matvec)(const double* sub, const double* diag,
                         const double* sup, const double* x, double* y,
                         std::size_t n);
  /// out[i] = a x[i] + b y[i]
  void (*axpby)(double a, const double* x, double b, const double* y,
                double* out, std::size_t n);
  double (*max_abs)(const double* x, std::size_t n);
  double (*max_abs_diff)(const double* x, const double* y, std::size_t n);
};

const KernelTable& scalar_table();
/// nullptr when the variant is not compiled in or the CPU lacks support.
const KernelTable* avx2_table();
const KernelTable* neon_table();

/// All variants usable on this machine, scalar first.
std::vector<const KernelTable*> available_tables();

/// Table used by the library. Chosen on first use: the widest supported
/// variant, unless PARAPOST_KERNELS=scalar|avx2|neon says otherwise.
const KernelTable& active();

/// Overrides the active table ("auto" restores the default choice).
/// Returns false if the requested variant is unavailable.
bool select(std::string_view name);

void tridiag_matvec(std::span<const double> sub, std::span<const double> diag,
                    std::span<const double> sup, std::span<const double> x,
                    std::span<double> y);
void axpby(double a, std::span<const double> x, double b,
           std::span<const double> y, std::span<double> out);
double max_abs(std::span<const double> x);
double max_abs_diff(std::span<const double> x, std::span<const double> y);

}  // namespace parapost::kernels
