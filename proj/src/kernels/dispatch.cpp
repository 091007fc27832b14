#include <atomic>
#include <cassert>
#include <cstdlib>
#include <string>

#include "kernels_internal.hpp"

namespace parapost::kernels {

const KernelTable* avx2_table() {
#if defined(PARAPOST_HAVE_AVX2)
  static const bool supported = __builtin_cpu_supports("avx2");
  return supported ? detail::avx2_table_if_compiled() : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable* neon_table() {
#if defined(PARAPOST_HAVE_NEON)
  return detail::neon_table_if_compiled();
#else
  return nullptr;
#endif
}

std::vector<const KernelTable*> available_tables() {
  std::vector<const KernelTable*> out{&scalar_table()};
  if (auto* t = avx2_table()) out.push_back(t);
  if (auto* t = neon_table()) out.push_back(t);
  return out;
}

namespace {

const KernelTable* lookup(std::string_view name) {
  if (name == "scalar") return &scalar_table();
  if (name == "avx2") return avx2_table();
  if (name == "neon") return neon_table();
  return nullptr;
}

const KernelTable* default_table() {
  if (const char* env = std::getenv("PARAPOST_KERNELS")) {
    if (const KernelTable* t = lookup(env)) return t;
  }
  if (auto* t = avx2_table()) return t;
  if (auto* t = neon_table()) return t;
  return &scalar_table();
}

std::atomic<const KernelTable*>& slot() {
  static std::atomic<const KernelTable*> current{default_table()};
  return current;
}

}  // namespace

const KernelTable& active() { return *slot().load(std::memory_order_acquire); }

bool select(std::string_view name) {
  const KernelTable* t = name == "auto" ? default_table() : lookup(name);
  if (t == nullptr) return false;
  slot().store(t, std::memory_order_release);
  return true;
}

void tridiag_matvec(std::span<const double> sub, std::span<const double> diag,
                    std::span<const double> sup, std::span<const double> x,
                    std::span<double> y) {
  assert(sub.size() == diag.size() && sup.size() == diag.size());
  assert(x.size() == diag.size() && y.size() == diag.size());
  active().tridiag_matvec(sub.data(), diag.data(), sup.data(), x.data(),
                          y.data(), diag.size());
}

void axpby(double a, std::span<const double> x, double b,
           std::span<const double> y, std::span<double> out) {
  assert(x.size() == y.size() && out.size() == x.size());
  active().axpby(a, x.data(), b, y.data(), out.data(), x.size());
}

double max_abs(std::span<const double> x) {
  return active().max_abs(x.data(), x.size());
}

double max_abs_diff(std::span<const double> x, std::span<const double> y) {
  assert(x.size() == y.size());
  return active().max_abs_diff(x.data(), y.data(), x.size());
}

}  // namespace parapost::kernels
