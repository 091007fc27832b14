#pragma once

// Shared helpers for the unit tests: seeded generators and a dense solver
// used as an oracle for the tridiagonal code.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "parapost/fem1d.hpp"

namespace testing_support {

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline double uniform(std::mt19937_64& g, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(g);
}

inline std::vector<double> random_vector(std::mt19937_64& g, std::size_t n,
                                         double lo = -1.0, double hi = 1.0) {
  std::vector<double> v(n);
  for (double& x : v) x = uniform(g, lo, hi);
  return v;
}

/// Strictly increasing nodes on [a,b] with random spacing.
inline std::vector<double> random_nodes(std::mt19937_64& g, double a, double b,
                                        std::size_t intervals) {
  std::vector<double> w(intervals);
  double total = 0.0;
  for (double& x : w) {
    x = uniform(g, 0.2, 1.0);
    total += x;
  }
  std::vector<double> nodes(intervals + 1, a);
  double acc = 0.0;
  for (std::size_t i = 0; i < intervals; ++i) {
    acc += w[i];
    nodes[i + 1] = a + (b - a) * acc / total;
  }
  nodes.back() = b;
  return nodes;
}

/// Gaussian elimination with partial pivoting on a dense copy.
inline std::vector<double> dense_solve(const parapost::TriDiagMatrix& A,
                                       std::vector<double> b) {
  const std::size_t n = A.size();
  std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    m[i][i] = A.main[i];
    if (i > 0) m[i][i - 1] = A.sub[i];
    if (i + 1 < n) m[i][i + 1] = A.sup[i];
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r) {
      if (std::abs(m[r][c]) > std::abs(m[piv][c])) piv = r;
    }
    std::swap(m[c], m[piv]);
    std::swap(b[c], b[piv]);
    for (std::size_t r = c + 1; r < n; ++r) {
      const double f = m[r][c] / m[c][c];
      for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
      b[r] -= f * b[c];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t k = i + 1; k < n; ++k) s -= m[i][k] * x[k];
    x[i] = s / m[i][i];
  }
  return x;
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline double max_abs(const std::vector<double>& a) {
  double m = 0.0;
  for (double x : a) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace testing_support
