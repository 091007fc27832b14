#include "parapost/fem1d.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "parapost/kernels.hpp"

namespace parapost {
namespace {

// 2-point Gauss rule on [0,1]: nodes (1 -+ 1/sqrt 3)/2, weights 1/2.
constexpr double kGaussLo = 0.21132486540518711775;
constexpr double kGaussHi = 0.78867513459481288225;

}  // namespace

SpatialMesh::SpatialMesh(std::vector<double> nodes) : nodes_(std::move(nodes)) {
  if (nodes_.size() < 3) {
    throw InvalidArgument("spatial mesh: need at least two elements");
  }
  for (std::size_t i = 1; i < nodes_.size(); ++i) {
    if (!(nodes_[i] > nodes_[i - 1])) {
      throw InvalidArgument("spatial mesh: nodes must be strictly increasing");
    }
  }
}

SpatialMesh SpatialMesh::uniform(double a, double b, std::size_t elements) {
  if (elements < 2) throw InvalidArgument("spatial mesh: need N >= 2");
  std::vector<double> nodes(elements + 1);
  const double n = static_cast<double>(elements);
  for (std::size_t i = 0; i <= elements; ++i) {
    const double s = static_cast<double>(i) / n;
    nodes[i] = (1.0 - s) * a + s * b;
  }
  nodes.front() = a;
  nodes.back() = b;
  SpatialMesh m(std::move(nodes));
  m.uniform_ = true;
  return m;
}

double SpatialMesh::max_h() const {
  double m = 0.0;
  for (std::size_t e = 0; e < elements(); ++e) m = std::max(m, h(e));
  return m;
}

std::size_t SpatialMesh::locate(double x) const {
  const std::size_t n = elements();
  if (x <= nodes_.front()) return 0;
  if (x >= nodes_.back()) return n - 1;
  std::size_t e;
  if (uniform_) {
    const double s = (x - nodes_.front()) / (nodes_.back() - nodes_.front());
    e = std::min(n - 1, static_cast<std::size_t>(s * static_cast<double>(n)));
    // Guard against rounding at element boundaries.
    while (e > 0 && x < nodes_[e]) --e;
    while (e + 1 < n && x > nodes_[e + 1]) ++e;
  } else {
    auto it = std::upper_bound(nodes_.begin(), nodes_.end(), x);
    e = static_cast<std::size_t>(it - nodes_.begin()) - 1;
    e = std::min(e, n - 1);
  }
  return e;
}

NodalVector TriDiagMatrix::apply(const NodalVector& x) const {
  NodalVector y(size());
  apply(x, y);
  return y;
}

void TriDiagMatrix::apply(std::span<const double> x, std::span<double> y) const {
  kernels::tridiag_matvec(sub, main, sup, x, y);
}

bool TriDiagMatrix::symmetric() const {
  for (std::size_t i = 1; i < size(); ++i) {
    if (sub[i] != sup[i - 1]) return false;
  }
  return true;
}

TriDiagMatrix combine(double a, const TriDiagMatrix& A, double b,
                      const TriDiagMatrix& B) {
  if (A.size() != B.size()) throw InvalidArgument("combine: size mismatch");
  TriDiagMatrix C(A.size());
  kernels::axpby(a, A.sub, b, B.sub, C.sub);
  kernels::axpby(a, A.main, b, B.main, C.main);
  kernels::axpby(a, A.sup, b, B.sup, C.sup);
  return C;
}

namespace {

// Scatter a symmetric 2x2 element matrix [[k00,k01],[k01,k11]] of element e.
void scatter(TriDiagMatrix& A, std::size_t elements, std::size_t e, double k00,
             double k01, double k11) {
  const bool has_left = e > 0;
  const bool has_right = e + 1 < elements;
  if (has_left) A.main[e - 1] += k00;
  if (has_right) A.main[e] += k11;
  if (has_left && has_right) {
    A.sup[e - 1] += k01;
    A.sub[e] += k01;
  }
}

}  // namespace

TriDiagMatrix assemble_stiffness(const Problem& p, const SpatialMesh& m) {
  const std::size_t n = m.elements();
  TriDiagMatrix A(m.interior_nodes());
  for (std::size_t e = 0; e < n; ++e) {
    const double h = m.h(e);
    const double x0 = m.node(e);
    const double d = p.diffusion(x0 + 0.5 * h);
    const double r_lo = p.reaction(x0 + kGaussLo * h);
    const double r_hi = p.reaction(x0 + kGaussHi * h);
    // Hat values at the Gauss points: phi_left = 1 - s, phi_right = s.
    const double w = 0.5 * h;
    const double m00 = w * (r_lo * kGaussHi * kGaussHi + r_hi * kGaussLo * kGaussLo);
    const double m11 = w * (r_lo * kGaussLo * kGaussLo + r_hi * kGaussHi * kGaussHi);
    const double m01 = w * (r_lo + r_hi) * kGaussLo * kGaussHi;
    scatter(A, n, e, d / h + m00, -d / h + m01, d / h + m11);
  }
  return A;
}

TriDiagMatrix assemble_mass(const SpatialMesh& m, MassMode mode) {
  const std::size_t n = m.elements();
  TriDiagMatrix M(m.interior_nodes());
  for (std::size_t e = 0; e < n; ++e) {
    const double h = m.h(e);
    if (mode == MassMode::Consistent) {
      scatter(M, n, e, h / 3.0, h / 6.0, h / 3.0);
    } else {
      scatter(M, n, e, h / 2.0, 0.0, h / 2.0);
    }
  }
  return M;
}

NodalVector load_vector(const SpatialMesh& m, const SpaceFunction& g) {
  const std::size_t n = m.elements();
  NodalVector F(m.interior_nodes(), 0.0);
  for (std::size_t e = 0; e < n; ++e) {
    const double h = m.h(e);
    const double x0 = m.node(e);
    const double g_lo = g(x0 + kGaussLo * h);
    const double g_hi = g(x0 + kGaussHi * h);
    const double w = 0.5 * h;
    if (e > 0) F[e - 1] += w * (g_lo * kGaussHi + g_hi * kGaussLo);
    if (e + 1 < n) F[e] += w * (g_lo * kGaussLo + g_hi * kGaussHi);
  }
  return F;
}

TriDiagFactor::TriDiagFactor(const TriDiagMatrix& A)
    : sub_(A.sub), upper_(A.size()), inv_pivot_(A.size()) {
  const std::size_t n = A.size();
  constexpr double eps = std::numeric_limits<double>::epsilon();
  double prev_upper = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double pivot = A.main[i] - (i > 0 ? A.sub[i] * prev_upper : 0.0);
    const double scale =
        std::abs(A.main[i]) + std::abs(A.sub[i]) + std::abs(A.sup[i]);
    if (!(std::abs(pivot) > 16.0 * eps * scale)) {
      throw SingularMatrixError("tridiagonal solve: zero pivot in row " +
                                std::to_string(i));
    }
    inv_pivot_[i] = 1.0 / pivot;
    upper_[i] = A.sup[i] * inv_pivot_[i];
    prev_upper = upper_[i];
  }
}

void TriDiagFactor::solve_in_place(std::span<double> x) const {
  const std::size_t n = size();
  if (x.size() != n) throw InvalidArgument("tridiagonal solve: size mismatch");
  if (n == 0) return;
  x[0] *= inv_pivot_[0];
  for (std::size_t i = 1; i < n; ++i) {
    x[i] = (x[i] - sub_[i] * x[i - 1]) * inv_pivot_[i];
  }
  for (std::size_t i = n - 1; i-- > 0;) {
    x[i] -= upper_[i] * x[i + 1];
  }
}

NodalVector TriDiagFactor::solve(const NodalVector& rhs) const {
  NodalVector x = rhs;
  solve_in_place(x);
  return x;
}

NodalVector solve_tridiag(const TriDiagMatrix& A, const NodalVector& rhs) {
  return TriDiagFactor(A).solve(rhs);
}

double eval_p1(const SpatialMesh& m, std::span<const double> v, double x) {
  return eval_p1(m, v, m.locate(x), x);
}

NodalVector interpolate(const SpatialMesh& m, const SpaceFunction& g) {
  NodalVector v(m.interior_nodes());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = g(m.node(i + 1));
  return v;
}

double supnorm_sampled(const SpatialMesh& m, const ElementFunction& v,
                       int samples_per_element) {
  if (samples_per_element < 2) {
    throw InvalidArgument("supnorm_sampled: need at least 2 samples");
  }
  const double k = static_cast<double>(samples_per_element);
  double best = 0.0;
  for (std::size_t e = 0; e < m.elements(); ++e) {
    const double x0 = m.node(e);
    const double h = m.h(e);
    for (int r = 0; r <= samples_per_element; ++r) {
      const double x = r == samples_per_element ? m.node(e + 1)
                                                : x0 + static_cast<double>(r) * h / k;
      best = std::max(best, std::abs(v(e, x)));
    }
  }
  return best;
}

double supnorm_sampled(const SpatialMesh& m, const SpaceFunction& v,
                       int samples_per_element) {
  return supnorm_sampled(
      m, [&v](std::size_t, double x) { return v(x); }, samples_per_element);
}

double nodal_max_abs(std::span<const double> v) { return kernels::max_abs(v); }

}  // namespace parapost
