#pragma once

// P1 finite elements on an interval with homogeneous Dirichlet data.
// Discrete functions are stored by their values at the interior nodes
// x_1..x_{N-1}; the boundary values are implicitly zero.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "parapost/problem.hpp"

namespace parapost {

using NodalVector = std::vector<double>;

/// Function evaluated on a known element: f(element, x) with x inside it.
/// Lets callers evaluate P1 data without searching for the element.
using ElementFunction = std::function<double(std::size_t, double)>;

class SpatialMesh {
 public:
  explicit SpatialMesh(std::vector<double> nodes);
  static SpatialMesh uniform(double a, double b, std::size_t elements);

  std::size_t elements() const { return nodes_.size() - 1; }
  std::size_t interior_nodes() const { return nodes_.size() - 2; }
  double node(std::size_t i) const { return nodes_[i]; }
  /// Element e spans [node(e), node(e+1)], e = 0..N-1.
  double h(std::size_t e) const { return nodes_[e + 1] - nodes_[e]; }
  double max_h() const;
  double left() const { return nodes_.front(); }
  double right() const { return nodes_.back(); }
  const std::vector<double>& nodes() const { return nodes_; }

  /// Element containing x (x clamped to the domain).
  std::size_t locate(double x) const;

 private:
  std::vector<double> nodes_;
  bool uniform_ = false;
};

/// Row i holds sub[i] = A(i,i-1), main[i] = A(i,i), sup[i] = A(i,i+1);
/// sub[0] and sup[n-1] are zero.
struct TriDiagMatrix {
  std::vector<double> sub;
  std::vector<double> main;
  std::vector<double> sup;

  TriDiagMatrix() = default;
  explicit TriDiagMatrix(std::size_t n) : sub(n, 0.0), main(n, 0.0), sup(n, 0.0) {}

  std::size_t size() const { return main.size(); }
  NodalVector apply(const NodalVector& x) const;
  void apply(std::span<const double> x, std::span<double> y) const;
  bool symmetric() const;
};

/// a A + b B
TriDiagMatrix combine(double a, const TriDiagMatrix& A, double b,
                      const TriDiagMatrix& B);

enum class MassMode { Consistent, Lumped };

/// a_h(phi_j, phi_i): diffusion integrated exactly with the element-midpoint
/// value of d, reaction by 2-point Gauss quadrature per element.
TriDiagMatrix assemble_stiffness(const Problem& p, const SpatialMesh& m);

/// <phi_j, phi_i>_h, consistent P1 mass or its row-sum lumping.
TriDiagMatrix assemble_mass(const SpatialMesh& m,
                            MassMode mode = MassMode::Consistent);

/// <g, phi_i> by 2-point Gauss quadrature per element.
NodalVector load_vector(const SpatialMesh& m, const SpaceFunction& g);

/// Thomas-algorithm LU factors, reusable across right-hand sides.
class TriDiagFactor {
 public:
  TriDiagFactor() = default;
  /// Throws SingularMatrixError on a (numerically) zero pivot.
  explicit TriDiagFactor(const TriDiagMatrix& A);

  std::size_t size() const { return inv_pivot_.size(); }
  NodalVector solve(const NodalVector& rhs) const;
  void solve_in_place(std::span<double> x) const;

 private:
  std::vector<double> sub_;
  std::vector<double> upper_;      // modified super-diagonal c'_i
  std::vector<double> inv_pivot_;
};

NodalVector solve_tridiag(const TriDiagMatrix& A, const NodalVector& rhs);

/// Value of the P1 function with interior values v at x in element e.
inline double eval_p1(const SpatialMesh& m, std::span<const double> v,
                      std::size_t e, double x) {
  const double left = e == 0 ? 0.0 : v[e - 1];
  const double right = e + 1 == m.elements() ? 0.0 : v[e];
  const double s = (x - m.node(e)) / m.h(e);
  return left + s * (right - left);
}

double eval_p1(const SpatialMesh& m, std::span<const double> v, double x);

/// Nodal interpolant (interior values).
NodalVector interpolate(const SpatialMesh& m, const SpaceFunction& g);

/// max |v| over x_{e} + r h_e / samples, r = 0..samples, for all elements.
double supnorm_sampled(const SpatialMesh& m, const ElementFunction& v,
                       int samples_per_element = 7);
double supnorm_sampled(const SpatialMesh& m, const SpaceFunction& v,
                       int samples_per_element = 7);

/// Sup-norm of a P1 function: extrema sit at nodes.
double nodal_max_abs(std::span<const double> v);

}  // namespace parapost
