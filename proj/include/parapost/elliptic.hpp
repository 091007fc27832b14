#pragma once

// Steady problem  -(d y')' + r y = g  with its P1 approximation y_h, and
// computable maximum-norm bounds  ||y - y_h||_inf <= eta(y_h, g).

#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include "parapost/fem1d.hpp"

namespace parapost {

struct EllipticEstimate {
  double eta = 0.0;
  /// Element contributions, already scaled so that eta = max(per_element).
  std::vector<double> per_element;
};

/// y_h with a_h(y_h, chi) = <g, chi>_h for all hat functions chi.
NodalVector solve_elliptic(const Problem& p, const SpatialMesh& m,
                           const SpaceFunction& g);
/// Same with g in V_h (given by interior nodal values).
NodalVector solve_elliptic(const Problem& p, const SpatialMesh& m,
                           const NodalVector& g,
                           MassMode mass = MassMode::Consistent);

enum class EllipticEstimatorKind {
  /// Interior residual plus a bound on the nodal error obtained from the
  /// discrete maximum principle. A true upper bound when a_h is exact.
  Guaranteed,
  /// Interior residual only: (h^2/8d) sup|g - r y_h| with the
  /// (1 - h^2 ||r|| / 8d)^{-1} factor. Ignores the nodal error.
  Interior,
};

std::string_view to_string(EllipticEstimatorKind kind);
EllipticEstimatorKind elliptic_kind_from_string(std::string_view s);

/// Estimator bound to one problem and mesh. The residual g - r y_h is
/// sampled at kSamples evenly spaced points per element (both endpoints
/// included); the diffusion is taken element-wise constant at its midpoint
/// value, matching assemble_stiffness.
class EllipticEstimator {
 public:
  static constexpr int kSamples = 9;

  EllipticEstimator(const Problem& p, const SpatialMesh& m);
  virtual ~EllipticEstimator() = default;

  const SpatialMesh& mesh() const { return mesh_; }
  /// Sample abscissae, element-major: element e owns
  /// [e*kSamples, (e+1)*kSamples).
  const std::vector<double>& sample_points() const { return samples_; }

  /// g given by its values at sample_points().
  EllipticEstimate estimate(std::span<const double> y_h,
                            std::span<const double> g_samples) const;
  EllipticEstimate estimate(std::span<const double> y_h,
                            const ElementFunction& g) const;

  virtual EllipticEstimatorKind kind() const = 0;

 protected:
  /// residual_sup[e] = sup over element e of |g - r y_h|.
  virtual EllipticEstimate combine(std::span<const double> residual_sup) const = 0;

  SpatialMesh mesh_;
  std::vector<double> samples_;
  std::vector<double> reaction_at_samples_;
  std::vector<double> reaction_max_;  // per element
  std::vector<double> local_const_;   // h_e^2 / (8 d_e)
};

/// Throws MeshTooCoarseError if the estimator's resolution condition fails.
std::unique_ptr<EllipticEstimator> make_elliptic_estimator(
    EllipticEstimatorKind kind, const Problem& p, const SpatialMesh& m);

EllipticEstimate estimate_elliptic(
    const Problem& p, const SpatialMesh& m, const NodalVector& y_h,
    const SpaceFunction& g,
    EllipticEstimatorKind kind = EllipticEstimatorKind::Guaranteed);

}  // namespace parapost
