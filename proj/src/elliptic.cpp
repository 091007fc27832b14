#include "parapost/elliptic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace parapost {

NodalVector solve_elliptic(const Problem& p, const SpatialMesh& m,
                           const SpaceFunction& g) {
  return solve_tridiag(assemble_stiffness(p, m), load_vector(m, g));
}

NodalVector solve_elliptic(const Problem& p, const SpatialMesh& m,
                           const NodalVector& g, MassMode mass) {
  return solve_tridiag(assemble_stiffness(p, m), assemble_mass(m, mass).apply(g));
}

std::string_view to_string(EllipticEstimatorKind kind) {
  switch (kind) {
    case EllipticEstimatorKind::Guaranteed: return "guaranteed";
    case EllipticEstimatorKind::Interior: return "interior";
  }
  return "?";
}

EllipticEstimatorKind elliptic_kind_from_string(std::string_view s) {
  if (s == "guaranteed") return EllipticEstimatorKind::Guaranteed;
  if (s == "interior") return EllipticEstimatorKind::Interior;
  throw InvalidArgument("unknown elliptic estimator '" + std::string(s) + "'");
}

EllipticEstimator::EllipticEstimator(const Problem& p, const SpatialMesh& m)
    : mesh_(m) {
  const std::size_t n = m.elements();
  samples_.resize(n * kSamples);
  reaction_at_samples_.resize(n * kSamples);
  reaction_max_.assign(n, 0.0);
  local_const_.resize(n);
  for (std::size_t e = 0; e < n; ++e) {
    const double x0 = m.node(e);
    const double h = m.h(e);
    for (int k = 0; k < kSamples; ++k) {
      const double x = k + 1 == kSamples
                           ? m.node(e + 1)
                           : x0 + h * static_cast<double>(k) / (kSamples - 1);
      samples_[e * kSamples + k] = x;
      const double r = p.reaction(x);
      reaction_at_samples_[e * kSamples + k] = r;
      reaction_max_[e] = std::max(reaction_max_[e], r);
    }
    local_const_[e] = h * h / (8.0 * p.diffusion(x0 + 0.5 * h));
  }
}

EllipticEstimate EllipticEstimator::estimate(
    std::span<const double> y_h, std::span<const double> g_samples) const {
  const std::size_t n = mesh_.elements();
  if (y_h.size() != mesh_.interior_nodes() || g_samples.size() != samples_.size()) {
    throw InvalidArgument("elliptic estimate: size mismatch");
  }
  std::vector<double> residual_sup(n, 0.0);
  for (std::size_t e = 0; e < n; ++e) {
    double best = 0.0;
    for (int k = 0; k < kSamples; ++k) {
      const std::size_t s = e * kSamples + k;
      const double y = eval_p1(mesh_, y_h, e, samples_[s]);
      best = std::max(best, std::abs(g_samples[s] - reaction_at_samples_[s] * y));
    }
    residual_sup[e] = best;
  }
  return combine(residual_sup);
}

EllipticEstimate EllipticEstimator::estimate(std::span<const double> y_h,
                                             const ElementFunction& g) const {
  std::vector<double> values(samples_.size());
  for (std::size_t s = 0; s < samples_.size(); ++s) {
    values[s] = g(s / kSamples, samples_[s]);
  }
  return estimate(y_h, values);
}

namespace {

class InteriorEstimator final : public EllipticEstimator {
 public:
  InteriorEstimator(const Problem& p, const SpatialMesh& m)
      : EllipticEstimator(p, m) {
    const double r_max =
        *std::max_element(reaction_max_.begin(), reaction_max_.end());
    double q = 0.0;
    for (double c : local_const_) q = std::max(q, c * r_max);
    if (!(q < 1.0)) {
      throw MeshTooCoarseError(
          "interior elliptic estimator: h^2 ||r|| / (8 d) >= 1");
    }
    safety_ = 1.0 / (1.0 - q);
  }

  EllipticEstimatorKind kind() const override {
    return EllipticEstimatorKind::Interior;
  }

  double safety_factor() const { return safety_; }

 protected:
  EllipticEstimate combine(std::span<const double> residual_sup) const override {
    EllipticEstimate out;
    out.per_element.resize(residual_sup.size());
    for (std::size_t e = 0; e < residual_sup.size(); ++e) {
      out.per_element[e] = local_const_[e] * residual_sup[e] * safety_;
      out.eta = std::max(out.eta, out.per_element[e]);
    }
    return out;
  }

 private:
  double safety_ = 1.0;
};

// Error e = y - y_h. Inside element I_e, e - I_h e vanishes at the endpoints
// and satisfies -d_e (e - I_h e)'' = (g - r y_h) - r e, hence
//   |e - I_h e| <= c_e (rho_e + R_e ||e||),  c_e = h_e^2 / (8 d_e).
// The nodal part z = I_h e solves a(z, chi) = -(r (e - I_h e), chi) for all
// chi in V_h, and A^{-1} >= 0 (M-matrix), so
//   |z| <= A^{-1} load(R c rho) + ||e|| A^{-1} load(R^2 c).
// Collecting the ||e|| terms on the left gives the bound.
class GuaranteedEstimator final : public EllipticEstimator {
 public:
  GuaranteedEstimator(const Problem& p, const SpatialMesh& m)
      : EllipticEstimator(p, m) {
    const TriDiagMatrix A = assemble_stiffness(p, m);
    for (std::size_t i = 0; i < A.size(); ++i) {
      if (A.sub[i] > 0.0 || A.sup[i] > 0.0) {
        throw MeshTooCoarseError(
            "guaranteed elliptic estimator: stiffness matrix is not an "
            "M-matrix (h^2 r > 6 d somewhere)");
      }
    }
    factor_ = TriDiagFactor(A);

    const std::size_t n = m.elements();
    std::vector<double> q(n);
    for (std::size_t e = 0; e < n; ++e) {
      q[e] = reaction_max_[e] * reaction_max_[e] * local_const_[e];
    }
    const NodalVector z = nodal_bound(q);
    beta_ = 0.0;
    for (std::size_t e = 0; e < n; ++e) {
      beta_ = std::max(beta_, end_max(z, e) + local_const_[e] * reaction_max_[e]);
    }
    if (!(beta_ < 1.0)) {
      throw MeshTooCoarseError(
          "guaranteed elliptic estimator: contraction factor >= 1");
    }
  }

  EllipticEstimatorKind kind() const override {
    return EllipticEstimatorKind::Guaranteed;
  }

 protected:
  EllipticEstimate combine(std::span<const double> residual_sup) const override {
    const std::size_t n = residual_sup.size();
    std::vector<double> q(n);
    for (std::size_t e = 0; e < n; ++e) {
      q[e] = reaction_max_[e] * local_const_[e] * residual_sup[e];
    }
    const NodalVector z = nodal_bound(q);
    const double safety = 1.0 / (1.0 - beta_);
    EllipticEstimate out;
    out.per_element.resize(n);
    for (std::size_t e = 0; e < n; ++e) {
      out.per_element[e] =
          (end_max(z, e) + local_const_[e] * residual_sup[e]) * safety;
      out.eta = std::max(out.eta, out.per_element[e]);
    }
    return out;
  }

 private:
  // A^{-1} applied to the exact load of the element-wise constant q >= 0.
  NodalVector nodal_bound(std::span<const double> q) const {
    const std::size_t n = mesh_.elements();
    NodalVector rhs(mesh_.interior_nodes(), 0.0);
    for (std::size_t e = 0; e < n; ++e) {
      const double half = 0.5 * mesh_.h(e) * q[e];
      if (e > 0) rhs[e - 1] += half;
      if (e + 1 < n) rhs[e] += half;
    }
    factor_.solve_in_place(rhs);
    return rhs;
  }

  double end_max(const NodalVector& z, std::size_t e) const {
    const double left = e == 0 ? 0.0 : std::abs(z[e - 1]);
    const double right = e + 1 == mesh_.elements() ? 0.0 : std::abs(z[e]);
    return std::max(left, right);
  }

  TriDiagFactor factor_;
  double beta_ = 0.0;
};

}  // namespace

std::unique_ptr<EllipticEstimator> make_elliptic_estimator(
    EllipticEstimatorKind kind, const Problem& p, const SpatialMesh& m) {
  switch (kind) {
    case EllipticEstimatorKind::Guaranteed:
      return std::make_unique<GuaranteedEstimator>(p, m);
    case EllipticEstimatorKind::Interior:
      return std::make_unique<InteriorEstimator>(p, m);
  }
  throw InvalidArgument("unknown elliptic estimator kind");
}

EllipticEstimate estimate_elliptic(const Problem& p, const SpatialMesh& m,
                                   const NodalVector& y_h,
                                   const SpaceFunction& g,
                                   EllipticEstimatorKind kind) {
  const auto est = make_elliptic_estimator(kind, p, m);
  return est->estimate(y_h, [&g](std::size_t, double x) { return g(x); });
}

}  // namespace parapost
