#include "parapost/reconstruction.hpp"

#include <cmath>
#include <string>

#include "parapost/kernels.hpp"

namespace parapost {
namespace {

NodalVector lin(double a, const NodalVector& x, double b, const NodalVector& y) {
  NodalVector out(x.size());
  kernels::axpby(a, x, b, y, out);
  return out;
}

void require(bool ok, const char* what) {
  if (!ok) throw InvalidArgument(std::string("psi closed form: ") + what);
}

}  // namespace

NodalVector psi_general(const SemiDiscreteSystem& sys,
                        const TriDiagFactor& mass_factor, const NodalVector& u,
                        double t) {
  NodalVector r = lin(1.0, sys.stiffness.apply(u), -1.0, sys.load(t));
  mass_factor.solve_in_place(r);
  return r;
}

NodalVector psi_general(const SemiDiscreteSystem& sys, const NodalVector& u,
                        double t) {
  return psi_general(sys, TriDiagFactor(sys.mass), u, t);
}

bool has_closed_form(const Trajectory& tr) {
  return tr.scheme != Scheme::SDIRK2 || tr.options.sdirk_fhat;
}

NodalVector psi_closed_form(const Trajectory& tr, std::size_t j,
                            const NodalVector& psi_prev) {
  require(j >= 1 && j <= tr.steps(), "step index out of range");
  const double tau = tr.mesh.tau(j);
  switch (tr.scheme) {
    case Scheme::BackwardEuler: {
      NodalVector d = tr.delta_t(j);
      for (double& x : d) x = -x;
      return d;
    }
    case Scheme::CrankNicolson:
      require(psi_prev.size() == tr.states[j].size(), "missing psi^{j-1}");
      return lin(-2.0, tr.delta_t(j), -1.0, psi_prev);
    case Scheme::ExtrapolatedEuler: {
      require(!tr.w[j].empty() && !tr.w_half[j].empty() && !tr.v[j].empty() &&
                  !tr.v[j - 1].empty(),
              "missing extrapolation stages");
      const NodalVector dw = lin(1.0, tr.w[j], -1.0, tr.w_half[j]);
      const NodalVector dv = lin(1.0, tr.v[j], -1.0, tr.v[j - 1]);
      return lin(-4.0 / tau, dw, 1.0 / tau, dv);
    }
    case Scheme::BDF2: {
      const NodalVector d = tr.delta_t(j);
      if (j == 1) return lin(-1.0, d, 0.0, d);
      // -delta_t u - tau delta_t^2 u, delta_t^2 u = (d - d_prev)/(tau + tau_prev)
      const NodalVector d_prev = tr.delta_t(j - 1);
      const double s = tau / (tau + tr.mesh.tau(j - 1));
      return lin(-1.0 - s, d, s, d_prev);
    }
    case Scheme::LobattoIIIC:
      require(!tr.v[j].empty(), "missing Lobatto stage v");
      return lin(1.0 / tau, tr.v[j], -1.0 / tau, tr.states[j]);
    case Scheme::SDIRK2: {
      require(tr.options.sdirk_fhat,
              "SDIRK without f-hat loads has no closed form");
      require(!tr.k1[j].empty() && !tr.k2[j].empty(), "missing SDIRK stages");
      constexpr double g = kSdirkGamma;
      return lin(1.0 / (2.0 * g) - 1.0, tr.k1[j], -1.0 / (2.0 * g), tr.k2[j]);
    }
  }
  throw InvalidArgument("psi closed form: unknown scheme");
}

NodalVector big_psi_definition(const Trajectory& tr, std::size_t j,
                               const NodalVector& psi,
                               const NodalVector& psi_prev) {
  return lin(1.0, lin(0.5, psi, 0.5, psi_prev), 1.0, tr.delta_t(j));
}

std::optional<NodalVector> big_psi_closed_form(const Trajectory& tr,
                                               std::size_t j,
                                               const NodalVector& delta_psi) {
  const double tau = tr.mesh.tau(j);
  switch (tr.scheme) {
    case Scheme::BackwardEuler:
      return lin(-0.5 * tau, delta_psi, 0.0, delta_psi);
    case Scheme::CrankNicolson:
      return NodalVector(delta_psi.size(), 0.0);
    case Scheme::BDF2: {
      if (j == 1) return lin(-0.5 * tau, delta_psi, 0.0, delta_psi);
      const NodalVector d = tr.delta_t(j);
      const NodalVector d_prev = tr.delta_t(j - 1);
      const double s = tau / (tau + tr.mesh.tau(j - 1));
      // tau delta_t^2 u = s (d - d_prev)
      return lin(-0.5 * tau, delta_psi, -s, lin(1.0, d, -1.0, d_prev));
    }
    default:
      return std::nullopt;
  }
}

NodalVector big_psi(const Trajectory& tr, std::size_t j, const NodalVector& psi,
                    const NodalVector& psi_prev, const NodalVector& delta_psi) {
  NodalVector def = big_psi_definition(tr, j, psi, psi_prev);
  auto closed = big_psi_closed_form(tr, j, delta_psi);
  if (!closed) return def;
  const double scale = 1.0 + nodal_max_abs(tr.delta_t(j));
  const double gap = kernels::max_abs_diff(def, *closed);
  if (gap > 1e-9 * scale) {
    throw Error("Psi^" + std::to_string(j) +
                ": definition and closed form disagree by " +
                std::to_string(gap));
  }
  return std::move(*closed);
}

ReconstructionData reconstruct(const Problem& p, const SemiDiscreteSystem& sys,
                               const Trajectory& tr,
                               const EllipticEstimator& estimator,
                               PsiRoute route) {
  const std::size_t M = tr.steps();
  const SpatialMesh& mesh = estimator.mesh();
  const TriDiagFactor mass_factor(sys.mass);
  const bool closed = route == PsiRoute::ClosedForm && has_closed_form(tr);

  ReconstructionData out;
  out.psi.resize(M + 1);
  out.delta_psi.resize(M + 1);
  out.big_psi.resize(M + 1);
  out.eta_ell.assign(M + 1, 0.0);
  out.eta_ell_delta.assign(M + 1, 0.0);

  out.psi[0] = psi_general(sys, mass_factor, tr.states[0], tr.mesh.t(0));
  for (std::size_t j = 1; j <= M; ++j) {
    out.psi[j] = closed ? psi_closed_form(tr, j, out.psi[j - 1])
                        : psi_general(sys, mass_factor, tr.states[j], tr.mesh.t(j));
    const double inv = 1.0 / tr.mesh.tau(j);
    out.delta_psi[j] = lin(inv, out.psi[j], -inv, out.psi[j - 1]);
    out.big_psi[j] = big_psi(tr, j, out.psi[j], out.psi[j - 1], out.delta_psi[j]);
  }

  // Elliptic estimates. f is sampled once per time level at the estimator's
  // sample points and reused for the difference quotient.
  const auto& xs = estimator.sample_points();
  constexpr std::size_t S = EllipticEstimator::kSamples;
  auto sample_f = [&](double t) {
    std::vector<double> v(xs.size());
    for (std::size_t s = 0; s < xs.size(); ++s) v[s] = p.source(xs[s], t);
    return v;
  };
  auto add_p1 = [&](std::vector<double>& g, const NodalVector& w) {
    for (std::size_t s = 0; s < xs.size(); ++s) {
      g[s] += eval_p1(mesh, w, s / S, xs[s]);
    }
  };

  std::vector<double> f_prev = sample_f(tr.mesh.t(0));
  {
    std::vector<double> g = f_prev;
    add_p1(g, out.psi[0]);
    out.eta_ell[0] = estimator.estimate(tr.states[0], g).eta;
  }
  for (std::size_t j = 1; j <= M; ++j) {
    std::vector<double> f_now = sample_f(tr.mesh.t(j));
    std::vector<double> g = f_now;
    add_p1(g, out.psi[j]);
    out.eta_ell[j] = estimator.estimate(tr.states[j], g).eta;

    const double inv = 1.0 / tr.mesh.tau(j);
    std::vector<double> gd(xs.size());
    for (std::size_t s = 0; s < xs.size(); ++s) {
      gd[s] = (f_now[s] - f_prev[s]) * inv;
    }
    add_p1(gd, out.delta_psi[j]);
    out.eta_ell_delta[j] = estimator.estimate(tr.delta_t(j), gd).eta;
    f_prev = std::move(f_now);
  }
  return out;
}

}  // namespace parapost
