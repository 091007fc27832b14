#include "parapost/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace parapost {
namespace {

// q(x) = x + x^2/2 - (1+x) log(1+x) = sum_{n>=3} (-1)^{n+1} x^n / (n(n-1)).
// Direct evaluation cancels to O(x^3), so small x uses the series.
double q_cancel_free(double x) {
  if (x >= 0.1) return x + 0.5 * x * x - (1.0 + x) * std::log1p(x);
  double term = x * x * x;
  double sum = 0.0;
  for (int n = 3; n < 60; ++n) {
    const double c = term / (static_cast<double>(n) * (n - 1));
    sum += (n % 2 == 1) ? c : -c;
    if (c < 1e-18 * sum) break;
    term *= x;
  }
  return sum;
}

}  // namespace

double chi_integral(const GreenBounds& gb, const TimeMesh& tm, std::size_t j) {
  const double T = tm.final_time();
  const double tau = tm.tau(j);
  const double A = T - tm.t(j);
  double singular = 0.0;  // int (t_j-s)(s-t_{j-1})/(2 (T-s)) ds
  if (j == tm.steps() || A <= 0.0) {
    // (t_j - s)/(T - s) = 1: int (s - t_{j-1})/2 ds
    singular = 0.25 * tau * tau;
  } else {
    // With u = T - s, B = A + tau:
    //   1/2 [-(B^2-A^2)/2 + (A+B)(B-A) - AB log(B/A)] = A^2 q(tau/A) / 2
    singular = 0.5 * A * A * q_cancel_free(tau / A);
  }
  return gb.kappa1 * singular + gb.kappa1prime * tau * tau * tau / 12.0;
}

EstimatorWeights compute_weights(const GreenBounds& gb, const TimeMesh& tm) {
  const std::size_t M = tm.steps();
  const double T = tm.final_time();
  EstimatorWeights w;
  w.sigma.resize(M + 1);
  w.mu.assign(M + 1, 0.0);
  w.chi.assign(M + 1, 0.0);
  for (std::size_t j = 0; j <= M; ++j) {
    w.sigma[j] = std::exp(-gb.gamma * (T - tm.t(j)));
  }
  w.sigma[M] = 1.0;
  for (std::size_t j = 1; j <= M; ++j) {
    const double tau = tm.tau(j);
    const double A = T - tm.t(j);
    if (j == M) {
      w.mu[j] = gb.kappa1 > 0.0 ? std::numeric_limits<double>::infinity()
                                : gb.kappa1prime * tau;
    } else {
      w.mu[j] = gb.kappa1 * std::log1p(tau / A) + gb.kappa1prime * tau;
    }
    w.chi[j] = std::min(0.25 * gb.kappa0 * tau * tau, chi_integral(gb, tm, j));
  }
  return w;
}

double eta_init(const GreenBounds& gb, const TimeMesh& tm, const Problem& p,
                const SpatialMesh& m, const NodalVector& u_h0,
                int samples_per_element) {
  const double sigma0 = std::exp(-gb.gamma * tm.final_time());
  const double err = supnorm_sampled(
      m,
      [&](std::size_t e, double x) { return p.initial(x) - eval_p1(m, u_h0, e, x); },
      samples_per_element);
  return gb.kappa0 * sigma0 * err;
}

double eta_f(const GreenBounds& gb, const TimeMesh& tm,
             const EstimatorWeights& w, const Problem& p, const SpatialMesh& m,
             std::vector<double>* per_step, int samples_per_element) {
  const std::size_t M = tm.steps();
  if (per_step) per_step->assign(M + 1, 0.0);
  double sum = 0.0;
  for (std::size_t j = 1; j <= M; ++j) {
    const double t1 = tm.t(j);
    const double t0 = tm.t(j - 1);
    const double th = 0.5 * (t0 + t1);
    const double bracket = supnorm_sampled(
        m,
        [&](std::size_t, double x) {
          return p.source(x, t1) - 2.0 * p.source(x, th) + p.source(x, t0);
        },
        samples_per_element);
    const double term = w.sigma[j] * gb.kappa0 * tm.tau(j) / 3.0 * bracket;
    if (per_step) (*per_step)[j] = term;
    sum += term;
  }
  return sum;
}

double eta_ell_MK(const GreenBounds& gb, const TimeMesh& tm, std::size_t K,
                  const std::vector<double>& eta_ell,
                  const std::vector<double>& eta_ell_delta,
                  const EstimatorWeights& w) {
  const std::size_t M = tm.steps();
  if (K >= M) {
    throw InvalidArgument("K must satisfy 0 <= K <= M-1 (K = " +
                          std::to_string(K) + ", M = " + std::to_string(M) + ")");
  }
  if (eta_ell.size() != M + 1 || eta_ell_delta.size() != M + 1) {
    throw InvalidArgument("eta_ell_MK: estimate lists must have length M+1");
  }
  double inner = eta_ell[M] + w.sigma[K] * eta_ell[K];
  for (std::size_t j = K + 1; j <= M; ++j) {
    inner += w.sigma[j] * tm.tau(j) * eta_ell_delta[j];
  }
  double out = gb.kappa0 * inner;
  for (std::size_t j = 1; j <= K; ++j) {
    out += w.sigma[j] * w.mu[j] * std::max(eta_ell[j], eta_ell[j - 1]);
  }
  return out;
}

PsiTerms eta_delta_psi_and_big_psi(const GreenBounds& gb, const TimeMesh& tm,
                                   const EstimatorWeights& w,
                                   const ReconstructionData& recon) {
  const std::size_t M = tm.steps();
  PsiTerms out;
  out.delta_psi_per_step.assign(M + 1, 0.0);
  out.big_psi_per_step.assign(M + 1, 0.0);
  for (std::size_t j = 1; j <= M; ++j) {
    const double dpsi = w.sigma[j] * w.chi[j] * nodal_max_abs(recon.delta_psi[j]);
    const double bpsi =
        gb.kappa0 * w.sigma[j] * tm.tau(j) * nodal_max_abs(recon.big_psi[j]);
    out.delta_psi_per_step[j] = dpsi;
    out.big_psi_per_step[j] = bpsi;
    out.eta_delta_psi += dpsi;
    out.eta_big_psi += bpsi;
  }
  return out;
}

double total_of(const Components& c) {
  double s = c.eta_init;
  s += c.eta_ell_MK;
  s += c.eta_f;
  s += c.eta_delta_psi;
  s += c.eta_big_psi;
  return s;
}

EstimatorReport assemble_report(const Components& c, std::size_t K) {
  EstimatorReport r;
  r.eta_init = c.eta_init;
  r.eta_ell_MK = c.eta_ell_MK;
  r.eta_f = c.eta_f;
  r.eta_delta_psi = c.eta_delta_psi;
  r.eta_big_psi = c.eta_big_psi;
  r.total = total_of(c);
  r.K = K;
  return r;
}

EstimatorReport build_report(const ProblemInstance& inst,
                             const SpatialMesh& mesh, const TimeMesh& tm,
                             const Trajectory& tr,
                             const ReconstructionData& recon, std::size_t K,
                             bool scan_K) {
  const GreenBounds& gb = inst.bounds;
  const std::size_t M = tm.steps();
  if (K >= M) {
    throw InvalidArgument("K must satisfy 0 <= K <= M-1 (K = " +
                          std::to_string(K) + ", M = " + std::to_string(M) + ")");
  }
  EstimatorWeights w = compute_weights(gb, tm);

  Components c;
  c.eta_init = eta_init(gb, tm, inst.problem, mesh, tr.states[0]);
  std::vector<double> f_terms;
  c.eta_f = eta_f(gb, tm, w, inst.problem, mesh, &f_terms);
  PsiTerms psi = eta_delta_psi_and_big_psi(gb, tm, w, recon);
  c.eta_delta_psi = psi.eta_delta_psi;
  c.eta_big_psi = psi.eta_big_psi;

  std::size_t best_K = K;
  c.eta_ell_MK = eta_ell_MK(gb, tm, K, recon.eta_ell, recon.eta_ell_delta, w);
  if (scan_K) {
    for (std::size_t k = 0; k < M; ++k) {
      const double v = eta_ell_MK(gb, tm, k, recon.eta_ell, recon.eta_ell_delta, w);
      if (v < c.eta_ell_MK) {
        c.eta_ell_MK = v;
        best_K = k;
      }
    }
  }

  EstimatorReport r = assemble_report(c, best_K);
  r.t = tm.nodes();
  r.weights = std::move(w);
  r.eta_ell = recon.eta_ell;
  r.eta_ell_delta = recon.eta_ell_delta;
  r.f_terms = std::move(f_terms);
  r.delta_psi_terms = std::move(psi.delta_psi_per_step);
  r.big_psi_terms = std::move(psi.big_psi_per_step);
  return r;
}

RunResult run_estimator(const ProblemInstance& inst, Scheme scheme,
                        const RunConfig& cfg) {
  if (cfg.steps < 1) throw InvalidArgument("run: M must be positive");
  if (cfg.spatial_ratio < 1) throw InvalidArgument("run: spatial ratio must be >= 1");
  const Problem& p = inst.problem;
  p.validate();
  inst.bounds.validate();

  RunResult out;
  out.scheme = scheme;
  out.time_mesh = TimeMesh::uniform(p.final_time, cfg.steps);
  out.mesh = SpatialMesh::uniform(p.domain_left, p.domain_right,
                                  std::max<std::size_t>(2, cfg.spatial_ratio * cfg.steps));
  const SemiDiscreteSystem sys = make_system(p, out.mesh, cfg.mass);
  IntegratorOptions opts;
  opts.sdirk_fhat = cfg.sdirk_fhat;
  out.trajectory =
      integrate(scheme, sys, out.time_mesh, initial_state(p, out.mesh), opts);
  const auto est = make_elliptic_estimator(cfg.elliptic, p, out.mesh);
  out.recon = reconstruct(p, sys, out.trajectory, *est, cfg.psi_route);
  out.report = build_report(inst, out.mesh, out.time_mesh, out.trajectory,
                            out.recon, cfg.K, cfg.scan_K);
  return out;
}

}  // namespace parapost
