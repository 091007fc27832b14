#pragma once

// Final-time maximum-norm bound
//   ||u(T) - u_h^M||_inf <= eta^{M,K}
//     = eta_init + eta_ell^{M,K} + eta_f + eta_delta_psi + eta_Psi
// assembled from Green's-function bounds and elliptic reconstruction data.

#include <cstddef>
#include <vector>

#include "parapost/reconstruction.hpp"

namespace parapost {

struct EstimatorWeights {
  std::vector<double> sigma;  ///< sigma_j = exp(-gamma (T - t_j)), j = 0..M
  std::vector<double> mu;     ///< [j], j = 1..M; +inf at j = M when kappa1 > 0
  std::vector<double> chi;    ///< [j], j = 1..M
};

/// int_{I_j} (t_j - s)(s - t_{j-1})/2 (kappa1/(T-s) + kappa1') ds in closed
/// form (the second argument of the min defining chi_j).
double chi_integral(const GreenBounds& gb, const TimeMesh& tm, std::size_t j);

EstimatorWeights compute_weights(const GreenBounds& gb, const TimeMesh& tm);

/// kappa0 sigma_0 ||u^0 - u_h^0||, sup-norm sampled on the FE mesh.
double eta_init(const GreenBounds& gb, const TimeMesh& tm, const Problem& p,
                const SpatialMesh& m, const NodalVector& u_h0,
                int samples_per_element = 7);

/// sum_j sigma_j kappa0 (tau_j/3) ||f^j - 2 f^{j-1/2} + f^{j-1}||
/// (Simpson approximation of the time-interpolation error of f).
/// Per-step terms go to per_step[j] when given.
double eta_f(const GreenBounds& gb, const TimeMesh& tm,
             const EstimatorWeights& w, const Problem& p, const SpatialMesh& m,
             std::vector<double>* per_step = nullptr,
             int samples_per_element = 7);

/// kappa0 (eta^M + sigma_K eta^K + sum_{j>K} sigma_j tau_j eta_delta^j)
///   + sum_{j<=K} sigma_j mu_j max(eta^j, eta^{j-1}).
/// Throws InvalidArgument unless 0 <= K <= M-1.
double eta_ell_MK(const GreenBounds& gb, const TimeMesh& tm, std::size_t K,
                  const std::vector<double>& eta_ell,
                  const std::vector<double>& eta_ell_delta,
                  const EstimatorWeights& w);

struct PsiTerms {
  double eta_delta_psi = 0.0;
  double eta_big_psi = 0.0;
  std::vector<double> delta_psi_per_step;
  std::vector<double> big_psi_per_step;
};

/// sum_j sigma_j chi_j ||delta_t psi^j|| and kappa0 sum_j sigma_j tau_j ||Psi^j||
/// with nodal sup-norms.
PsiTerms eta_delta_psi_and_big_psi(const GreenBounds& gb, const TimeMesh& tm,
                                   const EstimatorWeights& w,
                                   const ReconstructionData& recon);

struct EstimatorReport {
  double eta_init = 0.0;
  double eta_ell_MK = 0.0;
  double eta_f = 0.0;
  double eta_delta_psi = 0.0;
  double eta_big_psi = 0.0;
  double total = 0.0;
  std::size_t K = 0;

  // Per-step data, indexed by j = 0..M.
  std::vector<double> t;
  EstimatorWeights weights;
  std::vector<double> eta_ell;
  std::vector<double> eta_ell_delta;
  std::vector<double> f_terms;
  std::vector<double> delta_psi_terms;
  std::vector<double> big_psi_terms;
};

struct Components {
  double eta_init = 0.0;
  double eta_ell_MK = 0.0;
  double eta_f = 0.0;
  double eta_delta_psi = 0.0;
  double eta_big_psi = 0.0;
};

/// Sum in the fixed order init, ell, f, delta_psi, Psi.
double total_of(const Components& c);

EstimatorReport assemble_report(const Components& c, std::size_t K);

/// Everything needed to run one scheme on one problem and bound its error.
struct RunConfig {
  std::size_t steps = 64;            ///< M (uniform time mesh)
  std::size_t spatial_ratio = 1;     ///< N = spatial_ratio * M elements
  std::size_t K = 0;
  bool scan_K = false;               ///< report min over K = 0..M-1
  MassMode mass = MassMode::Consistent;
  EllipticEstimatorKind elliptic = EllipticEstimatorKind::Guaranteed;
  PsiRoute psi_route = PsiRoute::ClosedForm;
  bool sdirk_fhat = true;
};

struct RunResult {
  Scheme scheme = Scheme::BackwardEuler;
  SpatialMesh mesh = SpatialMesh::uniform(0.0, 1.0, 2);
  TimeMesh time_mesh = TimeMesh::uniform(1.0, 1);
  Trajectory trajectory;
  ReconstructionData recon;
  EstimatorReport report;
};

/// Integrates, reconstructs and assembles the bound. With scan_K the report
/// carries the K with the smallest total.
RunResult run_estimator(const ProblemInstance& inst, Scheme scheme,
                        const RunConfig& cfg);

/// Full report for a given reconstruction and K.
EstimatorReport build_report(const ProblemInstance& inst,
                             const SpatialMesh& mesh, const TimeMesh& tm,
                             const Trajectory& tr,
                             const ReconstructionData& recon, std::size_t K,
                             bool scan_K);

}  // namespace parapost
