#pragma once

// Elliptic reconstruction data. u_h^j is the discrete elliptic solution for
// the right-hand side f^j + psi^j, where
//     <psi^j, chi>_h = a_h(u_h^j, chi) - <f^j, chi>_h   for all chi in V_h.
// The reconstruction R^j itself is never formed: only the estimates of
// ||R^j - u_h^j|| (eta_ell) and ||delta_t (R - u_h)^j|| (eta_ell_delta) are
// kept.

#include <optional>
#include <vector>

#include "parapost/elliptic.hpp"
#include "parapost/time_integrators.hpp"

namespace parapost {

struct ReconstructionData {
  std::vector<NodalVector> psi;        ///< psi^0..psi^M
  std::vector<NodalVector> delta_psi;  ///< [j] = delta_t psi^j, j >= 1
  std::vector<NodalVector> big_psi;    ///< [j] = Psi^j, j >= 1
  std::vector<double> eta_ell;         ///< eta_ell^0..eta_ell^M
  std::vector<double> eta_ell_delta;   ///< [j] = eta_ell,delta^j, j >= 1
};

/// psi = M^{-1} (A u - F(t)): the mass-matrix route, valid for any scheme.
NodalVector psi_general(const SemiDiscreteSystem& sys, const NodalVector& u,
                        double t);
NodalVector psi_general(const SemiDiscreteSystem& sys,
                        const TriDiagFactor& mass_factor, const NodalVector& u,
                        double t);

/// True when psi^j of this trajectory can be read off the scheme's own
/// equations (false only for SDIRK without f-hat loads).
bool has_closed_form(const Trajectory& tr);

/// Scheme-specific psi^j, j >= 1, without a mass solve. psi_prev = psi^{j-1}
/// is used by the Crank-Nicolson recursion psi^j = -2 delta_t u^j - psi^{j-1}.
/// Throws InvalidArgument if the stage data needed is missing or no closed
/// form exists.
NodalVector psi_closed_form(const Trajectory& tr, std::size_t j,
                            const NodalVector& psi_prev);

/// Psi^j = (psi^j + psi^{j-1})/2 + delta_t u^j.
NodalVector big_psi_definition(const Trajectory& tr, std::size_t j,
                               const NodalVector& psi, const NodalVector& psi_prev);

/// Closed form of Psi^j where the scheme has one: Euler -(tau/2) delta_t psi,
/// Crank-Nicolson 0, BDF-2 -(tau/2) delta_t psi - tau delta_t^2 u.
std::optional<NodalVector> big_psi_closed_form(const Trajectory& tr,
                                               std::size_t j,
                                               const NodalVector& delta_psi);

/// Psi^j by the definition, checked against the closed form (if any) to
/// 1e-9 (1 + ||delta_t u^j||); the closed form is returned when it exists.
NodalVector big_psi(const Trajectory& tr, std::size_t j, const NodalVector& psi,
                    const NodalVector& psi_prev, const NodalVector& delta_psi);

enum class PsiRoute {
  ClosedForm,  ///< closed form for j >= 1 where available, else mass solve
  MassSolve,   ///< mass solve for every j
};

ReconstructionData reconstruct(const Problem& p, const SemiDiscreteSystem& sys,
                               const Trajectory& tr,
                               const EllipticEstimator& estimator,
                               PsiRoute route = PsiRoute::ClosedForm);

}  // namespace parapost
