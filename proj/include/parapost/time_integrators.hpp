#pragma once

#include <array>
#include <functional>
#include <memory>
#include <string_view>
#include <vector>

#include "parapost/fem1d.hpp"

namespace parapost {

enum class Scheme {
  BackwardEuler,
  CrankNicolson,
  ExtrapolatedEuler,
  BDF2,
  LobattoIIIC,
  SDIRK2,
};

inline constexpr std::array<Scheme, 6> kAllSchemes{
    Scheme::BackwardEuler, Scheme::CrankNicolson, Scheme::ExtrapolatedEuler,
    Scheme::BDF2,          Scheme::LobattoIIIC,   Scheme::SDIRK2};

/// Diagonal entry of the SDIRK Butcher table, (2 - sqrt 2)/2.
inline constexpr double kSdirkGamma = 0.29289321881345247559915563789515;

/// CLI spelling: euler, cn, exeuler, bdf2, lobatto3c, sdirk2.
std::string_view to_string(Scheme s);
std::string_view display_name(Scheme s);
Scheme scheme_from_string(std::string_view s);

/// M u' + A u = F(t): mass, stiffness and the load vector <f(t), phi_i>_h.
struct SemiDiscreteSystem {
  TriDiagMatrix mass;
  TriDiagMatrix stiffness;
  std::function<NodalVector(double)> load;

  std::size_t size() const { return mass.size(); }
};

SemiDiscreteSystem make_system(const Problem& p, const SpatialMesh& m,
                               MassMode mass = MassMode::Consistent);

/// u_h^0: nodal interpolant of the initial data.
NodalVector initial_state(const Problem& p, const SpatialMesh& m);

struct IntegratorOptions {
  /// SDIRK only: use the piecewise-linear-in-time interpolant of f in the
  /// stage loads (required for the closed-form psi).
  bool sdirk_fhat = true;
};

/// u_h^0..u_h^M plus the stage data each scheme produces. All stage lists
/// are indexed by the step j (length M+1); entries a scheme does not
/// produce stay empty.
///   ExtrapolatedEuler: v[j] = v_h^j, w_half[j] = w_h^{j-1/2}, w[j] = w_h^j
///                      (v[0] = w[0] = u_h^0).
///   LobattoIIIC:       v[j] = v_h^j.
///   SDIRK2:            k1[j], k2[j].
struct Trajectory {
  Scheme scheme = Scheme::BackwardEuler;
  TimeMesh mesh = TimeMesh::uniform(1.0, 1);
  IntegratorOptions options;
  std::vector<NodalVector> states;
  std::vector<NodalVector> v;
  std::vector<NodalVector> w_half;
  std::vector<NodalVector> w;
  std::vector<NodalVector> k1;
  std::vector<NodalVector> k2;

  std::size_t steps() const { return mesh.steps(); }
  /// delta_t u_h^j, j >= 1.
  NodalVector delta_t(std::size_t j) const;
};

/// One-step interface shared by all schemes. step(j) fills states[j] and
/// the stage data of step j from the entries for j-1 (and j-2 for BDF-2).
class TimeIntegrator {
 public:
  virtual ~TimeIntegrator() = default;
  virtual Scheme scheme() const = 0;
  /// Sizes the stage lists and stores the initial data.
  virtual void start(Trajectory& traj, const NodalVector& u0) const;
  virtual void step(std::size_t j, Trajectory& traj) = 0;
};

std::unique_ptr<TimeIntegrator> make_integrator(Scheme s,
                                                const SemiDiscreteSystem& sys,
                                                IntegratorOptions opts = {});

Trajectory integrate(Scheme s, const SemiDiscreteSystem& sys,
                     const TimeMesh& mesh, const NodalVector& u0,
                     IntegratorOptions opts = {});

}  // namespace parapost
