#include "parapost/time_integrators.hpp"

#include <cmath>
#include <complex>
#include <deque>
#include <string>
#include <utility>

#include "parapost/kernels.hpp"

namespace parapost {

std::string_view to_string(Scheme s) {
  switch (s) {
    case Scheme::BackwardEuler: return "euler";
    case Scheme::CrankNicolson: return "cn";
    case Scheme::ExtrapolatedEuler: return "exeuler";
    case Scheme::BDF2: return "bdf2";
    case Scheme::LobattoIIIC: return "lobatto3c";
    case Scheme::SDIRK2: return "sdirk2";
  }
  return "?";
}

std::string_view display_name(Scheme s) {
  switch (s) {
    case Scheme::BackwardEuler: return "Euler";
    case Scheme::CrankNicolson: return "Crank-Nicolson";
    case Scheme::ExtrapolatedEuler: return "Extrapolated Euler";
    case Scheme::BDF2: return "BDF-2";
    case Scheme::LobattoIIIC: return "Lobatto IIIC";
    case Scheme::SDIRK2: return "SDIRK";
  }
  return "?";
}

Scheme scheme_from_string(std::string_view s) {
  for (Scheme k : kAllSchemes) {
    if (to_string(k) == s) return k;
  }
  throw InvalidArgument("unknown method '" + std::string(s) + "'");
}

SemiDiscreteSystem make_system(const Problem& p, const SpatialMesh& m,
                               MassMode mass) {
  SemiDiscreteSystem sys;
  sys.mass = assemble_mass(m, mass);
  sys.stiffness = assemble_stiffness(p, m);
  sys.load = [src = p.source, m](double t) {
    return load_vector(m, [&src, t](double x) { return src(x, t); });
  };
  return sys;
}

NodalVector initial_state(const Problem& p, const SpatialMesh& m) {
  return interpolate(m, p.initial);
}

NodalVector Trajectory::delta_t(std::size_t j) const {
  NodalVector d(states[j].size());
  const double inv = 1.0 / mesh.tau(j);
  kernels::axpby(inv, states[j], -inv, states[j - 1], d);
  return d;
}

void TimeIntegrator::start(Trajectory& traj, const NodalVector& u0) const {
  const std::size_t n = traj.mesh.steps() + 1;
  traj.scheme = scheme();
  traj.states.assign(n, {});
  traj.states[0] = u0;
  traj.v.assign(n, {});
  traj.w_half.assign(n, {});
  traj.w.assign(n, {});
  traj.k1.assign(n, {});
  traj.k2.assign(n, {});
}

namespace {

// Factorisations of M + c A, reused across steps with equal c.
class ShiftedSolver {
 public:
  explicit ShiftedSolver(const SemiDiscreteSystem& sys) : sys_(&sys) {}

  const TriDiagFactor& factor(double c) {
    for (auto& [key, f] : cache_) {
      if (key == c) return f;
    }
    if (cache_.size() >= 4) cache_.pop_front();
    cache_.emplace_back(c, TriDiagFactor(combine(1.0, sys_->mass, c, sys_->stiffness)));
    return cache_.back().second;
  }

 private:
  const SemiDiscreteSystem* sys_;
  std::deque<std::pair<double, TriDiagFactor>> cache_;
};

class LoadCache {
 public:
  explicit LoadCache(const SemiDiscreteSystem& sys) : sys_(&sys) {}

  const NodalVector& at(double t) {
    for (auto& [key, v] : cache_) {
      if (key == t) return v;
    }
    if (cache_.size() >= 4) cache_.pop_front();
    cache_.emplace_back(t, sys_->load(t));
    return cache_.back().second;
  }

 private:
  const SemiDiscreteSystem* sys_;
  std::deque<std::pair<double, NodalVector>> cache_;
};

class IntegratorBase : public TimeIntegrator {
 public:
  explicit IntegratorBase(const SemiDiscreteSystem& sys)
      : sys_(sys), solver_(sys), loads_(sys) {}

 protected:
  NodalVector mass_times(const NodalVector& x) const { return sys_.mass.apply(x); }
  NodalVector stiffness_times(const NodalVector& x) const {
    return sys_.stiffness.apply(x);
  }
  // out = a x + b y
  static NodalVector lin(double a, const NodalVector& x, double b,
                         const NodalVector& y) {
    NodalVector out(x.size());
    kernels::axpby(a, x, b, y, out);
    return out;
  }

  // (M + tau A) u = M prev + tau F(t)
  NodalVector euler_step(const NodalVector& prev, double t, double tau) {
    NodalVector rhs = lin(1.0, mass_times(prev), tau, loads_.at(t));
    solver_.factor(tau).solve_in_place(rhs);
    return rhs;
  }

  const SemiDiscreteSystem& sys_;
  ShiftedSolver solver_;
  LoadCache loads_;
};

class BackwardEuler final : public IntegratorBase {
 public:
  using IntegratorBase::IntegratorBase;
  Scheme scheme() const override { return Scheme::BackwardEuler; }
  void step(std::size_t j, Trajectory& tr) override {
    tr.states[j] = euler_step(tr.states[j - 1], tr.mesh.t(j), tr.mesh.tau(j));
  }
};

class CrankNicolson final : public IntegratorBase {
 public:
  using IntegratorBase::IntegratorBase;
  Scheme scheme() const override { return Scheme::CrankNicolson; }
  void step(std::size_t j, Trajectory& tr) override {
    const double tau = tr.mesh.tau(j);
    const NodalVector& prev = tr.states[j - 1];
    NodalVector rhs = lin(1.0, mass_times(prev), -0.5 * tau, stiffness_times(prev));
    const NodalVector fsum =
        lin(1.0, loads_.at(tr.mesh.t(j)), 1.0, loads_.at(tr.mesh.t(j - 1)));
    rhs = lin(1.0, rhs, 0.5 * tau, fsum);
    solver_.factor(0.5 * tau).solve_in_place(rhs);
    tr.states[j] = std::move(rhs);
  }
};

// v and w are independent global sequences started from u_h^0; only the
// output u^j = 2 w^j - v^j combines them.
class ExtrapolatedEuler final : public IntegratorBase {
 public:
  using IntegratorBase::IntegratorBase;
  Scheme scheme() const override { return Scheme::ExtrapolatedEuler; }
  void start(Trajectory& tr, const NodalVector& u0) const override {
    TimeIntegrator::start(tr, u0);
    tr.v[0] = u0;
    tr.w[0] = u0;
  }
  void step(std::size_t j, Trajectory& tr) override {
    const double tau = tr.mesh.tau(j);
    const double t0 = tr.mesh.t(j - 1);
    tr.v[j] = euler_step(tr.v[j - 1], tr.mesh.t(j), tau);
    tr.w_half[j] = euler_step(tr.w[j - 1], t0 + 0.5 * tau, 0.5 * tau);
    tr.w[j] = euler_step(tr.w_half[j], tr.mesh.t(j), 0.5 * tau);
    tr.states[j] = lin(2.0, tr.w[j], -1.0, tr.v[j]);
  }
};

// M D_t u^j + A u^j = F^j with D_t = alpha delta_t + beta delta_t(.)^{j-1};
// the first step is backward Euler.
class Bdf2 final : public IntegratorBase {
 public:
  using IntegratorBase::IntegratorBase;
  Scheme scheme() const override { return Scheme::BDF2; }
  void step(std::size_t j, Trajectory& tr) override {
    const double tau = tr.mesh.tau(j);
    if (j == 1) {
      tr.states[1] = euler_step(tr.states[0], tr.mesh.t(1), tau);
      return;
    }
    const double tau_prev = tr.mesh.tau(j - 1);
    const double alpha = (2.0 * tau + tau_prev) / (tau + tau_prev);
    const double beta = -tau / (tau + tau_prev);
    const NodalVector& u1 = tr.states[j - 1];
    const NodalVector& u2 = tr.states[j - 2];
    // (M + (tau/alpha) A) u^j
    //   = M [u^{j-1} - (beta tau)/(alpha tau_prev) (u^{j-1} - u^{j-2})]
    //     + (tau/alpha) F^j
    const double c = beta * tau / (alpha * tau_prev);
    const NodalVector hist = lin(1.0 - c, u1, c, u2);
    const double s = tau / alpha;
    NodalVector rhs = lin(1.0, mass_times(hist), s, loads_.at(tr.mesh.t(j)));
    solver_.factor(s).solve_in_place(rhs);
    tr.states[j] = std::move(rhs);
  }
};

// Stage system of the two-stage Lobatto IIIC method, multiplied by tau:
//   P v - Q u = M u^{j-1} + (tau/2)(F^{j-1} - F^j)
//   Q v + P u = M u^{j-1} + (tau/2)(F^{j-1} + F^j)
// with P = M + (tau/2) A, Q = (tau/2) A. This is the real form of
// (P + iQ)(v + iu) = rhs_a + i rhs_b, solved as one complex tridiagonal
// system.
class LobattoIIIC final : public IntegratorBase {
 public:
  using IntegratorBase::IntegratorBase;
  Scheme scheme() const override { return Scheme::LobattoIIIC; }

  void step(std::size_t j, Trajectory& tr) override {
    const double tau = tr.mesh.tau(j);
    const std::size_t n = sys_.size();
    if (tau != factored_tau_) factor(tau);

    const NodalVector mu = mass_times(tr.states[j - 1]);
    const NodalVector& f0 = loads_.at(tr.mesh.t(j - 1));
    const NodalVector& f1 = loads_.at(tr.mesh.t(j));
    std::vector<std::complex<double>> z(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double a = mu[i] + 0.5 * tau * (f0[i] - f1[i]);
      const double b = mu[i] + 0.5 * tau * (f0[i] + f1[i]);
      z[i] = {a, b};
    }
    z[0] *= inv_pivot_[0];
    for (std::size_t i = 1; i < n; ++i) {
      z[i] = (z[i] - sub_[i] * z[i - 1]) * inv_pivot_[i];
    }
    for (std::size_t i = n - 1; i-- > 0;) z[i] -= upper_[i] * z[i + 1];

    NodalVector v(n), u(n);
    for (std::size_t i = 0; i < n; ++i) {
      v[i] = z[i].real();
      u[i] = z[i].imag();
    }
    tr.v[j] = std::move(v);
    tr.states[j] = std::move(u);
  }

 private:
  void factor(double tau) {
    using C = std::complex<double>;
    const std::size_t n = sys_.size();
    const C c(0.5 * tau, 0.5 * tau);
    const auto& M = sys_.mass;
    const auto& A = sys_.stiffness;
    sub_.assign(n, C{});
    upper_.assign(n, C{});
    inv_pivot_.assign(n, C{});
    C prev{};
    for (std::size_t i = 0; i < n; ++i) {
      sub_[i] = M.sub[i] + c * A.sub[i];
      const C diag = M.main[i] + c * A.main[i];
      const C sup = M.sup[i] + c * A.sup[i];
      const C pivot = diag - (i > 0 ? sub_[i] * prev : C{});
      if (std::abs(pivot) == 0.0) {
        throw SingularMatrixError("Lobatto IIIC: zero pivot");
      }
      inv_pivot_[i] = 1.0 / pivot;
      upper_[i] = sup * inv_pivot_[i];
      prev = upper_[i];
    }
    factored_tau_ = tau;
  }

  double factored_tau_ = -1.0;
  std::vector<std::complex<double>> sub_, upper_, inv_pivot_;
};

class Sdirk2 final : public IntegratorBase {
 public:
  Sdirk2(const SemiDiscreteSystem& sys, IntegratorOptions opts)
      : IntegratorBase(sys), opts_(opts) {}
  Scheme scheme() const override { return Scheme::SDIRK2; }
  void start(Trajectory& tr, const NodalVector& u0) const override {
    TimeIntegrator::start(tr, u0);
    tr.options = opts_;
  }

  void step(std::size_t j, Trajectory& tr) override {
    constexpr double g = kSdirkGamma;
    const double tau = tr.mesh.tau(j);
    const double t0 = tr.mesh.t(j - 1);
    NodalVector f_a, f_b;
    if (opts_.sdirk_fhat) {
      const NodalVector& f0 = loads_.at(t0);
      const NodalVector& f1 = loads_.at(tr.mesh.t(j));
      f_a = lin(1.0 - g, f0, g, f1);
      f_b = lin(g, f0, 1.0 - g, f1);
    } else {
      f_a = sys_.load(t0 + g * tau);
      f_b = sys_.load(t0 + (1.0 - g) * tau);
    }
    const NodalVector& prev = tr.states[j - 1];
    const NodalVector au = stiffness_times(prev);
    const TriDiagFactor& P = solver_.factor(g * tau);

    NodalVector k1 = lin(1.0, f_a, -1.0, au);
    P.solve_in_place(k1);
    NodalVector k2 = lin(1.0, f_b, -1.0, au);
    k2 = lin(1.0, k2, -(1.0 - 2.0 * g) * tau, stiffness_times(k1));
    P.solve_in_place(k2);

    tr.states[j] = lin(1.0, prev, 0.5 * tau, lin(1.0, k1, 1.0, k2));
    tr.k1[j] = std::move(k1);
    tr.k2[j] = std::move(k2);
  }

 private:
  IntegratorOptions opts_;
};

}  // namespace

std::unique_ptr<TimeIntegrator> make_integrator(Scheme s,
                                                const SemiDiscreteSystem& sys,
                                                IntegratorOptions opts) {
  switch (s) {
    case Scheme::BackwardEuler: return std::make_unique<BackwardEuler>(sys);
    case Scheme::CrankNicolson: return std::make_unique<CrankNicolson>(sys);
    case Scheme::ExtrapolatedEuler: return std::make_unique<ExtrapolatedEuler>(sys);
    case Scheme::BDF2: return std::make_unique<Bdf2>(sys);
    case Scheme::LobattoIIIC: return std::make_unique<LobattoIIIC>(sys);
    case Scheme::SDIRK2: return std::make_unique<Sdirk2>(sys, opts);
  }
  throw InvalidArgument("unknown scheme");
}

Trajectory integrate(Scheme s, const SemiDiscreteSystem& sys,
                     const TimeMesh& mesh, const NodalVector& u0,
                     IntegratorOptions opts) {
  if (u0.size() != sys.size()) {
    throw InvalidArgument("integrate: initial state has wrong size");
  }
  auto integrator = make_integrator(s, sys, opts);
  Trajectory tr;
  tr.mesh = mesh;
  tr.options = opts;
  integrator->start(tr, u0);
  for (std::size_t j = 1; j <= mesh.steps(); ++j) integrator->step(j, tr);
  return tr;
}

}  // namespace parapost
