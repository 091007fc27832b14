// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "parapost/reference.hpp"

using namespace parapost;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

int failures = 0;

void report(int id, const char* title, const Outcome& o) {
  std::printf("[%s] %2d %s%s%s\n", o.pass ? "PASS" : "FAIL", id, title,
              o.detail.empty() ? "" : ": ", o.detail.c_str());
  std::fflush(stdout);
  if (!o.pass) ++failures;
}

std::string fmt(const char* spec, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, spec, a, b, c);
  return buf;
}

// Benchmark error magnitudes at M = 64, 256, 1024.
const std::map<Scheme, std::array<double, 3>> kBenchmark{
    {Scheme::BackwardEuler, {5.977e-4, 1.137e-4, 2.619e-5}},
    {Scheme::CrankNicolson, {2.006e-4, 1.269e-5, 7.935e-7}},
    {Scheme::ExtrapolatedEuler, {1.986e-4, 1.259e-5, 7.871e-7}},
    {Scheme::BDF2, {2.092e-4, 1.314e-5, 8.209e-7}},
    {Scheme::LobattoIIIC, {2.426e-4, 1.649e-5, 1.061e-6}},
    {Scheme::SDIRK2, {2.112e-4, 1.344e-5, 8.412e-7}},
};

const ConvergenceRow& row_at(const StudyResult& s, std::size_t M) {
  for (const auto& r : s.rows) {
    if (r.M == M) return r;
  }
  throw Error("missing row");
}

std::string name(Scheme s) { return std::string(to_string(s)); }

// 1: e_M <= eta^{M,0}
Outcome bound_holds(const std::vector<StudyResult>& studies) {
  Outcome o;
  for (const auto& s : studies) {
    for (const auto& r : s.rows) {
      if (!(r.e <= r.eta)) {
        o.fail(name(s.scheme) + fmt(" M=%.0f e=%.3e eta=%.3e", r.M, r.e, r.eta));
      }
    }
  }
  return o;
}

// 2: p at M = 1024
Outcome orders(const std::vector<StudyResult>& studies) {
  Outcome o;
  std::string all;
  for (const auto& s : studies) {
    const double target = s.scheme == Scheme::BackwardEuler ? 1.0 : 2.0;
    const auto& r = row_at(s, 1024);
    const double p = r.p.value_or(NAN);
    all += name(s.scheme) + fmt("=%.2f ", p);
    if (!(std::abs(p - target) <= 0.10)) o.fail(name(s.scheme) + fmt(" p=%.3f", p));
  }
  if (o.pass) o.detail = all;
  return o;
}

// 3: e_M within a factor 2 of the benchmark values
Outcome magnitudes(const std::vector<StudyResult>& studies) {
  Outcome o;
  double worst = 1.0;
  for (const auto& s : studies) {
    const auto& bench = kBenchmark.at(s.scheme);
    const std::array<std::size_t, 3> Ms{64, 256, 1024};
    for (std::size_t k = 0; k < 3; ++k) {
      const double e = row_at(s, Ms[k]).e;
      const double ratio = std::max(e / bench[k], bench[k] / e);
      worst = std::max(worst, ratio);
      if (!(ratio <= 2.0)) {
        o.fail(name(s.scheme) + fmt(" M=%.0f e=%.3e benchmark=%.3e", Ms[k], e, bench[k]));
      }
    }
  }
  if (o.pass) o.detail = fmt("worst ratio %.2f", worst);
  return o;
}

// 4: chi in [1/500, 1/10], consecutive ratio < 2
Outcome efficiency(const std::vector<StudyResult>& studies) {
  Outcome o;
  double lo = 1.0, hi = 0.0;
  for (const auto& s : studies) {
    for (std::size_t i = 0; i < s.rows.size(); ++i) {
      const double chi = s.rows[i].chi;
      lo = std::min(lo, chi);
      hi = std::max(hi, chi);
      if (!(chi >= 1.0 / 500 && chi <= 1.0 / 10)) {
        o.fail(name(s.scheme) + fmt(" M=%.0f chi=%.3e", s.rows[i].M, chi));
      }
      if (i > 0) {
        const double prev = s.rows[i - 1].chi;
        if (!(std::max(chi / prev, prev / chi) < 2.0)) {
          o.fail(name(s.scheme) + fmt(" chi jumps %.3e -> %.3e", prev, chi));
        }
      }
    }
  }
  if (o.pass) {
    o.detail = "chi in [1/" + std::to_string(std::llround(1 / hi)) + ", 1/" +
               std::to_string(std::llround(1 / lo)) + "]";
  }
  return o;
}

// 5: Crank-Nicolson eta_Psi == 0
Outcome cn_identity(const std::vector<StudyResult>& studies) {
  Outcome o;
  for (const auto& s : studies) {
    if (s.scheme != Scheme::CrankNicolson) continue;
    for (const auto& r : s.rows) {
      if (r.components.eta_big_psi != 0.0) {
        o.fail(fmt("M=%.0f eta_Psi=%.3e", r.M, r.components.eta_big_psi));
      }
    }
  }
  return o;
}

// 6: closed-form psi vs mass solve at M = 32
Outcome psi_dual() {
  Outcome o;
  const ProblemInstance inst = builtin_test_problem();
  const SpatialMesh mesh = SpatialMesh::uniform(-1.0, 1.0, 32);
  const SemiDiscreteSystem sys = make_system(inst.problem, mesh);
  const TimeMesh tm = TimeMesh::uniform(1.0, 32);
  const TriDiagFactor mf(sys.mass);
  double worst = 0.0;
  for (Scheme s : kAllSchemes) {
    const Trajectory tr = integrate(s, sys, tm, initial_state(inst.problem, mesh), {true});
    NodalVector prev = psi_general(sys, mf, tr.states[0], 0.0);
    for (std::size_t j = 1; j <= 32; ++j) {
      const NodalVector a = psi_general(sys, mf, tr.states[j], tm.t(j));
      const NodalVector b = psi_closed_form(tr, j, prev);
      double d = 0.0;
      for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
      worst = std::max(worst, d);
      if (!(d <= 1e-9)) o.fail(name(s) + fmt(" j=%.0f diff=%.3e", j, d));
      prev = b;
    }
  }
  if (o.pass) o.detail = fmt("max diff %.2e", worst);
  return o;
}

// 7: weights vs adaptive quadrature
Outcome weight_oracle() {
  using boost::math::quadrature::gauss_kronrod;
  auto quad = [](const std::function<double(double)>& f, double a, double b) {
    return gauss_kronrod<double, 61>::integrate(f, a, b, 8, 1e-13);
  };
  Outcome o;
  std::mt19937_64 g(2024);
  auto U = [&](double a, double b) { return std::uniform_real_distribution<double>(a, b)(g); };
  double worst = 0.0;
  auto check = [&](double got, double want, const char* what) {
    const double rel = std::abs(got - want) / std::abs(want);
    worst = std::max(worst, rel);
    if (!(rel <= 1e-10)) o.fail(std::string(what) + fmt(" rel=%.2e", rel));
  };
  for (int trial = 0; trial < 20; ++trial) {
    const double T = U(0.5, 2.0);
    const std::size_t M = 4 + g() % 40;
    std::vector<double> nodes{0.0};
    std::vector<double> w(M);
    double tot = 0.0;
    for (double& x : w) tot += (x = U(0.1, 1.0));
    double acc = 0.0;
    for (std::size_t j = 0; j + 1 < M; ++j) nodes.push_back(T * (acc += w[j]) / tot);
    nodes.push_back(T);
    const TimeMesh tm(nodes);
    GreenBounds gb;
    gb.kappa0 = U(0.5, 2.0);
    gb.kappa1 = U(0.1, 2.0);
    gb.kappa1prime = U(0.0, 1.0);
    gb.gamma = U(0.1, 1.5);
    const EstimatorWeights ew = compute_weights(gb, tm);
    for (std::size_t j = 0; j < M; ++j) {
      const double sig =
          1.0 - gb.gamma * quad([&](double s) { return std::exp(-gb.gamma * (T - s)); }, tm.t(j), T);
      check(ew.sigma[j], sig, "sigma");
    }
    for (std::size_t j = 1; j <= M; ++j) {
      const double a = tm.t(j - 1), b = tm.t(j);
      if (j < M) {
        check(ew.mu[j], quad([&](double s) { return gb.kappa1 / (T - s) + gb.kappa1prime; }, a, b),
              "mu");
      }
      const double integral = quad(
          [&](double s) {
            const double green = j == M ? gb.kappa1 + gb.kappa1prime * (T - s)
                                        : (b - s) * (gb.kappa1 / (T - s) + gb.kappa1prime);
            return (s - a) / 2.0 * green;
          },
          a, b);
      check(ew.chi[j], std::min(gb.kappa0 * (b - a) * (b - a) / 4.0, integral),
            j == M ? "chi_M" : "chi");
    }
  }
  if (o.pass) o.detail = fmt("max rel %.2e", worst);
  return o;
}

// 8: elliptic estimator bound and O(h^2)
struct Elliptic {
  const char* name;
  double a, b, d;
  std::function<double(double)> r, y, ypp;
};

Outcome elliptic_bound() {
  const double pi = M_PI;
  const std::vector<Elliptic> set{
      {"paper-operator", -1, 1, 1, [](double x) { return 5 * x + 6; },
       [](double x) { return sin_pi(0.5 * (1 + x)); },
       [pi](double x) { return -0.25 * pi * pi * sin_pi(0.5 * (1 + x)); }},
      {"cubic-pure-diffusion", 0, 1, 1, [](double) { return 0.0; },
       [](double x) { return x * (1 - x) * (1 + x); }, [](double x) { return -6 * x; }},
      {"sine", 0, 1, 2, [](double) { return 1.0; }, [](double x) { return sin_pi(2 * x); },
       [pi](double x) { return -4 * pi * pi * sin_pi(2 * x); }},
      {"exp-poly", 0, 1, 0.5, [](double x) { return 10 * (1 + x * x); },
       [](double x) { return x * (1 - x) * std::exp(x); },
       [](double x) { return (-3 * x - x * x) * std::exp(x); }},
      {"cubic", 0, 1, 3, [](double x) { return 4 + std::cos(x); },
       [](double x) { return x * x * (1 - x); }, [](double x) { return 2 - 6 * x; }},
      {"sine-squared", 0, 2, 1, [](double x) { return 2 + x; },
       [](double x) { return sin_pi(x) * sin_pi(x); },
       [pi](double x) { return 2 * pi * pi * std::cos(2 * pi * x); }},
  };
  Outcome o;
  double omin = 9, omax = 0;
  for (const auto& e : set) {
    Problem p;
    p.domain_left = e.a;
    p.domain_right = e.b;
    p.diffusion = [d = e.d](double) { return d; };
    p.reaction = e.r;
    p.initial = [](double) { return 0.0; };
    p.source = [](double, double) { return 0.0; };
    const SpaceFunction g = [&](double x) { return -e.d * e.ypp(x) + e.r(x) * e.y(x); };
    std::vector<double> etas;
    for (std::size_t N : {16u, 32u, 64u, 128u}) {
      const SpatialMesh m = SpatialMesh::uniform(e.a, e.b, N);
      const NodalVector yh = solve_elliptic(p, m, g);
      const double eta = estimate_elliptic(p, m, yh, g).eta;
      const double err = supnorm_sampled(
          m, [&](std::size_t el, double x) { return e.y(x) - eval_p1(m, yh, el, x); }, 16);
      if (!(err <= eta)) o.fail(std::string(e.name) + fmt(" N=%.0f err=%.3e eta=%.3e", N, err, eta));
      etas.push_back(eta);
    }
    const double order = std::log2(etas.front() / etas.back()) / 3.0;
    omin = std::min(omin, order);
    omax = std::max(omax, order);
    if (!(order >= 1.8 && order <= 2.2)) o.fail(std::string(e.name) + fmt(" order=%.3f", order));
  }
  if (o.pass) o.detail = fmt("%.0f problems, orders in [%.2f, %.2f]", set.size(), omin, omax);
  return o;
}

// 9: BDF-2 component orders over 64 -> 1024
Outcome component_orders(const std::vector<StudyResult>& studies) {
  Outcome o;
  for (const auto& s : studies) {
    if (s.scheme != Scheme::BDF2) continue;
    const Components& a = row_at(s, 64).components;
    const Components& b = row_at(s, 1024).components;
    auto ord = [](double x, double y) { return std::log2(x / y) / 4.0; };
    struct Item {
      const char* name;
      double p, lo, hi;
    };
    const std::array<Item, 5> items{{
        {"init", ord(a.eta_init, b.eta_init), 1.85, 2.15},
        {"f", ord(a.eta_f, b.eta_f), 1.85, 2.15},
        {"ell", ord(a.eta_ell_MK, b.eta_ell_MK), 1.85, 2.15},
        {"Psi", ord(a.eta_big_psi, b.eta_big_psi), 1.6, 2.1},
        {"dpsi", ord(a.eta_delta_psi, b.eta_delta_psi), 1.6, 2.1},
    }};
    std::ostringstream all;
    for (const auto& it : items) {
      all << it.name << '=' << fmt("%.2f", it.p) << ' ';
      if (!(it.p >= it.lo && it.p <= it.hi)) o.fail(std::string(it.name) + fmt(" order=%.3f", it.p));
    }
    if (o.pass) o.detail = all.str();
  }
  return o;
}

// 10: scalar stability functions
double butcher_R(const std::array<std::array<double, 2>, 2>& A, const std::array<double, 2>& b,
                 double z) {
  // R(z) = det(I + zA - z 1 b^T) / det(I + zA) for u' = -lambda u, z = lambda tau.
  auto det = [](double p, double q, double r, double s) { return p * s - q * r; };
  const double den = det(1 + z * A[0][0], z * A[0][1], z * A[1][0], 1 + z * A[1][1]);
  const double num = det(1 + z * A[0][0] - z * b[0], z * A[0][1] - z * b[1],
                         z * A[1][0] - z * b[0], 1 + z * A[1][1] - z * b[1]);
  return num / den;
}

Outcome stability() {
  Outcome o;
  const double g = 1.0 - 1.0 / std::sqrt(2.0);
  double worst = 0.0;
  for (Scheme s : kAllSchemes) {
    for (double z : {0.1, 1.0, 10.0}) {
      const double tau = 0.25;
      SemiDiscreteSystem sys;
      sys.mass = TriDiagMatrix(1);
      sys.mass.main[0] = 1.0;
      sys.stiffness = TriDiagMatrix(1);
      sys.stiffness.main[0] = z / tau;
      sys.load = [](double) { return NodalVector{0.0}; };
      const std::size_t steps = 4;
      const Trajectory tr = integrate(s, sys, TimeMesh::uniform(tau * steps, steps), {1.0});
      std::vector<double> expect(steps + 1, 1.0);
      for (std::size_t j = 1; j <= steps; ++j) {
        switch (s) {
          case Scheme::BackwardEuler:
            expect[j] = expect[j - 1] * butcher_R({{{1, 0}, {0, 0}}}, {1, 0}, z);
            break;
          case Scheme::CrankNicolson:
            expect[j] = expect[j - 1] * butcher_R({{{0, 0}, {0.5, 0.5}}}, {0.5, 0.5}, z);
            break;
          case Scheme::LobattoIIIC:
            expect[j] = expect[j - 1] * butcher_R({{{0.5, -0.5}, {0.5, 0.5}}}, {0.5, 0.5}, z);
            break;
          case Scheme::SDIRK2:
            expect[j] = expect[j - 1] * butcher_R({{{g, 0}, {1 - 2 * g, g}}}, {0.5, 0.5}, z);
            break;
          case Scheme::ExtrapolatedEuler:
            // Independent half-step and full-step Euler sequences.
            expect[j] = 2 * std::pow(1 / (1 + z / 2), 2.0 * j) - std::pow(1 / (1 + z), 1.0 * j);
            break;
          case Scheme::BDF2:
            // First step backward Euler, then 3/2 u^j - 2 u^{j-1} + 1/2 u^{j-2} = -z u^j.
            expect[j] = j == 1 ? 1 / (1 + z) : (2 * expect[j - 1] - 0.5 * expect[j - 2]) / (1.5 + z);
            break;
        }
        const double d = std::abs(tr.states[j][0] - expect[j]);
        worst = std::max(worst, d);
        if (!(d <= 1e-12)) o.fail(name(s) + fmt(" z=%.1f j=%.0f diff=%.2e", z, j, d));
      }
    }
  }
  if (o.pass) o.detail = fmt("max diff %.2e", worst);
  return o;
}

}  // namespace

int main() {
  try {
    const ProblemInstance inst = builtin_test_problem();
    StudyOptions opts;
    opts.M_list = {64, 128, 256, 512, 1024};
    opts.ref_refine = 8;
    const ReferenceSolution ref =
        ReferenceSolution::compute(inst.problem, reference_options_for(opts));
    std::printf("reference: %zu steps, level difference %.2e\n",
                opts.ref_refine * opts.M_list.back(), ref.level_difference());
    std::vector<StudyResult> studies;
    for (Scheme s : kAllSchemes) studies.push_back(convergence_study(inst, s, opts, &ref));

    report(1, "guaranteed bound e_M <= eta^{M,0}", bound_holds(studies));
    report(2, "orders at M = 1024", orders(studies));
    report(3, "error magnitudes within factor 2", magnitudes(studies));
    report(4, "efficiency in [1/500, 1/10], stable across M", efficiency(studies));
    report(5, "Crank-Nicolson eta_Psi = 0", cn_identity(studies));
    report(6, "psi closed form vs mass solve", psi_dual());
    report(7, "weight oracle", weight_oracle());
    report(8, "elliptic estimator bound and order", elliptic_bound());
    report(9, "BDF-2 component orders", component_orders(studies));
    report(10, "scalar stability functions", stability());
  } catch (const std::exception& e) {
    std::printf("[FAIL] acceptance aborted: %s\n", e.what());
    return 1;
  }
  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
