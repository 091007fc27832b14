#include "parapost/reference.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>

namespace parapost {
namespace {

// Final CN state with boundary zeros appended.
std::vector<double> cn_final(const Problem& p, std::size_t steps,
                             const ReferenceOptions& o, SpatialMesh* mesh_out) {
  const SpatialMesh mesh = SpatialMesh::uniform(
      p.domain_left, p.domain_right, std::max<std::size_t>(2, o.spatial_ratio * steps));
  const SemiDiscreteSystem sys = make_system(p, mesh, o.mass);
  const TimeMesh tm = TimeMesh::uniform(p.final_time, steps);
  const Trajectory tr =
      integrate(Scheme::CrankNicolson, sys, tm, initial_state(p, mesh), {});
  std::vector<double> full(mesh.elements() + 1, 0.0);
  const NodalVector& u = tr.states.back();
  std::copy(u.begin(), u.end(), full.begin() + 1);
  if (mesh_out) *mesh_out = mesh;
  return full;
}

}  // namespace

ReferenceSolution ReferenceSolution::compute(const Problem& p,
                                             const ReferenceOptions& opts) {
  if (opts.base_steps < 1 || opts.refine < 2 || opts.refine % 2 != 0) {
    throw InvalidArgument("reference: refinement must be an even number >= 2");
  }
  ReferenceSolution ref;
  ref.opts_ = opts;
  const std::size_t fine_steps = opts.refine * opts.base_steps;
  SpatialMesh coarse = SpatialMesh::uniform(0.0, 1.0, 2);
  const std::vector<double> uc = cn_final(p, fine_steps / 2, opts, &coarse);
  const std::vector<double> uf = cn_final(p, fine_steps, opts, nullptr);

  ref.nodes_ = coarse.nodes();
  ref.values_.resize(uc.size());
  double diff = 0.0;
  for (std::size_t k = 0; k < uc.size(); ++k) {
    const double fine = uf[2 * k];
    ref.values_[k] = (4.0 * fine - uc[k]) / 3.0;
    diff = std::max(diff, std::abs(fine - ref.values_[k]));
  }
  ref.level_difference_ = diff;
  if (opts.refine < 4) {
    ref.warning_ = "reference refinement " + std::to_string(opts.refine) +
                   " < 4: reference error (about " + std::to_string(diff) +
                   ") may pollute the measured errors";
  }
  return ref;
}

double ReferenceSolution::operator()(double x) const {
  const std::size_t n = nodes_.size();
  auto it = std::upper_bound(nodes_.begin(), nodes_.end(), x);
  std::size_t e = it == nodes_.begin() ? 0 : static_cast<std::size_t>(it - nodes_.begin()) - 1;
  e = std::min(e, n - 2);
  if (n < 4) {
    const double s = (x - nodes_[e]) / (nodes_[e + 1] - nodes_[e]);
    return (1.0 - s) * values_[e] + s * values_[e + 1];
  }
  const std::size_t i0 = std::min(e > 0 ? e - 1 : 0, n - 4);
  double sum = 0.0;
  for (std::size_t a = i0; a < i0 + 4; ++a) {
    double w = 1.0;
    for (std::size_t b = i0; b < i0 + 4; ++b) {
      if (b != a) w *= (x - nodes_[b]) / (nodes_[a] - nodes_[b]);
    }
    sum += w * values_[a];
  }
  return sum;
}

double measure_error(const SpatialMesh& m, const NodalVector& u_h,
                     const SpaceFunction& reference) {
  double err = 0.0;
  for (std::size_t e = 0; e < m.elements(); ++e) {
    const double x0 = m.node(e);
    const double h = m.h(e);
    for (int r = 0; r <= 7; ++r) {
      const double x = r == 7 ? m.node(e + 1) : x0 + r * h / 7.0;
      err = std::max(err, std::abs(reference(x) - eval_p1(m, u_h, e, x)));
    }
  }
  return err;
}

double measured_order(double e_coarse, double e_fine) {
  return (std::log(e_coarse) - std::log(e_fine)) / std::log(2.0);
}

std::string efficiency_fraction(double chi) {
  if (!(chi > 0.0) || !std::isfinite(chi)) return "-";
  return "1/" + std::to_string(static_cast<long long>(std::llround(1.0 / chi)));
}

std::vector<std::size_t> default_M_list(bool full) {
  std::vector<std::size_t> out;
  const std::size_t last = full ? 16384 : 1024;
  for (std::size_t M = 64; M <= last; M *= 2) out.push_back(M);
  return out;
}

ReferenceOptions reference_options_for(const StudyOptions& opts) {
  ReferenceOptions r;
  r.base_steps = opts.M_list.empty()
                     ? 1
                     : *std::max_element(opts.M_list.begin(), opts.M_list.end());
  r.refine = opts.ref_refine;
  r.spatial_ratio = opts.run.spatial_ratio;
  r.mass = opts.run.mass;
  return r;
}

void finalize_rows(std::vector<ConvergenceRow>& rows) {
  for (std::size_t i = 0; i < rows.size(); ++i) {
    rows[i].chi = rows[i].e / rows[i].eta;
    if (i > 0 && rows[i].M == 2 * rows[i - 1].M) {
      rows[i].p = measured_order(rows[i - 1].e, rows[i].e);
    } else {
      rows[i].p.reset();
    }
  }
}

StudyResult convergence_study(const ProblemInstance& inst, Scheme scheme,
                              const StudyOptions& opts,
                              const ReferenceSolution* reference) {
  StudyResult out;
  out.scheme = scheme;
  if (opts.M_list.empty()) return out;

  std::vector<std::size_t> Ms = opts.M_list;
  std::sort(Ms.begin(), Ms.end());
  Ms.erase(std::unique(Ms.begin(), Ms.end()), Ms.end());
  if (opts.run.K >= Ms.front()) {
    throw InvalidArgument("K must be at most min(M_list) - 1");
  }

  std::optional<ReferenceSolution> own;
  if (!reference) {
    own = ReferenceSolution::compute(inst.problem, reference_options_for(opts));
    reference = &*own;
  }
  out.reference_level_difference = reference->level_difference();
  out.warning = reference->warning();

  auto row_for = [&](std::size_t M) {
    RunConfig cfg = opts.run;
    cfg.steps = M;
    const RunResult run = run_estimator(inst, scheme, cfg);
    ConvergenceRow row;
    row.M = M;
    row.e = measure_error(run.mesh, run.trajectory.states.back(),
                          [reference](double x) { return (*reference)(x); });
    row.eta = run.report.total;
    row.K = run.report.K;
    row.components = {run.report.eta_init, run.report.eta_ell_MK, run.report.eta_f,
                      run.report.eta_delta_psi, run.report.eta_big_psi};
    return row;
  };

  if (opts.parallel) {
    std::vector<std::future<ConvergenceRow>> jobs;
    jobs.reserve(Ms.size());
    for (std::size_t M : Ms) jobs.push_back(std::async(std::launch::async, row_for, M));
    for (auto& j : jobs) out.rows.push_back(j.get());
  } else {
    for (std::size_t M : Ms) out.rows.push_back(row_for(M));
  }
  finalize_rows(out.rows);
  return out;
}

}  // namespace parapost
