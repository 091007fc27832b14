#pragma once

// Reference solution at the final time, error measurement and convergence
// studies (error, order, bound, efficiency per M).

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "parapost/estimator.hpp"

namespace parapost {

struct ReferenceOptions {
  std::size_t base_steps = 1024;   ///< finest M of the study
  std::size_t refine = 8;          ///< fine level uses refine * base_steps steps
  std::size_t spatial_ratio = 1;   ///< N = spatial_ratio * steps
  MassMode mass = MassMode::Consistent;
};

/// Crank-Nicolson at two consecutive levels (refine*M and refine*M/2 steps,
/// same N/M ratio), Richardson-extrapolated at the coarse-level nodes and
/// evaluated by local cubic Lagrange interpolation.
class ReferenceSolution {
 public:
  static ReferenceSolution compute(const Problem& p, const ReferenceOptions& opts);

  double operator()(double x) const;

  /// Nodes (boundaries included) and extrapolated values.
  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& values() const { return values_; }

  /// max |u_fine - u_extrapolated| at the nodes: an error estimate for the
  /// fine level, which bounds the extrapolated reference error in practice.
  double level_difference() const { return level_difference_; }
  const std::optional<std::string>& warning() const { return warning_; }
  const ReferenceOptions& options() const { return opts_; }

 private:
  std::vector<double> nodes_;
  std::vector<double> values_;
  double level_difference_ = 0.0;
  std::optional<std::string> warning_;
  ReferenceOptions opts_;
};

/// max over elements i and r = 0..7 of |(ref - u_h)(x_{i-1} + r h_i / 7)|.
double measure_error(const SpatialMesh& m, const NodalVector& u_h,
                     const SpaceFunction& reference);

/// (ln e_coarse - ln e_fine) / ln 2.
double measured_order(double e_coarse, double e_fine);

/// Efficiency rendered as "1/n", n = e^{-1} rounded to nearest.
std::string efficiency_fraction(double chi);

struct ConvergenceRow {
  std::size_t M = 0;
  double e = 0.0;
  std::optional<double> p;  ///< absent for the first row
  double eta = 0.0;
  double chi = 0.0;
  std::size_t K = 0;
  Components components;
};

struct StudyOptions {
  std::vector<std::size_t> M_list{64, 128, 256, 512, 1024};
  RunConfig run;             ///< steps is overwritten per row
  std::size_t ref_refine = 8;
  bool parallel = true;
};

std::vector<std::size_t> default_M_list(bool full = false);

struct StudyResult {
  Scheme scheme = Scheme::BackwardEuler;
  std::vector<ConvergenceRow> rows;
  double reference_level_difference = 0.0;
  std::optional<std::string> warning;
};

/// Runs every M (concurrently when enabled) and merges rows in M order.
/// A precomputed reference may be passed to share it between schemes; it is
/// computed from the options otherwise.
StudyResult convergence_study(const ProblemInstance& inst, Scheme scheme,
                              const StudyOptions& opts,
                              const ReferenceSolution* reference = nullptr);

/// Reference options matching a study.
ReferenceOptions reference_options_for(const StudyOptions& opts);

/// Fill p and chi from e and eta (rows sorted by M).
void finalize_rows(std::vector<ConvergenceRow>& rows);

}  // namespace parapost
