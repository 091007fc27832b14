#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace parapost {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid input data or configuration.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Evaluation outside the domain of a bound (e.g. phi1 at t = 0).
class DomainError : public Error {
 public:
  using Error::Error;
};

class SingularMatrixError : public Error {
 public:
  using Error::Error;
};

/// The mesh violates a resolution condition an estimator depends on.
class MeshTooCoarseError : public Error {
 public:
  using Error::Error;
};

using SpaceFunction = std::function<double(double)>;
using SpaceTimeFunction = std::function<double(double, double)>;

/// Linear parabolic problem  u_t - (d u')' + r u = f  on (a,b) x (0,T],
/// u(.,0) = u0, homogeneous Dirichlet data.
struct Problem {
  double domain_left = 0.0;
  double domain_right = 1.0;
  SpaceFunction diffusion;
  SpaceFunction reaction;
  SpaceTimeFunction source;
  SpaceFunction initial;
  double final_time = 1.0;

  /// Checks a < b, T > 0, u0(a) = u0(b) = 0 and the sign conditions on
  /// d and r at `samples` evenly spaced points. Throws InvalidArgument.
  void validate(std::size_t samples = 1025) const;
};

/// Constants of the Green's function bounds
///   ||G(t)||_1 <= kappa0 e^{-gamma t},
///   ||G_t(t)||_1 <= (kappa1/t + kappa1prime) e^{-gamma t}.
/// They are trusted as supplied; nothing here verifies them.
struct GreenBounds {
  double kappa0 = 1.0;
  double kappa1 = 0.0;
  double kappa1prime = 0.0;
  double gamma = 0.0;

  void validate() const;
};

double phi0(const GreenBounds& gb, double t);
/// Throws DomainError for t <= 0 when kappa1 > 0.
double phi1(const GreenBounds& gb, double t);

class TimeMesh {
 public:
  explicit TimeMesh(std::vector<double> nodes);
  static TimeMesh uniform(double final_time, std::size_t steps);

  std::size_t steps() const { return nodes_.size() - 1; }
  double t(std::size_t j) const { return nodes_[j]; }
  /// Step size of interval j = 1..M.
  double tau(std::size_t j) const { return nodes_[j] - nodes_[j - 1]; }
  double final_time() const { return nodes_.back(); }
  const std::vector<double>& nodes() const { return nodes_; }

 private:
  std::vector<double> nodes_;
};

struct ProblemInstance {
  std::string name;
  Problem problem;
  GreenBounds bounds;
};

/// Reaction-diffusion test problem on (-1,1) x (0,1]:
///   u_t - u_xx + (5x+6) u = exp(-4t) + cos(pi (x+t)^2),
///   u(x,0) = sin(pi (1+x)/2),
/// with kappa0 = 1, gamma = 1/2, kappa1 = 3/2^{3/2}, kappa1' = 0.
ProblemInstance builtin_test_problem();

/// Same operator and bounds, with f chosen so that
/// u(x,t) = exp(-t) sin(pi (1+x)/2) is the exact solution.
ProblemInstance manufactured_problem();
double manufactured_solution(double x, double t);

/// Looks up a built-in problem ("paper", "manufactured").
/// Throws InvalidArgument.
ProblemInstance problem_by_name(std::string_view name);

std::vector<std::string> problem_names();

/// sin(pi s) with exact zeros at integer s.
double sin_pi(double s);

}  // namespace parapost
