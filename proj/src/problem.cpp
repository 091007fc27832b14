#include "parapost/problem.hpp"

#include <cmath>
#include <numbers>

namespace parapost {

void Problem::validate(std::size_t samples) const {
  if (!(domain_left < domain_right)) {
    throw InvalidArgument("problem: domain_left must be < domain_right");
  }
  if (!(final_time > 0.0)) {
    throw InvalidArgument("problem: final_time must be positive");
  }
  if (!diffusion || !reaction || !source || !initial) {
    throw InvalidArgument("problem: all coefficient functions must be set");
  }
  if (samples < 2) samples = 2;
  double scale = 0.0;
  for (std::size_t k = 0; k < samples; ++k) {
    const double x = domain_left + (domain_right - domain_left) *
                                       static_cast<double>(k) /
                                       static_cast<double>(samples - 1);
    if (!(diffusion(x) > 0.0)) {
      throw InvalidArgument("problem: diffusion must be strictly positive");
    }
    if (!(reaction(x) >= 0.0)) {
      throw InvalidArgument("problem: reaction must be non-negative");
    }
    scale = std::max(scale, std::abs(initial(x)));
  }
  const double tol = 1e-12 * std::max(scale, 1.0);
  if (std::abs(initial(domain_left)) > tol ||
      std::abs(initial(domain_right)) > tol) {
    throw InvalidArgument(
        "problem: initial data must vanish at both endpoints");
  }
}

void GreenBounds::validate() const {
  if (!(kappa0 > 0.0) || !(kappa1 >= 0.0) || !(kappa1prime >= 0.0) ||
      !(gamma >= 0.0)) {
    throw InvalidArgument(
        "green bounds: need kappa0 > 0 and kappa1, kappa1', gamma >= 0");
  }
}

double phi0(const GreenBounds& gb, double t) {
  if (t < 0.0) throw DomainError("phi0: negative time");
  return gb.kappa0 * std::exp(-gb.gamma * t);
}

double phi1(const GreenBounds& gb, double t) {
  if (t < 0.0) throw DomainError("phi1: negative time");
  if (t == 0.0) {
    if (gb.kappa1 > 0.0) throw DomainError("phi1: singular at t = 0");
    return gb.kappa1prime;
  }
  return (gb.kappa1 / t + gb.kappa1prime) * std::exp(-gb.gamma * t);
}

TimeMesh::TimeMesh(std::vector<double> nodes) : nodes_(std::move(nodes)) {
  if (nodes_.size() < 2) {
    throw InvalidArgument("time mesh: need at least one interval");
  }
  if (nodes_.front() != 0.0) {
    throw InvalidArgument("time mesh: first node must be 0");
  }
  for (std::size_t j = 1; j < nodes_.size(); ++j) {
    if (!(nodes_[j] > nodes_[j - 1])) {
      throw InvalidArgument("time mesh: nodes must be strictly increasing");
    }
  }
}

TimeMesh TimeMesh::uniform(double final_time, std::size_t steps) {
  if (steps == 0) throw InvalidArgument("time mesh: zero steps");
  std::vector<double> nodes(steps + 1);
  for (std::size_t j = 0; j <= steps; ++j) {
    nodes[j] = final_time * static_cast<double>(j) / static_cast<double>(steps);
  }
  nodes[steps] = final_time;
  return TimeMesh(std::move(nodes));
}

double sin_pi(double s) {
  // Reduce to [0, 1/2] about the nearest integer so that sin_pi(k) == 0.
  const double n = std::round(s);
  const double r = s - n;
  const double v = std::sin(std::numbers::pi * r);
  return (static_cast<long long>(n) % 2 == 0) ? v : -v;
}

ProblemInstance builtin_test_problem() {
  using std::numbers::pi;
  Problem p;
  p.domain_left = -1.0;
  p.domain_right = 1.0;
  p.diffusion = [](double) { return 1.0; };
  p.reaction = [](double x) { return 5.0 * x + 6.0; };
  p.source = [](double x, double t) {
    const double s = x + t;
    return std::exp(-4.0 * t) + std::cos(pi * s * s);
  };
  p.initial = [](double x) { return sin_pi(0.5 * (1.0 + x)); };
  p.final_time = 1.0;

  GreenBounds gb;
  gb.kappa0 = 1.0;
  gb.gamma = 0.5;
  gb.kappa1 = 3.0 / std::pow(2.0, 1.5);
  gb.kappa1prime = 0.0;
  return {"paper", std::move(p), gb};
}

double manufactured_solution(double x, double t) {
  return std::exp(-t) * sin_pi(0.5 * (1.0 + x));
}

ProblemInstance manufactured_problem() {
  using std::numbers::pi;
  ProblemInstance inst = builtin_test_problem();
  inst.name = "manufactured";
  // u_t = -u, -u_xx = (pi/2)^2 u
  inst.problem.source = [](double x, double t) {
    return (-1.0 + 0.25 * pi * pi + 5.0 * x + 6.0) * manufactured_solution(x, t);
  };
  return inst;
}

ProblemInstance problem_by_name(std::string_view name) {
  if (name == "paper") return builtin_test_problem();
  if (name == "manufactured") return manufactured_problem();
  throw InvalidArgument("unknown problem '" + std::string(name) + "'");
}

std::vector<std::string> problem_names() { return {"paper", "manufactured"}; }

}  // namespace parapost
