#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "lsrbf/common.hpp"
#include "lsrbf/geometry.hpp"
#include "lsrbf/pde.hpp"

namespace lsrbf {

/// A benchmark target for the approximation sweeps.
struct TestFunction {
  enum class Smoothness { Analytic, FiniteRegularity };

  std::string name;
  int dim = 1;
  std::function<double(const Point&)> f;
  Smoothness smoothness = Smoothness::Analytic;
  double sobolev_k = 0.0;  // FiniteRegularity only
};

/// The benchmark registry.  All one-dimensional targets live on [-1,1]; the
/// two-dimensional target is meant for domains around the origin.
inline const std::vector<TestFunction>& test_functions() {
  static const std::vector<TestFunction> registry = {
      {"runge", 1, [](const Point& p) { return 1.0 / (1.0 + 10.0 * p.x * p.x); },
       TestFunction::Smoothness::Analytic, 0.0},
      {"pole", 1, [](const Point& p) { return 1.0 / (p.x - 1.2); },
       TestFunction::Smoothness::Analytic, 0.0},
      {"abs5", 1, [](const Point& p) { return std::pow(std::abs(p.x), 5.0); },
       TestFunction::Smoothness::FiniteRegularity, 5.0},
      {"runge2d", 2,
       [](const Point& p) { return 1.0 / (1.0 + 10.0 * (p.x * p.x + p.y * p.y)); },
       TestFunction::Smoothness::Analytic, 0.0},
  };
  return registry;
}

inline const TestFunction& find_test_function(std::string_view name) {
  for (const TestFunction& fn : test_functions())
    if (fn.name == name) return fn;
  std::string known;
  for (const TestFunction& fn : test_functions()) known += " " + fn.name;
  throw std::invalid_argument("unknown function '" + std::string(name) + "'; known:" + known);
}

/// Named Poisson benchmark problems with known exact solutions.
///
///   poisson1d     : -u'' = 20(1-30x^2)/(1+10x^2)^3 on [-1,1], u = 1/(1+10x^2)
///   poisson2d_disk: -Laplace u = 40(1-10 r^2)/(1+10 r^2)^3 on the unit disk,
///                   u = 1/(1+10 r^2)
///
/// extent is the center-extension half-width: T for the interval problem, the
/// bounding-box half-width (both axes) for the disk problem.
inline PoissonProblem make_poisson_problem(std::string_view name, double extent) {
  PoissonProblem prob;
  prob.name = std::string(name);
  if (name == "poisson1d") {
    prob.domain = Interval::make(-1.0, 1.0, extent);
    prob.exact_solution = [](const Point& p) { return 1.0 / (1.0 + 10.0 * p.x * p.x); };
    prob.rhs = [](const Point& p) {
      const double q = 1.0 + 10.0 * p.x * p.x;
      return 20.0 * (1.0 - 30.0 * p.x * p.x) / (q * q * q);
    };
    prob.boundary_data = prob.exact_solution;
    return prob;
  }
  if (name == "poisson2d_disk") {
    prob.domain = Domain2D::disk({0.0, 0.0}, 1.0, extent, extent);
    prob.exact_solution = [](const Point& p) {
      return 1.0 / (1.0 + 10.0 * (p.x * p.x + p.y * p.y));
    };
    prob.rhs = [](const Point& p) {
      const double r2 = p.x * p.x + p.y * p.y;
      const double q = 1.0 + 10.0 * r2;
      return 40.0 * (1.0 - 10.0 * r2) / (q * q * q);
    };
    prob.boundary_data = prob.exact_solution;
    return prob;
  }
  throw std::invalid_argument("unknown problem '" + std::string(name) +
                              "'; known: poisson1d poisson2d_disk");
}

}  // namespace lsrbf
