#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>

#include "lsrbf/geometry.hpp"
#include "lsrbf/kernels.hpp"
#include "lsrbf/metrics.hpp"
#include "lsrbf/solver.hpp"

namespace lsrbf {

/// -Delta u = f on Omega with Dirichlet data u = g on the boundary.
/// exact_solution, when present, is only used for error reporting.
struct PoissonProblem {
  std::string name;
  std::variant<Interval, Domain2D> domain;
  std::function<double(const Point&)> rhs;
  std::function<double(const Point&)> boundary_data;
  std::function<double(const Point&)> exact_solution;  // optional

  int dim() const { return std::holds_alternative<Interval>(domain) ? 1 : 2; }
};

/// Stacked collocation system: the upper block applies -Delta to each basis
/// function at the interior points, the lower block evaluates the basis at the
/// boundary points.  Same normalization convention as assemble, applied
/// uniformly to both blocks and the right-hand side.
struct CollocationSystem {
  Eigen::MatrixXd matrix;
  Eigen::VectorXd rhs;
  Eigen::Index interior_rows = 0;
  Eigen::Index boundary_rows = 0;
  double row_scale = 1.0;
  SystemMeta meta;
};

inline CollocationSystem assemble_collocation(const PoissonProblem& problem, const NodeSet& centers,
                                              const NodeSet& interior, const NodeSet& boundary,
                                              double epsilon, RbfKernel kernel = RbfKernel::GA) {
  const int dim = problem.dim();
  if (centers.dim != dim || interior.dim != dim || boundary.dim != dim)
    throw std::invalid_argument("assemble_collocation: node set dimensions do not match the problem");
  if (centers.count() == 0) throw std::invalid_argument("assemble_collocation: centers are empty");
  const auto mi = static_cast<Eigen::Index>(interior.count());
  const auto mb = static_cast<Eigen::Index>(boundary.count());
  const auto n_count = static_cast<Eigen::Index>(centers.count());
  if (mi + mb <= n_count)
    throw std::invalid_argument("assemble_collocation: undersampled (need interior + boundary rows > centers)");
  if (!(epsilon > 0.0)) throw std::invalid_argument("assemble_collocation: epsilon must be positive");
  if (!problem.rhs || !problem.boundary_data)
    throw std::invalid_argument("assemble_collocation: problem data callables are empty");

  const double measure = dim == 1 ? std::get<Interval>(problem.domain).T
                                  : 4.0 * std::get<Domain2D>(problem.domain).box_t1 *
                                        std::get<Domain2D>(problem.domain).box_t2;
  const Eigen::Index m_total = mi + mb;
  const double row_scale = std::sqrt(measure / static_cast<double>(m_total));
  const double nf = norm_factor(epsilon, dim, true);

  CollocationSystem sys;
  sys.interior_rows = mi;
  sys.boundary_rows = mb;
  sys.row_scale = row_scale;
  sys.meta = {kernel, epsilon, centers, interior};
  sys.matrix.resize(m_total, n_count);
  sys.rhs.resize(m_total);

  auto checked = [&](const std::function<double(const Point&)>& fn, const Point& p,
                     Eigen::Index row) {
    double value;
    try {
      value = fn(p);
    } catch (const std::exception& ex) {
      throw std::runtime_error("assemble_collocation: data callable failed at row " +
                               std::to_string(row) + ": " + ex.what());
    }
    if (!std::isfinite(value))
      throw std::runtime_error("assemble_collocation: non-finite data value at row " +
                               std::to_string(row));
    return value;
  };

  for (Eigen::Index m = 0; m < mi; ++m) {
    const Point& x = interior.points[static_cast<std::size_t>(m)];
    for (Eigen::Index n = 0; n < n_count; ++n)
      sys.matrix(m, n) = row_scale * neg_laplacian(kernel, epsilon,
                                                   centers.points[static_cast<std::size_t>(n)], x,
                                                   dim, true);
    sys.rhs(m) = row_scale * checked(problem.rhs, x, m);
  }
  for (Eigen::Index m = 0; m < mb; ++m) {
    const Point& y = boundary.points[static_cast<std::size_t>(m)];
    for (Eigen::Index n = 0; n < n_count; ++n) {
      const double r = distance(y, centers.points[static_cast<std::size_t>(n)], dim);
      sys.matrix(mi + m, n) = row_scale * nf * profile(kernel, epsilon * r);
    }
    sys.rhs(mi + m) = row_scale * checked(problem.boundary_data, y, mi + m);
  }
  return sys;
}

struct PdeErrorReport {
  double err_max = std::numeric_limits<double>::quiet_NaN();
  double err_l2 = std::numeric_limits<double>::quiet_NaN();
  double residual_norm = 0.0;
  std::size_t validation_points = 0;
};

/// Dense validation grid inside the problem domain.
inline std::vector<Point> pde_validation_grid(const PoissonProblem& problem, int target) {
  if (target < 2) throw std::invalid_argument("pde_validation_grid: target must be >= 2");
  if (problem.dim() == 1) {
    const Interval& iv = std::get<Interval>(problem.domain);
    std::vector<Point> pts;
    pts.reserve(static_cast<std::size_t>(target));
    for (int i = 0; i < target; ++i)
      pts.push_back({iv.a + i * iv.length() / (target - 1), 0.0});
    return pts;
  }
  return hex_grid(std::get<Domain2D>(problem.domain), target).points;
}

/// Assemble, solve and (when an exact solution is known) measure the error of
/// the collocation approximant on a dense validation grid.
inline std::pair<LsSolution, PdeErrorReport> solve_poisson(const PoissonProblem& problem,
                                                           const NodeSet& centers,
                                                           const NodeSet& interior,
                                                           const NodeSet& boundary, double epsilon,
                                                           const SolverConfig& config,
                                                           int validation_target = 4000) {
  const CollocationSystem sys = assemble_collocation(problem, centers, interior, boundary, epsilon);
  LsSolution sol = solve(sys.matrix, sys.rhs, config);

  PdeErrorReport report;
  report.residual_norm = sol.residual_norm;
  if (problem.exact_solution) {
    const std::vector<Point> grid = pde_validation_grid(problem, validation_target);
    const std::vector<double> approx = evaluate_approximant(sol, sys.meta, grid);
    std::vector<double> exact;
    exact.reserve(grid.size());
    for (const Point& p : grid) exact.push_back(problem.exact_solution(p));
    const double measure = problem.dim() == 1 ? std::get<Interval>(problem.domain).length()
                                              : std::get<Domain2D>(problem.domain).area();
    report.err_max = max_abs_error(approx, exact);
    report.err_l2 = discrete_l2_error(approx, exact, measure);
    report.validation_points = grid.size();
  }
  return {std::move(sol), report};
}

}  // namespace lsrbf
