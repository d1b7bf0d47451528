#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <mutex>
#include <thread>
#include <vector>

#include "lsrbf/functions.hpp"
#include "lsrbf/geometry.hpp"
#include "lsrbf/metrics.hpp"
#include "lsrbf/scaling.hpp"
#include "lsrbf/solver.hpp"

namespace lsrbf {

/// One convergence study: a target function swept over a range of N.
///
/// N means the 1D resolution parameter (2N+1 centers on [-T,T]) for
/// one-dimensional targets and the target number of hexagonal centers for
/// two-dimensional ones.
struct SweepConfig {
  std::string function = "runge";
  RbfKernel kernel = RbfKernel::GA;
  double T = 1.5;                   // 1D extension half-width
  std::optional<Domain2D> domain;   // 2D runs; default: unit disk in [-1.2,1.2]^2
  double tau = 1e-10;
  ThresholdMode threshold_mode = ThresholdMode::RelativeToSigma1;
  Factorization factorization = Factorization::TruncatedSvd;
  ScalingPolicy policy = ScalingPolicy::linear_optimal(1.5, 1e-10);
  double gamma = 2.0;
  int n_min = 10;
  int n_max = 100;
  int n_step = 10;
  int validation_grid = 0;  // 0: auto, 10x the densest sample count
  std::string out;
  bool allow_touching_extent = false;  // ablation: domain radius may equal T
};

/// One row of a convergence study; mirrors the CSV schema.
struct ApproximationReport {
  int N = 0;
  int M = 0;
  double epsilon = 0.0;
  double err_l2 = 0.0;
  double err_max = 0.0;
  double coeff_norm = 0.0;
  double ratio = std::numeric_limits<double>::quiet_NaN();
  Eigen::Index effective_rank = 0;
  double sigma1 = 0.0;
  double predicted_limit = std::numeric_limits<double>::quiet_NaN();
};

namespace detail {

inline std::vector<int> sweep_points(const SweepConfig& cfg) {
  if (cfg.n_min < 1 || cfg.n_max < cfg.n_min || cfg.n_step < 1)
    throw std::invalid_argument("run_sweep: invalid N range");
  std::vector<int> ns;
  for (int n = cfg.n_min; n <= cfg.n_max; n += cfg.n_step) ns.push_back(n);
  return ns;
}

inline double effective_linear_c(const ScalingPolicy& policy) {
  if (policy.kind == ScalingPolicy::Kind::Linear) return policy.c;
  if (policy.kind == ScalingPolicy::Kind::LinearOptimal) return optimal_c(policy.T, policy.tau);
  return std::numeric_limits<double>::quiet_NaN();
}

struct ValidationData {
  std::vector<Point> points;
  std::vector<double> exact;
  double measure = 0.0;
};

}  // namespace detail

/// A single approximation run at resolution N (exactly what one sweep point
/// does), measured on the given validation data.
inline ApproximationReport run_single(const SweepConfig& cfg, int N,
                                      const detail::ValidationData& validation) {
  const TestFunction& fn = find_test_function(cfg.function);
  ApproximationReport rep;
  rep.N = N;

  NodeSet centers, samples;
  double measure_for_rows = 0.0;
  int resolution = 0;  // what the scaling policy sees: N in 1D, the center count in 2D
  if (fn.dim == 1) {
    const Interval iv = cfg.allow_touching_extent ? Interval::make_touching(-1.0, 1.0, cfg.T)
                                                  : Interval::make(-1.0, 1.0, cfg.T);
    centers = centers_1d(N, cfg.T);
    rep.M = oversample_count(N, cfg.gamma);
    samples = samples_1d(rep.M, iv);
    measure_for_rows = cfg.T;
    resolution = N;
  } else {
    const Domain2D dom = cfg.domain ? *cfg.domain : Domain2D::disk({0.0, 0.0}, 1.0, 1.2, 1.2);
    centers = hex_grid(dom.box_t1, dom.box_t2, N);
    resolution = static_cast<int>(centers.count());
    samples = hex_grid(dom, oversample_count_total(resolution, cfg.gamma));
    rep.N = resolution;  // the realized center count, not the lattice target
    rep.M = static_cast<int>(samples.count());
    measure_for_rows = 4.0 * dom.box_t1 * dom.box_t2;
  }
  rep.epsilon = epsilon_of(cfg.policy, resolution);

  const LsSystem sys = assemble(centers, samples, cfg.kernel, rep.epsilon,
                                [&fn](const Point& p) { return fn.f(p); }, measure_for_rows);
  const LsSolution sol =
      solve(sys, SolverConfig{cfg.tau, cfg.threshold_mode, cfg.factorization});

  const std::vector<double> approx = evaluate_approximant(sol, sys.meta, validation.points);
  rep.err_l2 = discrete_l2_error(approx, validation.exact, validation.measure);
  rep.err_max = max_abs_error(approx, validation.exact);
  rep.coeff_norm = sol.coeff_norm;
  // the max-norm error is the one that tracks the threshold in this diagnostic
  rep.ratio = rule_of_thumb_ratio(rep.err_max, sol);
  rep.effective_rank = sol.effective_rank;
  rep.sigma1 = sol.sigma1;
  const double c_eff = detail::effective_linear_c(cfg.policy);
  if (std::isfinite(c_eff)) rep.predicted_limit = limiting_accuracy(c_eff, cfg.T, cfg.tau);
  return rep;
}

/// Validation grid shared by every point of a sweep: equispaced in 1D,
/// hexagonal in 2D, at least 10x the densest sample count unless overridden.
inline detail::ValidationData make_validation_data(const SweepConfig& cfg) {
  const TestFunction& fn = find_test_function(cfg.function);
  detail::ValidationData data;
  if (fn.dim == 1) {
    const int max_m = oversample_count(cfg.n_max, cfg.gamma);
    const int v = cfg.validation_grid > 0 ? cfg.validation_grid : 10 * max_m + 1;
    data.points.reserve(static_cast<std::size_t>(v));
    for (int i = 0; i < v; ++i) data.points.push_back({-1.0 + 2.0 * i / (v - 1), 0.0});
    data.measure = 2.0;
  } else {
    const Domain2D dom = cfg.domain ? *cfg.domain : Domain2D::disk({0.0, 0.0}, 1.0, 1.2, 1.2);
    const int max_m = oversample_count_total(cfg.n_max, cfg.gamma);
    const int v = cfg.validation_grid > 0 ? cfg.validation_grid : 10 * max_m;
    data.points = hex_grid(dom, v).points;
    data.measure = dom.area();
  }
  data.exact.reserve(data.points.size());
  for (const Point& p : data.points) data.exact.push_back(fn.f(p));
  return data;
}

/// Run the whole study.  Sweep points are independent and run on a small
/// thread pool; reports come back ordered by N.
inline std::vector<ApproximationReport> run_sweep(const SweepConfig& cfg) {
  const std::vector<int> ns = detail::sweep_points(cfg);
  // validate the configuration eagerly so errors surface before any solve
  const TestFunction& fn = find_test_function(cfg.function);
  if (fn.dim == 1) {
    const Interval iv = cfg.allow_touching_extent ? Interval::make_touching(-1.0, 1.0, cfg.T)
                                                  : Interval::make(-1.0, 1.0, cfg.T);
    static_cast<void>(iv);
  }
  if (cfg.validation_grid > 0) {
    const int max_m = fn.dim == 1 ? oversample_count(cfg.n_max, cfg.gamma)
                                  : oversample_count_total(cfg.n_max, cfg.gamma);
    if (cfg.validation_grid < 10 * max_m)
      throw std::invalid_argument(
          "run_sweep: validation grid must be at least 10x the densest sample count");
  }
  const detail::ValidationData validation = make_validation_data(cfg);

  std::vector<ApproximationReport> reports(ns.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::string first_error;
  std::mutex error_mutex;

  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < ns.size();) {
      if (failed.load()) return;
      try {
        reports[i] = run_single(cfg, ns[i], validation);
      } catch (const std::exception& ex) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!failed.exchange(true)) first_error = ex.what();
      }
    }
  };

  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t n_threads = std::min<std::size_t>(hw, ns.size());
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < n_threads; ++t) pool.emplace_back(worker);
  worker();
  for (std::thread& t : pool) t.join();
  if (failed.load()) throw std::runtime_error("run_sweep: " + first_error);
  return reports;
}

inline const char* csv_header() {
  return "N,M,epsilon,err_l2,err_max,coeff_norm,ratio,rank,sigma1,predicted_limit";
}

/// One CSV row; reals in scientific notation with 17 significant digits so
/// parsing the file back reproduces every double bit for bit.
inline std::string csv_line(const ApproximationReport& r) {
  char buf[360];
  std::snprintf(buf, sizeof(buf),
                "%d,%d,%.16e,%.16e,%.16e,%.16e,%.16e,%lld,%.16e,%.16e", r.N, r.M, r.epsilon,
                r.err_l2, r.err_max, r.coeff_norm, r.ratio, static_cast<long long>(r.effective_rank),
                r.sigma1, r.predicted_limit);
  return buf;
}

inline std::string csv_string(const std::vector<ApproximationReport>& reports) {
  std::ostringstream out;
  out << csv_header() << '\n';
  for (const ApproximationReport& r : reports) out << csv_line(r) << '\n';
  return out.str();
}

inline void emit_csv(const std::vector<ApproximationReport>& reports, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("emit_csv: cannot open '" + path + "' for writing");
  out << csv_string(reports);
  out.flush();
  if (!out) throw std::runtime_error("emit_csv: write to '" + path + "' failed");
}

}  // namespace lsrbf
