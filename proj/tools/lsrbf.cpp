// Command-line front end: approximation runs and sweeps, scaling-law
// predictions, and the Poisson collocation solver.

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <map>
#include <string>

#include "lsrbf/config.hpp"
#include "lsrbf/functions.hpp"
#include "lsrbf/pde.hpp"
#include "lsrbf/scaling.hpp"
#include "lsrbf/sweep.hpp"

namespace {

struct CommonArgs {
  std::string config_path;
  std::map<std::string, std::string> overrides;
};

// Every flag lands in the same key/value space as the config file; explicit
// flags win over file entries.
void add_common_options(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config_path, "flat key = value config file");
  auto capture = [&args](const std::string& key) {
    return [&args, key](const std::string& value) { args.overrides[key] = value; };
  };
  cmd->add_option_function<std::string>("--function", capture("function"), "target function name");
  cmd->add_option_function<std::string>("--kernel", capture("kernel"), "GA, MQ, IQ or IMQ");
  cmd->add_option_function<std::string>("--T", capture("T"), "extension half-width");
  cmd->add_option_function<std::string>("--tau", capture("tau"), "regularization threshold");
  cmd->add_option_function<std::string>("--threshold-mode", capture("threshold_mode"),
                                        "relative or absolute");
  cmd->add_option_function<std::string>("--factorization", capture("factorization"),
                                        "tsvd or qr");
  cmd->add_option_function<std::string>("--scaling", capture("scaling"),
                                        "constant, power, linear or linear-optimal");
  cmd->add_option_function<std::string>("--c", capture("c"), "scaling constant");
  cmd->add_option_function<std::string>("--alpha", capture("alpha"), "power-scaling exponent");
  cmd->add_option_function<std::string>("--gamma", capture("gamma"), "oversampling ratio");
  cmd->add_option_function<std::string>("--n-min", capture("n_min"), "smallest N");
  cmd->add_option_function<std::string>("--n-max", capture("n_max"), "largest N");
  cmd->add_option_function<std::string>("--n-step", capture("n_step"), "N increment");
  cmd->add_option_function<std::string>("--validation-grid", capture("validation_grid"),
                                        "validation grid size (0: auto)");
  cmd->add_option_function<std::string>("--out", capture("out"), "output CSV path");
}

lsrbf::SweepConfig build_config(const CommonArgs& args) {
  std::map<std::string, std::string> kv;
  if (!args.config_path.empty()) kv = lsrbf::parse_config_file(args.config_path);
  for (const auto& [key, value] : args.overrides) kv[key] = value;
  return lsrbf::sweep_config_from_map(kv);
}

void print_report(const lsrbf::ApproximationReport& r) {
  std::printf("N               = %d\n", r.N);
  std::printf("M               = %d\n", r.M);
  std::printf("epsilon         = %.6g\n", r.epsilon);
  std::printf("err_l2          = %.6e\n", r.err_l2);
  std::printf("err_max         = %.6e\n", r.err_max);
  std::printf("coeff_norm      = %.6e\n", r.coeff_norm);
  std::printf("ratio           = %.6e\n", r.ratio);
  std::printf("effective_rank  = %lld\n", static_cast<long long>(r.effective_rank));
  std::printf("sigma1          = %.6e\n", r.sigma1);
  std::printf("predicted_limit = %.6e\n", r.predicted_limit);
}

int run_approx(const CommonArgs& args, int n) {
  lsrbf::SweepConfig cfg = build_config(args);
  cfg.n_min = cfg.n_max = n;
  cfg.n_step = 1;
  const auto reports = lsrbf::run_sweep(cfg);
  print_report(reports.front());
  if (!cfg.out.empty()) lsrbf::emit_csv(reports, cfg.out);
  return 0;
}

int run_sweep_cmd(const CommonArgs& args) {
  const lsrbf::SweepConfig cfg = build_config(args);
  const auto reports = lsrbf::run_sweep(cfg);
  if (cfg.out.empty()) {
    std::cout << lsrbf::csv_string(reports);
  } else {
    lsrbf::emit_csv(reports, cfg.out);
    std::cout << "wrote " << reports.size() << " rows to " << cfg.out << "\n";
  }
  return 0;
}

int run_predict(double T, double B, double tau, double c, int n) {
  const double cstar = lsrbf::optimal_c(T, tau);
  const double c_used = c > 0.0 ? c : cstar;
  const int n_min = lsrbf::min_N_linear(c_used, T, B, tau);
  const int n_used = n > 0 ? n : n_min;
  std::printf("optimal c*                  = %.12g\n", cstar);
  std::printf("constrained min{1, c*}      = %.12g\n", lsrbf::optimal_c(T, tau, true));
  std::printf("linear c used               = %.12g\n", c_used);
  std::printf("minimal N (linear scaling)  = %d\n", n_min);
  std::printf("epsilon lower bound at N=%-4d = %.12g\n", n_used,
              lsrbf::epsilon_lower_bound(T, B, n_used, tau));
  std::printf("limiting accuracy           = %.6e\n", lsrbf::limiting_accuracy(c_used, T, tau));
  return 0;
}

int run_pde(const std::string& problem_name, double extent, double tau, double c, int n_min,
            int n_max, int n_step, double gamma, int validation_grid, const std::string& out) {
  using namespace lsrbf;
  std::FILE* csv = nullptr;
  if (!out.empty()) {
    csv = std::fopen(out.c_str(), "w");
    if (!csv) throw std::runtime_error("cannot open '" + out + "' for writing");
    std::fprintf(csv, "N,dof,epsilon,err_max,err_l2,coeff_norm,rank\n");
  }
  std::printf("%6s %6s %10s %12s %12s %12s %6s\n", "N", "dof", "epsilon", "err_max", "err_l2",
              "coeff_norm", "rank");
  for (int n = n_min; n <= n_max; n += n_step) {
    const PoissonProblem prob = make_poisson_problem(problem_name, extent);
    NodeSet centers, interior, boundary;
    double epsilon = 0.0;
    if (prob.dim() == 1) {
      const Interval& iv = std::get<Interval>(prob.domain);
      centers = centers_1d(n, iv.T);
      interior = samples_1d(static_cast<int>(std::ceil(gamma * centers.count())), iv);
      boundary.dim = 1;
      boundary.role = NodeRole::BoundarySample;
      boundary.points = {{iv.a, 0.0}, {iv.b, 0.0}};
      epsilon = (c > 0.0 ? c : optimal_c(iv.T, tau)) * n;
    } else {
      const Domain2D& dom = std::get<Domain2D>(prob.domain);
      centers = hex_grid(dom.box_t1, dom.box_t2, n);
      interior = hex_grid(dom, oversample_count_total(static_cast<int>(centers.count()), gamma));
      boundary = lsrbf::boundary_points(
          dom, static_cast<int>(std::ceil(4.0 * std::sqrt(static_cast<double>(interior.count())))));
      if (!(c > 0.0)) throw std::invalid_argument("pde: 2D problems need an explicit --c");
      epsilon = c * std::sqrt(static_cast<double>(centers.count()));
    }
    const auto [sol, report] =
        solve_poisson(prob, centers, interior, boundary, epsilon, SolverConfig{tau},
                      validation_grid);
    std::printf("%6d %6zu %10.4g %12.4e %12.4e %12.4e %6lld\n", n, centers.count(), epsilon,
                report.err_max, report.err_l2, sol.coeff_norm,
                static_cast<long long>(sol.effective_rank));
    if (csv)
      std::fprintf(csv, "%d,%zu,%.16e,%.16e,%.16e,%.16e,%lld\n", n, centers.count(), epsilon,
                   report.err_max, report.err_l2, sol.coeff_norm,
                   static_cast<long long>(sol.effective_rank));
  }
  if (csv) std::fclose(csv);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Least-squares RBF approximation on bounded domains"};
  app.require_subcommand(1);

  CommonArgs approx_args, sweep_args;
  int approx_n = 50;
  CLI::App* approx = app.add_subcommand("approx", "single approximation run at one N");
  add_common_options(approx, approx_args);
  approx->add_option("--n", approx_n, "resolution parameter N")->required();

  CLI::App* sweep = app.add_subcommand("sweep", "convergence sweep over a range of N (CSV)");
  add_common_options(sweep, sweep_args);

  double p_T = 1.5, p_B = 1.0, p_tau = 1e-10, p_c = 0.0;
  int p_n = 0;
  CLI::App* predict = app.add_subcommand("predict", "closed-form scaling predictions");
  predict->add_option("--T", p_T, "extension half-width");
  predict->add_option("--B", p_B, "domain radius");
  predict->add_option("--tau", p_tau, "regularization threshold");
  predict->add_option("--c", p_c, "linear-scaling constant (default: optimal)");
  predict->add_option("--n", p_n, "report the epsilon bound at this N");

  std::string pde_problem = "poisson1d", pde_out;
  double pde_extent = 1.5, pde_tau = 1e-12, pde_c = 0.0, pde_gamma = 2.0;
  int pde_n_min = 20, pde_n_max = 20, pde_n_step = 10, pde_validation = 4000;
  CLI::App* pde = app.add_subcommand("pde", "least-squares Poisson collocation");
  pde->add_option("--problem", pde_problem, "poisson1d or poisson2d_disk");
  pde->add_option("--T", pde_extent, "extension / bounding-box half-width");
  pde->add_option("--tau", pde_tau, "regularization threshold");
  pde->add_option("--c", pde_c, "scaling constant (1D default: optimal c*)");
  pde->add_option("--gamma", pde_gamma, "interior oversampling ratio");
  pde->add_option("--n-min", pde_n_min, "smallest N");
  pde->add_option("--n-max", pde_n_max, "largest N");
  pde->add_option("--n-step", pde_n_step, "N increment");
  pde->add_option("--validation-grid", pde_validation, "validation grid density");
  pde->add_option("--out", pde_out, "output CSV path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (approx->parsed()) return run_approx(approx_args, approx_n);
    if (sweep->parsed()) return run_sweep_cmd(sweep_args);
    if (predict->parsed()) return run_predict(p_T, p_B, p_tau, p_c, p_n);
    if (pde->parsed())
      return run_pde(pde_problem, pde_extent, pde_tau, pde_c, pde_n_min, pde_n_max, pde_n_step,
                     pde_gamma, pde_validation, pde_out);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  }
  return 0;
}
