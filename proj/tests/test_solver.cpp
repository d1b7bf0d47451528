#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "lsrbf/solver.hpp"
#include "oracles.hpp"

using namespace lsrbf;

namespace {

NodeSet nodes_1d(std::initializer_list<double> xs, NodeRole role) {
  NodeSet out;
  out.role = role;
  out.dim = 1;
  for (double x : xs) out.points.push_back({x, 0.0});
  return out;
}

// random orthogonal factor via Gram-Schmidt on a seeded Gaussian matrix
Eigen::MatrixXd random_orthogonal(int n, std::mt19937& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = gauss(rng);
  return Eigen::HouseholderQR<Eigen::MatrixXd>(a).householderQ();
}

}  // namespace

TEST_CASE("assemble builds the normalized system") {
  SECTION("one center, one sample, unit scales") {
    const LsSystem sys = assemble(nodes_1d({0.0}, NodeRole::Center),
                                  nodes_1d({0.0}, NodeRole::InteriorSample), RbfKernel::GA, 1.0,
                                  [](const Point&) { return 1.0; }, 1.0);
    REQUIRE(sys.matrix.rows() == 1);
    REQUIRE(sys.matrix.cols() == 1);
    CHECK(sys.matrix(0, 0) == 1.0);
    CHECK(sys.rhs(0) == 1.0);
    CHECK(sys.row_scale == 1.0);
  }

  SECTION("shape and entry bound for a Gaussian system") {
    const NodeSet centers = centers_1d(1, 1.0);  // 3 centers
    const Interval iv = Interval::make(-0.9, 0.9, 1.0);
    const NodeSet samples = samples_1d(6, iv);
    const double eps = 2.0;
    const LsSystem sys = assemble(centers, samples, RbfKernel::GA, eps,
                                  [](const Point& p) { return p.x; }, 1.0);
    REQUIRE(sys.matrix.rows() == 6);
    REQUIRE(sys.matrix.cols() == 3);
    const double bound = std::sqrt(eps) * std::sqrt(1.0 / 6.0);
    for (int m = 0; m < 6; ++m)
      for (int n = 0; n < 3; ++n) CHECK(std::abs(sys.matrix(m, n)) <= bound * (1 + 1e-15));
  }

  SECTION("entries match per-entry recomputation from the kernel evaluations") {
    std::mt19937 rng(321);
    std::uniform_real_distribution<double> xdist(-1.0, 1.0);
    NodeSet centers, samples;
    centers.dim = samples.dim = 2;
    centers.role = NodeRole::Center;
    samples.role = NodeRole::InteriorSample;
    for (int i = 0; i < 4; ++i) centers.points.push_back({xdist(rng), xdist(rng)});
    for (int i = 0; i < 5; ++i) samples.points.push_back({xdist(rng), xdist(rng)});
    const double eps = 3.7, area = 2.3;
    auto f = [](const Point& p) { return std::sin(p.x) + p.y; };
    const LsSystem sys = assemble(centers, samples, RbfKernel::IMQ, eps, f, area);
    const double rs = std::sqrt(area / 5.0);
    for (int m = 0; m < 5; ++m) {
      for (int n = 0; n < 4; ++n) {
        const ShapedRbf rbf(RbfKernel::IMQ, eps, centers.points[n], 2, true);
        const double expect = rs * eval(rbf, samples.points[m]);
        CHECK_THAT(sys.matrix(m, n), Catch::Matchers::WithinRel(expect, 1e-15));
      }
      CHECK_THAT(sys.rhs(m), Catch::Matchers::WithinRel(rs * f(samples.points[m]), 1e-15));
    }
  }

  SECTION("failures in the sample source carry the sample index") {
    const NodeSet centers = nodes_1d({0.0}, NodeRole::Center);
    const NodeSet samples = nodes_1d({0.0, 0.5}, NodeRole::InteriorSample);
    CHECK_THROWS_WITH(assemble(centers, samples, RbfKernel::GA, 1.0,
                               [](const Point& p) -> double {
                                 if (p.x > 0.0) throw std::runtime_error("pole");
                                 return 1.0;
                               },
                               1.0),
                      Catch::Matchers::ContainsSubstring("sample 1"));
    CHECK_THROWS_WITH(assemble(centers, samples, RbfKernel::GA, 1.0,
                               [](const Point& p) { return 1.0 / (p.x - 0.5); }, 1.0),
                      Catch::Matchers::ContainsSubstring("non-finite"));
  }

  CHECK_THROWS_AS(assemble(NodeSet{}, nodes_1d({0.0}, NodeRole::InteriorSample), RbfKernel::GA,
                           1.0, [](const Point&) { return 0.0; }, 1.0),
                  std::invalid_argument);
}

TEST_CASE("solve: truncated SVD behavior on explicit matrices") {
  SolverConfig cfg;
  cfg.tau = 0.5;

  SECTION("identity system") {
    Eigen::MatrixXd a = Eigen::MatrixXd::Identity(2, 2);
    Eigen::VectorXd b(2);
    b << 1.0, 2.0;
    const LsSolution sol = solve(a, b, cfg);
    CHECK(sol.effective_rank == 2);
    CHECK_THAT(sol.coefficients(0), Catch::Matchers::WithinAbs(1.0, 1e-14));
    CHECK_THAT(sol.coefficients(1), Catch::Matchers::WithinAbs(2.0, 1e-14));
    CHECK(sol.residual_norm < 1e-14);
    CHECK_THAT(sol.sigma1, Catch::Matchers::WithinAbs(1.0, 1e-14));
  }

  SECTION("a tiny singular value is discarded") {
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(2, 2);
    a(0, 0) = 1.0;
    a(1, 1) = 1e-12;
    Eigen::VectorXd b(2);
    b << 1.0, 1.0;
    cfg.tau = 1e-6;
    const LsSolution sol = solve(a, b, cfg);
    CHECK(sol.effective_rank == 1);
    CHECK_THAT(sol.coefficients(0), Catch::Matchers::WithinAbs(1.0, 1e-12));
    CHECK(sol.coefficients(1) == 0.0);
    CHECK_THAT(sol.residual_norm, Catch::Matchers::WithinAbs(1.0, 1e-12));
  }

  SECTION("all singular values below threshold: zero solution, flagged") {
    Eigen::MatrixXd a = Eigen::MatrixXd::Constant(3, 2, 1e-9);
    Eigen::VectorXd b = Eigen::VectorXd::Ones(3);
    cfg.tau = 1e-3;
    cfg.threshold_mode = ThresholdMode::Absolute;
    const LsSolution sol = solve(a, b, cfg);
    CHECK(sol.all_below_threshold);
    CHECK(sol.effective_rank == 0);
    CHECK(sol.coeff_norm == 0.0);
    CHECK_THAT(sol.residual_norm, Catch::Matchers::WithinRel(b.norm(), 1e-15));
  }

  SECTION("rank-deficient fixture: exactly the constructed directions survive") {
    std::mt19937 rng(31337);
    const int m = 9, n = 6;
    Eigen::MatrixXd u = random_orthogonal(m, rng).leftCols(n);
    Eigen::MatrixXd v = random_orthogonal(n, rng);
    Eigen::VectorXd sv(n);
    sv << 2.0, 1.0, 0.3, 1e-9, 1e-12, 1e-14;
    const Eigen::MatrixXd a = u * sv.asDiagonal() * v.transpose();
    Eigen::VectorXd b(m);
    for (int i = 0; i < m; ++i) b(i) = std::cos(1.0 + i);
    cfg.tau = 1e-6;
    cfg.threshold_mode = ThresholdMode::RelativeToSigma1;
    const LsSolution sol = solve(a, b, cfg);
    CHECK(sol.effective_rank == 3);
    // reconstruct from the constructed factors (independent of the library SVD)
    Eigen::VectorXd expect = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < 3; ++i) expect += v.col(i) * (u.col(i).dot(b) / sv(i));
    CHECK((sol.coefficients - expect).norm() < 1e-10 * expect.norm());
  }
}

TEST_CASE("solve matches the normal-equations oracle on well-conditioned systems") {
  std::mt19937 rng(2024);
  std::uniform_int_distribution<int> mdist(6, 40), ndist(2, 20);
  std::uniform_real_distribution<double> sdist(0.5, 2.0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const int m = mdist(rng);
    const int n = std::min(ndist(rng), m - 1);
    Eigen::MatrixXd u = random_orthogonal(m, rng).leftCols(n);
    Eigen::MatrixXd v = random_orthogonal(n, rng);
    Eigen::VectorXd sv(n);
    for (int i = 0; i < n; ++i) sv(i) = sdist(rng);
    std::sort(sv.data(), sv.data() + n, std::greater<>());
    const Eigen::MatrixXd a = u * sv.asDiagonal() * v.transpose();
    Eigen::VectorXd b(m);
    for (int i = 0; i < m; ++i) b(i) = gauss(rng);

    std::vector<std::vector<double>> a_rows(m, std::vector<double>(n));
    std::vector<double> b_vec(m);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < n; ++j) a_rows[i][j] = a(i, j);
      b_vec[i] = b(i);
    }
    const std::vector<double> expect = oracles::normal_equations_solve(a_rows, b_vec);

    for (Factorization f : {Factorization::TruncatedSvd, Factorization::PivotedQr}) {
      SolverConfig cfg;
      cfg.tau = 1e-12;
      cfg.factorization = f;
      const LsSolution sol = solve(a, b, cfg);
      REQUIRE(sol.effective_rank == n);
      double diff = 0.0, norm = 0.0;
      for (int j = 0; j < n; ++j) {
        diff += std::pow(sol.coefficients(j) - expect[j], 2);
        norm += expect[j] * expect[j];
      }
      CHECK(std::sqrt(diff / norm) < 1e-10);
    }
  }
}

TEST_CASE("solver invariants") {
  // a genuinely ill-conditioned RBF system
  const NodeSet centers = centers_1d(10, 1.3);
  const Interval iv = Interval::make(-1.0, 1.0, 1.3);
  const NodeSet samples = samples_1d(42, iv);
  const LsSystem sys = assemble(centers, samples, RbfKernel::GA, 4.0,
                                [](const Point& p) { return 1.0 / (1.0 + 10.0 * p.x * p.x); },
                                1.3);

  SECTION("effective rank is non-increasing in tau") {
    Eigen::Index prev_rank = std::min(sys.matrix.rows(), sys.matrix.cols());
    for (double tau : {1e-16, 1e-12, 1e-8, 1e-4, 1e-2, 0.5}) {
      const LsSolution sol = solve(sys, SolverConfig{tau});
      CHECK(sol.effective_rank <= prev_rank);
      prev_rank = sol.effective_rank;
    }
  }

  SECTION("TSVD and pivoted QR agree at full rank") {
    SolverConfig svd_cfg{1e-15, ThresholdMode::Absolute, Factorization::TruncatedSvd};
    SolverConfig qr_cfg{1e-15, ThresholdMode::Absolute, Factorization::PivotedQr};
    // use a well-conditioned variant so no truncation occurs in either route
    const LsSystem nice = assemble(centers_1d(5, 1.3), samples, RbfKernel::IQ, 6.0,
                                   [](const Point& p) { return std::exp(p.x); }, 1.3);
    const LsSolution s1 = solve(nice, svd_cfg);
    const LsSolution s2 = solve(nice, qr_cfg);
    REQUIRE(s1.effective_rank == 11);
    REQUIRE(s2.effective_rank == 11);
    CHECK((s1.coefficients - s2.coefficients).norm() < 1e-8 * s1.coefficients.norm());
  }

  SECTION("full-rank residual is orthogonal to the range") {
    const LsSystem nice = assemble(centers_1d(4, 1.3), samples, RbfKernel::IMQ, 3.0,
                                   [](const Point& p) { return std::sin(3.0 * p.x); }, 1.3);
    const LsSolution sol = solve(nice, SolverConfig{1e-15, ThresholdMode::Absolute});
    const Eigen::VectorXd r = nice.matrix * sol.coefficients - nice.rhs;
    CHECK((nice.matrix.transpose() * r).lpNorm<Eigen::Infinity>() <=
          1e-10 * sol.sigma1 * nice.rhs.norm());
  }

  SECTION("row-scaling covariance: T -> 4T doubles all entries exactly") {
    const auto f = [](const Point& p) { return std::cos(p.x); };
    const LsSystem s1 = assemble(centers, samples, RbfKernel::GA, 4.0, f, 1.3);
    const LsSystem s4 = assemble(centers, samples, RbfKernel::GA, 4.0, f, 4.0 * 1.3);
    for (Eigen::Index m = 0; m < s1.matrix.rows(); ++m) {
      CHECK(s4.rhs(m) == 2.0 * s1.rhs(m));
      for (Eigen::Index n = 0; n < s1.matrix.cols(); ++n)
        CHECK(s4.matrix(m, n) == 2.0 * s1.matrix(m, n));
    }
    // the truncated solution is invariant under the relative threshold
    const LsSolution sol1 = solve(s1, SolverConfig{1e-10});
    const LsSolution sol4 = solve(s4, SolverConfig{1e-10});
    CHECK(sol1.effective_rank == sol4.effective_rank);
    CHECK((sol1.coefficients - sol4.coefficients).norm() <= 1e-12 * sol1.coefficients.norm());
  }
}

TEST_CASE("evaluate_approximant") {
  const NodeSet centers = centers_1d(3, 1.5);
  const Interval iv = Interval::make(-1.0, 1.0, 1.5);
  const NodeSet samples = samples_1d(14, iv);
  const double eps = 2.5;
  const LsSystem sys = assemble(centers, samples, RbfKernel::GA, eps,
                                [](const Point& p) { return std::cos(2.0 * p.x); }, 1.5);

  SECTION("zero coefficients give zeros") {
    LsSolution zero;
    zero.coefficients = Eigen::VectorXd::Zero(7);
    for (double v : evaluate_approximant(zero, sys.meta, samples.points)) CHECK(v == 0.0);
  }

  SECTION("a single unit coefficient reproduces that translate") {
    LsSolution one;
    one.coefficients = Eigen::VectorXd::Zero(7);
    one.coefficients(2) = 1.0;
    const ShapedRbf rbf(RbfKernel::GA, eps, centers.points[2], 1, true);
    const std::vector<double> vals = evaluate_approximant(one, sys.meta, samples.points);
    for (std::size_t i = 0; i < samples.count(); ++i)
      CHECK_THAT(vals[i], Catch::Matchers::WithinRel(eval(rbf, samples.points[i]), 1e-14));
  }

  SECTION("residual consistency at the sample points") {
    const LsSolution sol = solve(sys, SolverConfig{1e-12});
    const std::vector<double> vals = evaluate_approximant(sol, sys.meta, samples.points);
    const Eigen::VectorXd r = sys.matrix * sol.coefficients - sys.rhs;
    for (std::size_t i = 0; i < samples.count(); ++i)
      CHECK_THAT(sys.row_scale * vals[i] - sys.rhs(i),
                 Catch::Matchers::WithinAbs(r(static_cast<Eigen::Index>(i)), 1e-13));
  }
}

TEST_CASE("rule_of_thumb_ratio") {
  LsSolution sol;
  sol.coeff_norm = 100.0;
  CHECK(rule_of_thumb_ratio(1e-8, sol) == 1e-10);
  sol.coeff_norm = 3.7;
  CHECK_THAT(rule_of_thumb_ratio(1e-10 * 3.7, sol), Catch::Matchers::WithinRel(1e-10, 1e-12));
  sol.coeff_norm = 0.0;
  CHECK(std::isnan(rule_of_thumb_ratio(1.0, sol)));
  CHECK_THROWS_AS(rule_of_thumb_ratio(-1.0, sol), std::invalid_argument);
}
