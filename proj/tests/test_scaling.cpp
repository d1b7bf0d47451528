#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "lsrbf/scaling.hpp"

using namespace lsrbf;

TEST_CASE("epsilon_of per policy") {
  CHECK(epsilon_of(ScalingPolicy::linear(0.5), 10) == 5.0);
  CHECK(epsilon_of(ScalingPolicy::power(2.0, 0.5), 100) == 20.0);
  CHECK(epsilon_of(ScalingPolicy::constant(3.5), 999) == 3.5);
  const double c = optimal_c(1.5, 1e-10);
  CHECK(epsilon_of(ScalingPolicy::linear_optimal(1.5, 1e-10), 100) == 100.0 * c);
  CHECK_THROWS_AS(epsilon_of(ScalingPolicy::linear(1.0), 0), std::invalid_argument);
}

TEST_CASE("policy factories validate their constants") {
  CHECK_THROWS_AS(ScalingPolicy::linear(0.0), std::invalid_argument);
  CHECK_THROWS_AS(ScalingPolicy::power(1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(ScalingPolicy::power(1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(ScalingPolicy::linear_optimal(1.5, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(ScalingPolicy::constant(-1.0), std::invalid_argument);
}

TEST_CASE("optimal_c closed form") {
  // extended-precision references
  CHECK_THAT(optimal_c(1.5, 1e-10),
             Catch::Matchers::WithinRel(0.21823317626289233, 1e-14));
  CHECK_THAT(optimal_c(4.0, 1e-10),
             Catch::Matchers::WithinRel(0.08183744109858463, 1e-14));
  CHECK_THAT(optimal_c(1.5, 1e-6),
             Catch::Matchers::WithinRel(0.2817378190853715, 1e-14));
  // the value scales exactly like 1/T
  CHECK(optimal_c(3.0, 1e-10) == optimal_c(1.5, 1e-10) / 2.0);
  // the constrained variant caps at 1
  CHECK(optimal_c(0.05, 0.3) == optimal_c(0.05, 0.3, false));
  CHECK(optimal_c(0.05, 0.3, true) == 1.0);
  CHECK_THROWS_AS(optimal_c(1.5, 0.7), std::invalid_argument);
  CHECK_THROWS_AS(optimal_c(-1.0, 0.1), std::invalid_argument);
}

TEST_CASE("optimal_c meets its defining constraint with equality") {
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> Tdist(0.5, 5.0);
  std::uniform_real_distribution<double> logtau(-14.0, std::log10(0.4));
  for (int i = 0; i < 5000; ++i) {
    const double T = Tdist(rng);
    const double tau = std::pow(10.0, logtau(rng));
    const double lhs = optimal_c(T, tau) * T;
    const double rhs = pi / std::sqrt(2.0 * std::log1p(1.0 / (tau * tau)));
    CHECK(std::abs(lhs - rhs) < 1e-15);
  }
}

TEST_CASE("epsilon_lower_bound") {
  // closed form (1/sqrt(2)) sqrt(log(sqrt(2 pi)/2)) in the tau -> 1 limit
  CHECK_THAT(epsilon_lower_bound(2.0, 1.0, 1, 0.999999999),
             Catch::Matchers::WithinRel(0.33599951833650553, 1e-7));
  SECTION("exact reference value") {
    const double v = std::sqrt(std::log(std::sqrt(2.0 * pi) / 2.0)) / std::sqrt(2.0);
    CHECK_THAT(epsilon_lower_bound(2.0, 1.0, 1, 1.0 - 1e-16),
               Catch::Matchers::WithinRel(v, 1e-12));
  }
  SECTION("reference at experiment scale") {
    CHECK_THAT(epsilon_lower_bound(1.5, 1.0, 60, 1e-10),
               Catch::Matchers::WithinRel(10.065735924133866, 1e-13));
  }
  SECTION("monotone in N") {
    CHECK(epsilon_lower_bound(1.5, 1.0, 100, 1e-10) > epsilon_lower_bound(1.5, 1.0, 10, 1e-10));
  }
  SECTION("degenerate log argument returns 0") {
    CHECK(epsilon_lower_bound(1.0, 1e-30, 1, 0.5) == 0.0);
  }
  CHECK_THROWS_AS(epsilon_lower_bound(1.0, 1.5, 10, 0.1), std::invalid_argument);
}

TEST_CASE("min_N_linear") {
  CHECK(min_N_linear(100.0, 2.0, 1.0, 0.1) == 1);
  // frozen by an independent integer scan of the closed-form bound
  CHECK(min_N_linear(0.2182, 1.5, 1.0, 1e-10) == 47);
  CHECK(min_N_linear(optimal_c(1.5, 1e-10), 1.5, 1.0, 1e-10) == 47);
  CHECK(min_N_linear(optimal_c(1.5, 1e-6), 1.5, 1.0, 1e-6) == 29);

  SECTION("minimality: holds at N*, fails at N*-1") {
    for (double c : {0.05, 0.2, 0.7}) {
      const int nstar = min_N_linear(c, 1.7, 1.0, 1e-8);
      CHECK(c * nstar >= epsilon_lower_bound(1.7, 1.0, nstar, 1e-8));
      if (nstar > 1)
        CHECK(c * (nstar - 1) < epsilon_lower_bound(1.7, 1.0, nstar - 1, 1e-8));
    }
  }
}

TEST_CASE("limiting_accuracy") {
  CHECK_THAT(limiting_accuracy(optimal_c(1.5, 1e-10), 1.5, 1e-10),
             Catch::Matchers::WithinRel(4.7070602584751647e-10, 1e-13));
  CHECK_THAT(limiting_accuracy(0.5, 1.5, 1e-10),
             Catch::Matchers::WithinRel(0.037261647809219375, 1e-13));

  SECTION("identity at the optimal constant") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> Tdist(0.5, 5.0);
    std::uniform_real_distribution<double> logtau(-14.0, std::log10(0.4));
    for (int i = 0; i < 5000; ++i) {
      const double T = Tdist(rng);
      const double tau = std::pow(10.0, logtau(rng));
      const double cs = optimal_c(T, tau);
      const double identity = tau * (1.0 + std::sqrt(cs * T)) * std::exp(pi * pi / (4.0 * T * T));
      CHECK_THAT(limiting_accuracy(cs, T, tau), Catch::Matchers::WithinRel(identity, 1e-14));
    }
  }

  SECTION("tiny cT: the spectral term underflows and the tau term remains") {
    const double v = limiting_accuracy(1e-4, 1.5, 1e-10);
    const double tau_only = std::sqrt(1e-4 * 1.5) * 1e-10 * std::exp(pi * pi / 9.0);
    CHECK_THAT(v, Catch::Matchers::WithinRel(tau_only, 1e-12));
  }

  SECTION("strictly increasing in tau and in c past the optimum") {
    double prev = 0.0;
    for (double tau : {1e-12, 1e-10, 1e-8, 1e-6, 1e-4, 1e-2}) {
      const double v = limiting_accuracy(0.3, 1.5, tau);
      CHECK(v > prev);
      prev = v;
    }
    const double cs = optimal_c(1.5, 1e-10);
    prev = 0.0;
    for (double mult : {1.0, 1.3, 1.8, 2.5, 4.0, 8.0}) {
      const double v = limiting_accuracy(cs * mult, 1.5, 1e-10);
      CHECK(v > prev);
      prev = v;
    }
  }
}

TEST_CASE("epsilon_of for LinearOptimal is exactly proportional to N") {
  const ScalingPolicy pol = ScalingPolicy::linear_optimal(1.5, 1e-10);
  const double base = epsilon_of(pol, 1);
  for (int n : {2, 7, 31, 100, 400}) CHECK(epsilon_of(pol, n) == base * n);
}

TEST_CASE("admissibility at the minimal N under linear scaling") {
  for (double tau : {1e-6, 1e-10}) {
    for (double T : {1.3, 1.5, 4.0}) {
      const double c = optimal_c(T, tau);
      const int nstar = min_N_linear(c, T, 1.0, tau);
      const double eps = epsilon_of(ScalingPolicy::linear(c), nstar);
      CHECK(eps >= epsilon_lower_bound(T, 1.0, nstar, tau));
    }
  }
}

TEST_CASE("predicted_rate") {
  SECTION("linear policy: algebraic term plus the saturation floor") {
    const ScalingPolicy lin = ScalingPolicy::linear(0.4);
    const double floor = limiting_accuracy(0.4, 1.5, 1e-10);
    // huge k: only the floor remains (min{c,1} N pi/T > 1)
    CHECK_THAT(predicted_rate(400.0, 50, lin, 1.5, 1e-10),
               Catch::Matchers::WithinRel(floor, 1e-12));
    // doubling N divides the algebraic part by 2^k
    const double k = 3.0;
    const double a1 = predicted_rate(k, 100, lin, 1.5, 1e-10) - floor;
    const double a2 = predicted_rate(k, 200, lin, 1.5, 1e-10) - floor;
    CHECK_THAT(a1 / a2, Catch::Matchers::WithinRel(8.0, 1e-9));
  }

  SECTION("power policy: algebraic term decays like N^(-k alpha)") {
    const ScalingPolicy pow_pol = ScalingPolicy::power(1.0, 0.5);
    const double k = 4.0;
    // at these N the exponential and tau terms are negligible w.r.t. algebraic
    const double r100 = predicted_rate(k, 100, pow_pol, 1.5, 1e-30);
    const double r400 = predicted_rate(k, 400, pow_pol, 1.5, 1e-30);
    CHECK_THAT(r100 / r400, Catch::Matchers::WithinRel(std::pow(2.0, k), 1e-6));
  }

  CHECK_THROWS_AS(predicted_rate(2.0, 10, ScalingPolicy::constant(1.0), 1.5, 1e-10),
                  std::invalid_argument);
}
