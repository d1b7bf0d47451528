#pragma once

#include <cmath>
#include <stdexcept>

#include "lsrbf/common.hpp"

namespace lsrbf {

/// Rule mapping the resolution parameter N to the shape parameter epsilon.
///
///   Constant      : epsilon = c (kept fixed; no convergence theory here)
///   Power         : epsilon = c * N^alpha, 0 < alpha < 1
///   Linear        : epsilon = c * N
///   LinearOptimal : epsilon = c*(T,tau) * N with the closed-form constant
struct ScalingPolicy {
  enum class Kind { Constant, Power, Linear, LinearOptimal };

  Kind kind = Kind::Linear;
  double c = 1.0;
  double alpha = 0.5;  // Power only
  double T = 0.0;      // LinearOptimal only
  double tau = 0.0;    // LinearOptimal only

  static ScalingPolicy constant(double epsilon0) {
    require_positive(epsilon0, "ScalingPolicy::constant: epsilon0");
    return {Kind::Constant, epsilon0, 0.0, 0.0, 0.0};
  }
  static ScalingPolicy power(double c, double alpha) {
    require_positive(c, "ScalingPolicy::power: c");
    if (!(alpha > 0.0 && alpha < 1.0))
      throw std::invalid_argument("ScalingPolicy::power: alpha must be in (0,1)");
    return {Kind::Power, c, alpha, 0.0, 0.0};
  }
  static ScalingPolicy linear(double c) {
    require_positive(c, "ScalingPolicy::linear: c");
    return {Kind::Linear, c, 0.0, 0.0, 0.0};
  }
  static ScalingPolicy linear_optimal(double T, double tau) {
    require_positive(T, "ScalingPolicy::linear_optimal: T");
    if (!(tau > 0.0 && tau < 0.5))
      throw std::invalid_argument("ScalingPolicy::linear_optimal: tau must be in (0, 0.5)");
    return {Kind::LinearOptimal, 0.0, 0.0, T, tau};
  }

 private:
  static void require_positive(double v, const char* what) {
    if (!(v > 0.0)) throw std::invalid_argument(std::string(what) + " must be positive");
  }
};

/// The proportionality constant that makes the linear-regime saturation error
/// of order tau:
///   c* = pi / (T sqrt(2 log(1 + tau^-2))).
/// With full_constraint the value is additionally capped at 1 (the form the
/// convergence-rate statement uses); the raw value is what experiments need.
inline double optimal_c(double T, double tau, bool full_constraint = false) {
  if (!(T > 0.0)) throw std::invalid_argument("optimal_c: T must be positive");
  if (!(tau > 0.0 && tau < 0.5)) throw std::invalid_argument("optimal_c: tau must be in (0, 0.5)");
  // Extended precision keeps the defining identity exp(pi^2/(2 c^2 T^2)) - 1
  // = tau^-2 intact to near double rounding even for tiny tau.
  const long double t = tau;
  const long double s = sqrtl(2.0L * log1pl(1.0L / (t * t)));
  const double c = static_cast<double>(static_cast<long double>(std::numbers::pi_v<long double>) /
                                       (static_cast<long double>(T) * s));
  return full_constraint ? std::min(1.0, c) : c;
}

inline double epsilon_of(const ScalingPolicy& policy, int N) {
  if (N < 1) throw std::invalid_argument("epsilon_of: N must be >= 1");
  switch (policy.kind) {
    case ScalingPolicy::Kind::Constant: return policy.c;
    case ScalingPolicy::Kind::Power: return policy.c * std::pow(N, policy.alpha);
    case ScalingPolicy::Kind::Linear: return policy.c * N;
    case ScalingPolicy::Kind::LinearOptimal: return optimal_c(policy.T, policy.tau) * N;
  }
  throw std::logic_error("epsilon_of: bad policy kind");
}

/// Smallest admissible shape parameter for the error analysis to apply:
///   (1 / (sqrt(2)(T-B))) sqrt(log(sqrt(2 pi) B N / (T tau^2))).
/// Returns 0 in the degenerate case where the log argument is <= 1.
inline double epsilon_lower_bound(double T, double B, int N, double tau) {
  if (!(B >= 0.0 && B < T)) throw std::invalid_argument("epsilon_lower_bound: requires 0 <= B < T");
  if (N < 1) throw std::invalid_argument("epsilon_lower_bound: N must be >= 1");
  if (!(tau > 0.0 && tau < 1.0)) throw std::invalid_argument("epsilon_lower_bound: tau must be in (0,1)");
  const double arg = std::sqrt(2.0 * pi) * B * N / (T * tau * tau);
  if (arg <= 1.0) return 0.0;
  return std::sqrt(std::log(arg)) / (std::sqrt(2.0) * (T - B));
}

/// Smallest N for which the linear scaling c*N clears epsilon_lower_bound.
/// The bound grows only logarithmically, so an integer scan terminates fast.
inline int min_N_linear(double c, double T, double B, double tau) {
  if (!(c > 0.0)) throw std::invalid_argument("min_N_linear: c must be positive");
  constexpr int kScanCap = 10'000'000;
  for (int N = 1; N <= kScanCap; ++N)
    if (c * N >= epsilon_lower_bound(T, B, N, tau)) return N;
  throw std::runtime_error("min_N_linear: no admissible N below 1e7; parameters are pathological");
}

/// Saturation level of the linear scaling regime epsilon = c*N:
///   (1/sqrt(e^{pi^2/(2 c^2 T^2)} - 1) + sqrt(cT) tau) e^{pi^2/(4 T^2)}.
/// An order-of-magnitude guide: the multiplicative constants of the underlying
/// bound are unspecified.  For tiny cT the first term underflows to zero and
/// the tau term alone remains.
inline double limiting_accuracy(double c, double T, double tau) {
  if (!(c > 0.0 && T > 0.0 && tau > 0.0))
    throw std::invalid_argument("limiting_accuracy: c, T, tau must be positive");
  const long double pil = std::numbers::pi_v<long double>;
  const long double q = pil / (static_cast<long double>(c) * static_cast<long double>(T));
  const long double first = 1.0L / sqrtl(expm1l(0.5L * q * q));  // exp overflow -> 0
  const long double halfpi_t = pil / (2.0L * static_cast<long double>(T));
  return static_cast<double>((first + sqrtl(static_cast<long double>(c) * T) * tau) *
                             expl(halfpi_t * halfpi_t));
}

/// Error-decay prediction for smooth targets of Sobolev order k, combining the
/// algebraic term with the scheme's floor.  Order-of-magnitude guide only.
/// Assumes N at or past the admissibility threshold of the policy.
inline double predicted_rate(double k, int N, const ScalingPolicy& policy, double T, double tau) {
  if (!(k > 0.0)) throw std::invalid_argument("predicted_rate: k must be positive");
  if (N < 1) throw std::invalid_argument("predicted_rate: N must be >= 1");
  const double box = pi / (2.0 * T);
  switch (policy.kind) {
    case ScalingPolicy::Kind::Power: {
      const double c = policy.c;
      const double alpha = policy.alpha;
      const double algebraic = std::pow(c * std::pow(N, alpha) * pi / T, -k);
      const double spectral = std::exp(-pi * pi * std::pow(N, 2.0 * (1.0 - alpha)) / (4.0 * c * c * T * T));
      const double floor = std::sqrt(c * T) * tau / std::pow(N, (1.0 - alpha) / 2.0);
      return algebraic + (spectral + floor) * std::exp(box * box);
    }
    case ScalingPolicy::Kind::Linear:
    case ScalingPolicy::Kind::LinearOptimal: {
      const double c = policy.kind == ScalingPolicy::Kind::Linear ? policy.c
                                                                  : optimal_c(policy.T, policy.tau);
      const double algebraic = std::pow(std::min(c, 1.0) * N * pi / T, -k);
      return algebraic + limiting_accuracy(c, T, tau);
    }
    case ScalingPolicy::Kind::Constant:
      throw std::invalid_argument("predicted_rate: no rate prediction for constant scaling");
  }
  throw std::logic_error("predicted_rate: bad policy kind");
}

}  // namespace lsrbf
