#pragma once

#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

namespace lsrbf {

/// Discrete L^2 error sqrt(|Omega| / M * sum (approx - exact)^2): the discrete
/// norm over the grid scaled so it approximates the continuous L^2(Omega) norm.
inline double discrete_l2_error(std::span<const double> approx, std::span<const double> exact,
                                double domain_measure) {
  if (approx.size() != exact.size())
    throw std::invalid_argument("discrete_l2_error: sequence lengths differ");
  if (approx.empty()) throw std::invalid_argument("discrete_l2_error: sequences are empty");
  if (!(domain_measure > 0.0))
    throw std::invalid_argument("discrete_l2_error: domain measure must be positive");
  double acc = 0.0;
  for (std::size_t i = 0; i < approx.size(); ++i) {
    const double d = approx[i] - exact[i];
    acc += d * d;
  }
  return std::sqrt(domain_measure / static_cast<double>(approx.size()) * acc);
}

inline double max_abs_error(std::span<const double> approx, std::span<const double> exact) {
  if (approx.size() != exact.size())
    throw std::invalid_argument("max_abs_error: sequence lengths differ");
  double worst = 0.0;
  for (std::size_t i = 0; i < approx.size(); ++i)
    worst = std::max(worst, std::abs(approx[i] - exact[i]));
  return worst;
}

/// Least-squares slope of log(err) against log(n).  Non-positive errors are
/// skipped (they carry no slope information on a log scale).
inline double loglog_slope(std::span<const double> n, std::span<const double> err) {
  if (n.size() != err.size()) throw std::invalid_argument("loglog_slope: sequence lengths differ");
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < n.size(); ++i) {
    if (!(n[i] > 0.0) || !(err[i] > 0.0)) continue;
    const double x = std::log(n[i]);
    const double y = std::log(err[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++count;
  }
  if (count < 2) throw std::invalid_argument("loglog_slope: need at least two usable points");
  const double denom = count * sxx - sx * sx;
  if (denom == 0.0) throw std::invalid_argument("loglog_slope: degenerate abscissae");
  return (count * sxy - sx * sy) / denom;
}

}  // namespace lsrbf
