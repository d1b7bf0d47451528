#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "lsrbf/geometry.hpp"
#include "lsrbf/kernels.hpp"

namespace lsrbf {

/// What a system was assembled from; kept so an approximant can be evaluated.
struct SystemMeta {
  RbfKernel kernel = RbfKernel::GA;
  double epsilon = 1.0;
  NodeSet centers;
  NodeSet samples;
};

/// The rectangular least-squares system in the normalized convention: entry
/// (m,n) = row_scale * eps^{d/2} * phi(eps |x_m - xi_n|) with
/// row_scale = sqrt(T/M) (1D) or sqrt(box area / M) (2D).
struct LsSystem {
  Eigen::MatrixXd matrix;
  Eigen::VectorXd rhs;
  double row_scale = 1.0;
  SystemMeta meta;
};

enum class ThresholdMode { RelativeToSigma1, Absolute };
enum class Factorization { TruncatedSvd, PivotedQr };

struct SolverConfig {
  double tau = 1e-10;
  ThresholdMode threshold_mode = ThresholdMode::RelativeToSigma1;
  Factorization factorization = Factorization::TruncatedSvd;
};

/// Regularized least-squares solution with its diagnostics.  sigma1 is the
/// largest singular value for the SVD route and |R_00| (its rank-revealing
/// stand-in) for the pivoted-QR route.
struct LsSolution {
  Eigen::VectorXd coefficients;
  double coeff_norm = 0.0;
  double residual_norm = 0.0;
  Eigen::Index effective_rank = 0;
  double sigma1 = 0.0;
  bool all_below_threshold = false;
};

inline LsSystem assemble(const NodeSet& centers, const NodeSet& samples, RbfKernel kernel,
                         double epsilon, const std::function<double(const Point&)>& f,
                         double T_or_area) {
  if (centers.count() == 0) throw std::invalid_argument("assemble: centers are empty");
  if (samples.count() == 0) throw std::invalid_argument("assemble: samples are empty");
  if (centers.dim != samples.dim)
    throw std::invalid_argument("assemble: centers and samples have different dimensions");
  if (!(epsilon > 0.0)) throw std::invalid_argument("assemble: epsilon must be positive");
  if (!(T_or_area > 0.0)) throw std::invalid_argument("assemble: domain measure must be positive");
  if (!f) throw std::invalid_argument("assemble: sample source is empty");

  const int dim = centers.dim;
  const auto m_count = static_cast<Eigen::Index>(samples.count());
  const auto n_count = static_cast<Eigen::Index>(centers.count());
  const double row_scale = std::sqrt(T_or_area / static_cast<double>(m_count));
  const double nf = norm_factor(epsilon, dim, true);

  LsSystem sys;
  sys.row_scale = row_scale;
  sys.meta = {kernel, epsilon, centers, samples};
  sys.matrix.resize(m_count, n_count);
  sys.rhs.resize(m_count);
  for (Eigen::Index m = 0; m < m_count; ++m) {
    const Point& x = samples.points[static_cast<std::size_t>(m)];
    for (Eigen::Index n = 0; n < n_count; ++n) {
      const double r = distance(x, centers.points[static_cast<std::size_t>(n)], dim);
      sys.matrix(m, n) = row_scale * nf * profile(kernel, epsilon * r);
    }
    double value;
    try {
      value = f(x);
    } catch (const std::exception& ex) {
      throw std::runtime_error("assemble: sample source failed at sample " + std::to_string(m) +
                               ": " + ex.what());
    }
    if (!std::isfinite(value))
      throw std::runtime_error("assemble: sample source returned a non-finite value at sample " +
                               std::to_string(m));
    sys.rhs(m) = row_scale * value;
  }
  return sys;
}

/// Solve min ||A z - b|| with threshold regularization.  TruncatedSvd keeps
/// singular directions with sigma_i > threshold; PivotedQr truncates the
/// rank-revealing factorization at the analogous |R_ii| threshold.  When every
/// direction falls below the threshold the zero solution is returned with
/// all_below_threshold set (a warning, not an error).
inline LsSolution solve(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                        const SolverConfig& config) {
  if (A.rows() != b.size()) throw std::invalid_argument("solve: rhs length does not match matrix");
  if (!(config.tau > 0.0)) throw std::invalid_argument("solve: tau must be positive");
  if (config.threshold_mode == ThresholdMode::RelativeToSigma1 && !(config.tau < 1.0))
    throw std::invalid_argument("solve: relative tau must be below 1");

  LsSolution sol;
  sol.coefficients = Eigen::VectorXd::Zero(A.cols());

  if (config.factorization == Factorization::TruncatedSvd) {
    Eigen::BDCSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd& sv = svd.singularValues();
    sol.sigma1 = sv.size() > 0 ? sv(0) : 0.0;
    const double threshold =
        config.threshold_mode == ThresholdMode::RelativeToSigma1 ? config.tau * sol.sigma1 : config.tau;
    Eigen::Index rank = 0;
    while (rank < sv.size() && sv(rank) > threshold) ++rank;
    sol.effective_rank = rank;
    if (rank == 0) {
      sol.all_below_threshold = true;
    } else {
      const Eigen::VectorXd utb = svd.matrixU().leftCols(rank).transpose() * b;
      sol.coefficients =
          svd.matrixV().leftCols(rank) * (utb.array() / sv.head(rank).array()).matrix();
    }
  } else {
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
    const Eigen::Index kmax = std::min(A.rows(), A.cols());
    const Eigen::MatrixXd& qrm = qr.matrixQR();
    sol.sigma1 = kmax > 0 ? std::abs(qrm(0, 0)) : 0.0;
    const double threshold =
        config.threshold_mode == ThresholdMode::RelativeToSigma1 ? config.tau * sol.sigma1 : config.tau;
    Eigen::Index rank = 0;
    while (rank < kmax && std::abs(qrm(rank, rank)) > threshold) ++rank;
    sol.effective_rank = rank;
    if (rank == 0) {
      sol.all_below_threshold = true;
    } else {
      const Eigen::VectorXd qtb = (qr.householderQ().transpose() * b).eval().head(rank);
      Eigen::VectorXd z = Eigen::VectorXd::Zero(A.cols());
      z.head(rank) = qr.matrixR()
                         .topLeftCorner(rank, rank)
                         .template triangularView<Eigen::Upper>()
                         .solve(qtb);
      sol.coefficients = qr.colsPermutation() * z;
    }
  }

  sol.coeff_norm = sol.coefficients.norm();
  sol.residual_norm = (A * sol.coefficients - b).norm();
  return sol;
}

inline LsSolution solve(const LsSystem& system, const SolverConfig& config) {
  return solve(system.matrix, system.rhs, config);
}

/// Evaluate the approximant sum_n lambda_n eps^{d/2} phi(eps |x - xi_n|) at
/// each point (normalized convention, matching assemble).
inline std::vector<double> evaluate_approximant(const LsSolution& solution, const SystemMeta& meta,
                                                const std::vector<Point>& points) {
  const auto n_count = static_cast<Eigen::Index>(meta.centers.count());
  if (solution.coefficients.size() != n_count)
    throw std::invalid_argument("evaluate_approximant: coefficient count does not match centers");
  const int dim = meta.centers.dim;
  const double nf = norm_factor(meta.epsilon, dim, true);
  std::vector<double> values;
  values.reserve(points.size());
  for (const Point& p : points) {
    double acc = 0.0;
    for (Eigen::Index n = 0; n < n_count; ++n) {
      const double r = distance(p, meta.centers.points[static_cast<std::size_t>(n)], dim);
      acc += solution.coefficients(n) * profile(meta.kernel, meta.epsilon * r);
    }
    values.push_back(nf * acc);
  }
  return values;
}

/// error / ||lambda||: the balance diagnostic that should sit near tau when
/// the regularized problem was solved to its optimum.  Returns NaN when the
/// coefficient norm is zero (undefined ratio).
inline double rule_of_thumb_ratio(double error, const LsSolution& solution) {
  if (!(error >= 0.0)) throw std::invalid_argument("rule_of_thumb_ratio: error must be >= 0");
  if (solution.coeff_norm == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return error / solution.coeff_norm;
}

}  // namespace lsrbf
