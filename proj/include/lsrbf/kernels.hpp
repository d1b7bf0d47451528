#pragma once

#include <cctype>
#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>

#include "lsrbf/common.hpp"

namespace lsrbf {

/// The four classic globally supported smooth radial profiles.
enum class RbfKernel { GA, MQ, IQ, IMQ };

inline std::string_view kernel_name(RbfKernel k) {
  switch (k) {
    case RbfKernel::GA: return "GA";
    case RbfKernel::MQ: return "MQ";
    case RbfKernel::IQ: return "IQ";
    case RbfKernel::IMQ: return "IMQ";
  }
  throw std::invalid_argument("kernel_name: unknown kernel");
}

/// Case-insensitive lookup by the usual abbreviations (GA, MQ, IQ, IMQ).
inline RbfKernel kernel_from_name(std::string_view name) {
  std::string up;
  up.reserve(name.size());
  for (char ch : name) up.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(ch))));
  if (up == "GA") return RbfKernel::GA;
  if (up == "MQ") return RbfKernel::MQ;
  if (up == "IQ") return RbfKernel::IQ;
  if (up == "IMQ") return RbfKernel::IMQ;
  throw std::invalid_argument("unknown kernel '" + std::string(name) + "' (expected GA, MQ, IQ or IMQ)");
}

/// Radial profile phi(t), with t standing for epsilon*r.  Even in t.
///
///   GA : exp(-t^2)        MQ : sqrt(1+t^2)
///   IQ : 1/(1+t^2)        IMQ: 1/sqrt(1+t^2)
inline double profile(RbfKernel k, double t) {
  const double t2 = t * t;
  switch (k) {
    case RbfKernel::GA: return std::exp(-t2);
    case RbfKernel::MQ: return std::sqrt(1.0 + t2);
    case RbfKernel::IQ: return 1.0 / (1.0 + t2);
    case RbfKernel::IMQ: return 1.0 / std::sqrt(1.0 + t2);
  }
  throw std::invalid_argument("profile: unknown kernel");
}

/// eps^{d/2} when the normalized convention is on, 1 otherwise.  The factor
/// makes the L^2(R^d) norm of a Gaussian translate independent of epsilon.
inline double norm_factor(double epsilon, int dim, bool normalized) {
  if (!normalized) return 1.0;
  return dim == 1 ? std::sqrt(epsilon) : epsilon;
}

/// One shaped and translated basis function phi(eps*(x - center)).
struct ShapedRbf {
  RbfKernel kernel = RbfKernel::GA;
  double epsilon = 1.0;
  Point center{};
  int dim = 1;
  bool normalized = false;

  ShapedRbf(RbfKernel k, double eps, Point c, int d, bool norm = false)
      : kernel(k), epsilon(eps), center(c), dim(d), normalized(norm) {
    if (!(eps > 0.0)) throw std::invalid_argument("ShapedRbf: epsilon must be positive");
    require_dim(d, "ShapedRbf");
  }
};

inline double eval(const ShapedRbf& rbf, const Point& x) {
  const double r = distance(x, rbf.center, rbf.dim);
  return norm_factor(rbf.epsilon, rbf.dim, rbf.normalized) * profile(rbf.kernel, rbf.epsilon * r);
}

/// Checked overload: rejects evaluation points of the wrong dimension.
inline double eval(const ShapedRbf& rbf, const Point& x, int x_dim) {
  if (x_dim != rbf.dim)
    throw std::invalid_argument("eval: point dimension does not match the basis function");
  return eval(rbf, x);
}

/// -Laplacian of a Gaussian translate:
///   -Delta_x exp(-eps^2 |x-c|^2) = (2 d eps^2 - 4 eps^4 |x-c|^2) exp(-eps^2 |x-c|^2),
/// times eps^{d/2} under the normalized convention.
inline double neg_laplacian_gaussian(double epsilon, const Point& center, const Point& x, int dim,
                                     bool normalized = false) {
  if (!(epsilon > 0.0)) throw std::invalid_argument("neg_laplacian_gaussian: epsilon must be positive");
  require_dim(dim, "neg_laplacian_gaussian");
  const double r = distance(x, center, dim);
  const double e2 = epsilon * epsilon;
  const double r2 = r * r;
  return norm_factor(epsilon, dim, normalized) * (2.0 * dim * e2 - 4.0 * e2 * e2 * r2) *
         std::exp(-e2 * r2);
}

/// Collocation operator entry for a general kernel.  Only the Gaussian has a
/// closed form here; other kernels are rejected.
inline double neg_laplacian(RbfKernel kernel, double epsilon, const Point& center, const Point& x,
                            int dim, bool normalized = false) {
  if (kernel != RbfKernel::GA)
    throw not_implemented_error("neg_laplacian: only the Gaussian kernel is supported");
  return neg_laplacian_gaussian(epsilon, center, x, dim, normalized);
}

}  // namespace lsrbf
