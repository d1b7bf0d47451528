#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace lsrbf {

/// A point in R^1 or R^2; one-dimensional code leaves y at zero.
struct Point {
  double x = 0.0;
  double y = 0.0;
};

/// Raised by operations whose contract names a capability this library
/// deliberately does not provide (e.g. collocation with non-Gaussian kernels).
class not_implemented_error : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline constexpr double pi = std::numbers::pi;

/// Euclidean distance; dim selects how many coordinates participate.
inline double distance(const Point& a, const Point& b, int dim) {
  const double dx = a.x - b.x;
  if (dim == 1) return std::abs(dx);
  const double dy = a.y - b.y;
  return std::sqrt(dx * dx + dy * dy);
}

inline void require_dim(int dim, const char* where) {
  if (dim != 1 && dim != 2) throw std::invalid_argument(std::string(where) + ": dim must be 1 or 2");
}

}  // namespace lsrbf
