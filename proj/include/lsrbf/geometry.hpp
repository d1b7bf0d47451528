#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "lsrbf/common.hpp"

namespace lsrbf {

/// Approximation interval Omega = [a,b] inside the center extension (-T,T).
/// B = max(|a|,|b|) is the domain radius; the standard construction requires
/// B < T so that some centers land outside the domain.
struct Interval {
  double a = -1.0;
  double b = 1.0;
  double T = 1.5;

  double radius() const { return std::max(std::abs(a), std::abs(b)); }
  double length() const { return b - a; }

  static Interval make(double a, double b, double T) {
    Interval iv = checked(a, b, T);
    if (!(iv.radius() < T))
      throw std::invalid_argument("Interval: [a,b] must lie strictly inside (-T,T)");
    return iv;
  }

  /// Ablation variant that lets the domain touch the extension boundary
  /// (all centers inside [a,b]); the convergence guarantees do not apply.
  static Interval make_touching(double a, double b, double T) {
    Interval iv = checked(a, b, T);
    if (!(iv.radius() <= T))
      throw std::invalid_argument("Interval: [a,b] must lie inside [-T,T]");
    return iv;
  }

 private:
  static Interval checked(double a, double b, double T) {
    if (!(a < b)) throw std::invalid_argument("Interval: requires a < b");
    if (!(T > 0.0)) throw std::invalid_argument("Interval: requires T > 0");
    return Interval{a, b, T};
  }
};

enum class NodeRole { Center, InteriorSample, BoundarySample };

/// A typed point collection together with its generation metadata.
struct NodeSet {
  std::vector<Point> points;
  NodeRole role = NodeRole::Center;
  int dim = 1;
  double spacing = 0.0;  // lattice / grid step when the generator has one

  std::size_t count() const { return points.size(); }
};

/// 2N+1 equispaced centers xi_n = n*T/N, n = -N..N, covering [-T,T].
/// Exactly symmetric about the origin and with exact endpoints.
inline NodeSet centers_1d(int N, double T) {
  if (N < 1) throw std::invalid_argument("centers_1d: N must be >= 1");
  if (!(T > 0.0)) throw std::invalid_argument("centers_1d: T must be positive");
  NodeSet out;
  out.role = NodeRole::Center;
  out.dim = 1;
  out.spacing = T / N;
  out.points.reserve(static_cast<std::size_t>(2 * N + 1));
  for (int n = -N; n <= N; ++n) {
    const double x = (n == -N) ? -T : (n == N) ? T : n * T / N;
    out.points.push_back({x, 0.0});
  }
  return out;
}

/// M equispaced sample points spanning [a,b], endpoints included.
inline NodeSet samples_1d(int M, const Interval& iv) {
  if (M < 2) throw std::invalid_argument("samples_1d: M must be >= 2");
  NodeSet out;
  out.role = NodeRole::InteriorSample;
  out.dim = 1;
  out.spacing = iv.length() / (M - 1);
  out.points.reserve(static_cast<std::size_t>(M));
  for (int m = 0; m < M; ++m) {
    const double x = (m == 0) ? iv.a : (m == M - 1) ? iv.b : iv.a + m * iv.length() / (M - 1);
    out.points.push_back({x, 0.0});
  }
  return out;
}

/// Sample count for oversampling ratio gamma against 2N+1 centers (the
/// one-dimensional convention): ceil(gamma * (2N+1)).
inline int oversample_count(int N, double gamma) {
  if (N < 1) throw std::invalid_argument("oversample_count: N must be >= 1");
  if (!(gamma >= 1.0)) throw std::invalid_argument("oversample_count: gamma must be >= 1");
  return static_cast<int>(std::ceil(gamma * (2.0 * N + 1.0)));
}

/// Sample count against an arbitrary number of basis functions (2D use).
inline int oversample_count_total(int n_basis, double gamma) {
  if (n_basis < 1) throw std::invalid_argument("oversample_count_total: n_basis must be >= 1");
  if (!(gamma >= 1.0)) throw std::invalid_argument("oversample_count_total: gamma must be >= 1");
  return static_cast<int>(std::ceil(gamma * n_basis));
}

/// Closed curve theta -> (x(theta), y(theta)) given by finite Fourier series.
/// Coefficient k of x_cos multiplies cos(k*theta) (k = 0 is the constant
/// term); sin series start contributing at k = 1.
struct FourierCurve {
  std::vector<double> x_cos, x_sin, y_cos, y_sin;

  Point at(double theta) const {
    Point p;
    accumulate(x_cos, x_sin, theta, p.x);
    accumulate(y_cos, y_sin, theta, p.y);
    return p;
  }

  /// Enclosed area via Green's theorem; closed form for Fourier series:
  /// |pi * sum_k k (a_k d_k - b_k c_k)| with x = sum a_k cos + b_k sin,
  /// y = sum c_k cos + d_k sin.
  double area() const {
    const std::size_t kmax = std::max({x_cos.size(), x_sin.size(), y_cos.size(), y_sin.size()});
    double s = 0.0;
    for (std::size_t k = 1; k < kmax; ++k)
      s += static_cast<double>(k) * (coef(x_cos, k) * coef(y_sin, k) - coef(x_sin, k) * coef(y_cos, k));
    return std::abs(pi * s);
  }

 private:
  static double coef(const std::vector<double>& v, std::size_t k) {
    return k < v.size() ? v[k] : 0.0;
  }
  static void accumulate(const std::vector<double>& cosc, const std::vector<double>& sinc,
                         double theta, double& out) {
    out = 0.0;
    for (std::size_t k = 0; k < cosc.size(); ++k) out += cosc[k] * std::cos(k * theta);
    for (std::size_t k = 1; k < sinc.size(); ++k) out += sinc[k] * std::sin(k * theta);
  }
};

/// A planar domain strictly inside its bounding box [-T1,T1] x [-T2,T2].
struct Domain2D {
  enum class Kind { Box, Disk, Parametric };

  Kind kind = Kind::Box;
  double half_w1 = 0.0, half_w2 = 0.0;  // Box: Omega = [-hw1,hw1] x [-hw2,hw2]
  Point disk_center{};
  double disk_radius = 0.0;
  FourierCurve curve;
  double box_t1 = 0.0, box_t2 = 0.0;  // bounding box half-widths

  static Domain2D box(double hw1, double hw2, double t1, double t2) {
    if (!(hw1 > 0.0 && hw2 > 0.0)) throw std::invalid_argument("Domain2D::box: half-widths must be positive");
    Domain2D d;
    d.kind = Kind::Box;
    d.half_w1 = hw1;
    d.half_w2 = hw2;
    d.set_bounding_box(t1, t2);
    if (!(hw1 < t1 && hw2 < t2))
      throw std::invalid_argument("Domain2D::box: domain must be strictly inside the bounding box");
    return d;
  }

  static Domain2D disk(Point center, double radius, double t1, double t2) {
    if (!(radius > 0.0)) throw std::invalid_argument("Domain2D::disk: radius must be positive");
    Domain2D d;
    d.kind = Kind::Disk;
    d.disk_center = center;
    d.disk_radius = radius;
    d.set_bounding_box(t1, t2);
    if (!(std::abs(center.x) + radius < t1 && std::abs(center.y) + radius < t2))
      throw std::invalid_argument("Domain2D::disk: disk must be strictly inside the bounding box");
    return d;
  }

  static Domain2D parametric(FourierCurve curve, double t1, double t2) {
    Domain2D d;
    d.kind = Kind::Parametric;
    d.curve = std::move(curve);
    d.set_bounding_box(t1, t2);
    const Point p0 = d.curve.at(0.0);
    const Point p1 = d.curve.at(2.0 * pi);
    if (std::abs(p0.x - p1.x) > 1e-12 || std::abs(p0.y - p1.y) > 1e-12)
      throw std::invalid_argument("Domain2D::parametric: boundary curve is not closed");
    for (int i = 0; i < 4096; ++i) {
      const Point p = d.curve.at(2.0 * pi * i / 4096);
      if (!(std::abs(p.x) < t1 && std::abs(p.y) < t2))
        throw std::invalid_argument("Domain2D::parametric: curve must stay strictly inside the bounding box");
    }
    return d;
  }

  double area() const {
    switch (kind) {
      case Kind::Box: return 4.0 * half_w1 * half_w2;
      case Kind::Disk: return pi * disk_radius * disk_radius;
      case Kind::Parametric: return curve.area();
    }
    throw std::logic_error("Domain2D::area: bad kind");
  }

  /// Closed-set membership.  Parametric domains use an even-odd crossing test
  /// against a dense polyline; prefer InsideTester for many queries.
  bool contains(const Point& p) const;

  void set_bounding_box(double t1, double t2) {
    if (!(t1 > 0.0 && t2 > 0.0))
      throw std::invalid_argument("Domain2D: bounding box half-widths must be positive");
    box_t1 = t1;
    box_t2 = t2;
  }
};

/// Point-in-domain queries with the parametric polyline built once.
class InsideTester {
 public:
  explicit InsideTester(const Domain2D& d) : domain_(d) {
    if (d.kind == Domain2D::Kind::Parametric) {
      poly_.reserve(kSegments + 1);
      for (int i = 0; i <= kSegments; ++i) poly_.push_back(d.curve.at(2.0 * pi * i / kSegments));
    }
  }

  bool operator()(const Point& p) const {
    switch (domain_.kind) {
      case Domain2D::Kind::Box:
        return std::abs(p.x) <= domain_.half_w1 && std::abs(p.y) <= domain_.half_w2;
      case Domain2D::Kind::Disk: {
        const double dx = p.x - domain_.disk_center.x;
        const double dy = p.y - domain_.disk_center.y;
        return dx * dx + dy * dy <= domain_.disk_radius * domain_.disk_radius;
      }
      case Domain2D::Kind::Parametric:
        return crossings_odd(p);
    }
    return false;
  }

 private:
  static constexpr int kSegments = 2048;

  bool crossings_odd(const Point& p) const {
    bool inside = false;
    for (std::size_t i = 0; i + 1 < poly_.size(); ++i) {
      const Point& a = poly_[i];
      const Point& b = poly_[i + 1];
      if ((a.y > p.y) != (b.y > p.y)) {
        const double x_cross = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
        if (x_cross > p.x) inside = !inside;
      }
    }
    return inside;
  }

  const Domain2D& domain_;
  std::vector<Point> poly_;
};

inline bool Domain2D::contains(const Point& p) const { return InsideTester(*this)(p); }

namespace detail {

/// Raw triangular lattice over the closed box [-t1,t1] x [-t2,t2]: rows at
/// vertical spacing h*sqrt(3)/2, odd rows shifted by h/2.
inline std::vector<Point> hex_lattice(double t1, double t2, double h) {
  const double v = h * std::sqrt(3.0) / 2.0;
  const double tol = 1e-12 * std::max(t1, t2);
  std::vector<Point> pts;
  const int jmax = static_cast<int>(std::floor((t2 + tol) / v));
  for (int j = -jmax; j <= jmax; ++j) {
    const double y = j * v;
    const double shift = (j % 2 == 0) ? 0.0 : h / 2.0;
    const int imin = static_cast<int>(std::ceil((-t1 - tol - shift) / h));
    const int imax = static_cast<int>(std::floor((t1 + tol - shift) / h));
    for (int i = imin; i <= imax; ++i) pts.push_back({i * h + shift, y});
  }
  return pts;
}

inline std::size_t hex_count(double t1, double t2, double h, const InsideTester* clip) {
  const std::vector<Point> pts = hex_lattice(t1, t2, h);
  if (!clip) return pts.size();
  std::size_t n = 0;
  for (const Point& p : pts) n += (*clip)(p) ? 1 : 0;
  return n;
}

}  // namespace detail

/// Hexagonal (triangular-lattice) node set over the box [-t1,t1] x [-t2,t2].
/// The spacing is calibrated so the returned count is as close as the lattice
/// allows to target_count; with clip_to given, only points inside the clip
/// domain are kept and the calibration targets the clipped count.
inline NodeSet hex_grid(double t1, double t2, int target_count,
                        const std::optional<Domain2D>& clip_to = std::nullopt,
                        NodeRole role = NodeRole::Center) {
  if (!(t1 > 0.0 && t2 > 0.0)) throw std::invalid_argument("hex_grid: box is degenerate");
  if (target_count < 1) throw std::invalid_argument("hex_grid: target_count must be >= 1");

  std::optional<InsideTester> tester;
  if (clip_to) tester.emplace(*clip_to);
  const InsideTester* clip = tester ? &*tester : nullptr;

  // Density estimate: one point per hex cell of area sqrt(3)/2 * h^2 inside
  // the region that is actually kept.
  const double region_area = clip_to ? clip_to->area() : 4.0 * t1 * t2;
  double h = std::sqrt(2.0 * region_area / (std::sqrt(3.0) * target_count));

  // A few multiplicative corrections followed by a local scan; the count is
  // a (noisy) decreasing function of h, so this lands on the best lattice.
  for (int pass = 0; pass < 3; ++pass) {
    const std::size_t n = detail::hex_count(t1, t2, h, clip);
    if (n == 0) {
      h *= 0.5;
      continue;
    }
    if (n == static_cast<std::size_t>(target_count)) break;
    h *= std::sqrt(static_cast<double>(n) / target_count);
  }
  double best_h = h;
  auto gap = [&](double hh) {
    const auto n = static_cast<long long>(detail::hex_count(t1, t2, hh, clip));
    return std::llabs(n - target_count);
  };
  long long best_gap = gap(h);
  for (int s = -10; s <= 10; ++s) {
    if (s == 0) continue;
    const double hh = h * (1.0 + 0.01 * s);
    const long long g = gap(hh);
    if (g < best_gap || (g == best_gap && hh > best_h)) {
      best_gap = g;
      best_h = hh;
    }
  }

  NodeSet out;
  out.dim = 2;
  out.role = role;
  out.spacing = best_h;
  for (const Point& p : detail::hex_lattice(t1, t2, best_h))
    if (!clip || (*clip)(p)) out.points.push_back(p);
  return out;
}

/// Convenience overload: lattice over the domain's bounding box, clipped to
/// the domain itself (the usual way sample nodes are generated).
inline NodeSet hex_grid(const Domain2D& domain, int target_count) {
  return hex_grid(domain.box_t1, domain.box_t2, target_count, domain, NodeRole::InteriorSample);
}

/// Points at equispaced parameter values on the domain boundary.
inline NodeSet boundary_points(const Domain2D& domain, int count) {
  if (count < 3) throw std::invalid_argument("boundary_points: count must be >= 3");
  if (domain.kind == Domain2D::Kind::Box)
    throw not_implemented_error("boundary_points: box domains are not supported");
  NodeSet out;
  out.dim = 2;
  out.role = NodeRole::BoundarySample;
  out.points.reserve(static_cast<std::size_t>(count));
  for (int m = 0; m < count; ++m) {
    const double theta = 2.0 * pi * m / count;
    if (domain.kind == Domain2D::Kind::Disk) {
      out.points.push_back({domain.disk_center.x + domain.disk_radius * std::cos(theta),
                            domain.disk_center.y + domain.disk_radius * std::sin(theta)});
    } else {
      out.points.push_back(domain.curve.at(theta));
    }
  }
  if (domain.kind == Domain2D::Kind::Disk)
    out.spacing = 2.0 * pi * domain.disk_radius / count;
  return out;
}

}  // namespace lsrbf
