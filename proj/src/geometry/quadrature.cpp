#include <cmath>
#include <numbers>

#include "rkhs/errors.hpp"
#include "rkhs/geometry.hpp"

namespace rkhs {

namespace {

Point origin_of(const Space& space) {
  Point o = Point::zeros(space.point_dim());
  if (std::holds_alternative<HyperbolicUpperHalfPlane>(space.variant())) o[1] = 1.0;
  return o;
}

// Midpoint grid in R^m anchored at the center, restricted to Euclidean
// radius `reach`; `keep` decides membership.
template <class Keep>
void tensor_grid(const Point& c, double h, double reach, double weight, std::vector<QuadNode>& out, Keep&& keep) {
  const std::size_t m = c.dim();
  const long half = static_cast<long>(std::ceil(reach / h));
  std::array<long, Point::kMaxDim> idx{};
  idx.fill(-half);
  while (true) {
    Point p = c;
    for (std::size_t i = 0; i < m; ++i) p[i] += h * (static_cast<double>(idx[i]) + 0.5);
    if (auto d = keep(p)) out.push_back({p, weight, *d});
    std::size_t k = 0;
    while (k < m && ++idx[k] >= half) idx[k++] = -half;
    if (k == m) break;
  }
}

}  // namespace

std::vector<QuadNode> ball_quadrature(const Space& space, const Point& center, double r) {
  space.validate(center);
  if (!(r > 0.0)) throw InputError("radius must be positive");
  const double h = space.quadrature().h;
  std::vector<QuadNode> out;
  const auto& v = space.variant();

  if (std::holds_alternative<HyperbolicUpperHalfPlane>(v)) {
    // Rows in t = log y with step h; in each row x-spacing h*y anchored at the
    // center, so every node carries weight h^2 / pi.
    const double x0 = center[0], y0 = center[1];
    const double w = h * h / std::numbers::pi;
    const double yc = y0 * std::cosh(r), rad = y0 * std::sinh(r);
    const long rows = static_cast<long>(std::ceil(r / h));
    for (long j = -rows; j < rows; ++j) {
      const double y = y0 * std::exp(h * (static_cast<double>(j) + 0.5));
      const double dy = y - yc;
      const double half2 = rad * rad - dy * dy;
      if (half2 <= 0.0) continue;
      const double dx = h * y;
      const long cols = static_cast<long>(std::ceil(std::sqrt(half2) / dx)) + 1;
      for (long i = -cols; i < cols; ++i) {
        Point p{x0 + dx * (static_cast<double>(i) + 0.5), y};
        const double d = distance(space, center, p);
        if (d < r) out.push_back({p, w, d});
      }
    }
    return out;
  }

  if (std::holds_alternative<IntegerWordMetric>(v)) {
    const long k = static_cast<long>(std::ceil(r));
    const std::size_t m = center.dim();
    std::array<long, Point::kMaxDim> idx{};
    idx.fill(-k);
    while (true) {
      Point p = center;
      for (std::size_t i = 0; i < m; ++i) p[i] += static_cast<double>(idx[i]);
      const double d = distance(space, center, p);
      if (d < r) out.push_back({p, 1.0, d});
      std::size_t q = 0;
      while (q < m && ++idx[q] > k) idx[q++] = -k;
      if (q == m) break;
    }
    return out;
  }

  if (std::holds_alternative<LogMetricLine>(v)) {
    const double reach = std::expm1(r);
    tensor_grid(center, h, reach, h, out, [&](const Point& p) -> std::optional<double> {
      const double d = distance(space, center, p);
      if (d < r) return d;
      return std::nullopt;
    });
    return out;
  }

  double weight = std::pow(h, static_cast<double>(center.dim()));
  if (const auto* f = std::get_if<FockGaussian>(&v)) weight *= std::ldexp(1.0, -f->n);
  tensor_grid(center, h, r, weight, out, [&](const Point& p) -> std::optional<double> {
    const double d = distance(space, center, p);
    if (d < r) return d;
    return std::nullopt;
  });
  return out;
}

double ball_measure_quadrature(const Space& space, const Point& center, double r) {
  double s = 0.0;
  for (const auto& n : ball_quadrature(space, center, r)) s += n.weight;
  return s;
}

double quadrature_tolerance(const Space& space, const Point& center, double r) {
  const double h = space.quadrature().h;
  const auto& v = space.variant();
  if (std::holds_alternative<IntegerWordMetric>(v)) return 0.0;
  // One coordinate step at the boundary moves the log-metric distance by h e^{-r}.
  if (std::holds_alternative<LogMetricLine>(v)) return 5.0 * h * 2.0;
  return 5.0 * h * shell_density(space, center, r);
}

bool quadrature_covers(const Space& space, const Point& center, double r) {
  const auto& ext = space.quadrature().extent;
  if (!ext) return true;
  return distance(space, origin_of(space), center) + r <= *ext;
}

}  // namespace rkhs
