#include <algorithm>
#include <cmath>

#include "rkhs/errors.hpp"
#include "rkhs/harness.hpp"
#include "rkhs/random.hpp"

namespace rkhs {

namespace {

constexpr double kEdge = 1e-12;

std::vector<double> broadcast_steps(const PointSetSpec& spec, std::size_t dim) {
  std::vector<double> s = spec.steps;
  if (s.size() == 1) s.assign(dim, s.front());
  if (s.size() != dim)
    throw InputError("pointset: " + std::to_string(spec.steps.size()) + " steps for a " + std::to_string(dim) +
                     "-dimensional space");
  for (double v : s)
    if (!(v > 0.0) || !std::isfinite(v)) throw InputError("pointset: steps must be positive");
  return s;
}

// Calls emit(k-index tuple point) for center + k * step over the box |k_i| <= K_i.
template <class Emit>
void box_lattice(const Point& center, const std::vector<double>& steps, double reach, Emit&& emit) {
  const std::size_t m = steps.size();
  std::vector<long> kmax(m), k(m);
  for (std::size_t i = 0; i < m; ++i) {
    kmax[i] = static_cast<long>(std::floor(reach / steps[i] + 1e-9));
    k[i] = -kmax[i];
  }
  while (true) {
    Point p = center;
    for (std::size_t i = 0; i < m; ++i) p[i] = center[i] + static_cast<double>(k[i]) * steps[i];
    emit(p);
    std::size_t i = 0;
    while (i < m && k[i] == kmax[i]) {
      k[i] = -kmax[i];
      ++i;
    }
    if (i == m) break;
    ++k[i];
  }
}

double coordinate_reach(const Space& space, double window) {
  if (std::holds_alternative<LogMetricLine>(space.variant())) return std::expm1(window);
  return window;
}

std::vector<Point> hyperbolic_lattice(const Space& space, const Point& c, const std::vector<double>& steps,
                                      double window) {
  if (steps.size() != 2) throw InputError("pointset: hyperbolic lattice needs steps [a, s]");
  const double a = steps[0], s = steps[1];
  const long mmax = static_cast<long>(std::floor(window / s + 1e-9));
  std::vector<Point> out;
  for (long m = -mmax; m <= mmax; ++m) {
    const double scale = std::exp(static_cast<double>(m) * s);
    const double y = c[1] * scale;
    const double half = 2.0 * std::sqrt(y * c[1]) * std::sinh(0.5 * window);
    const long kmax = static_cast<long>(std::floor(half / (a * y) + 1e-9));
    for (long k = -kmax; k <= kmax; ++k) {
      const Point p{c[0] + a * static_cast<double>(k) * y, y};
      if (distance(space, c, p) <= window * (1.0 + kEdge)) out.push_back(p);
    }
  }
  return out;
}

}  // namespace

Point window_center(const PointSetSpec& spec, const Space& space) {
  if (spec.center) {
    space.validate(*spec.center);
    return *spec.center;
  }
  if (std::holds_alternative<HyperbolicUpperHalfPlane>(space.variant())) return Point{0.0, 1.0};
  return Point::zeros(space.point_dim());
}

PointSet generate_pointset(const PointSetSpec& spec, const Space& space, std::uint64_t seed) {
  if (!(spec.window > 0.0)) throw InputError("pointset: window must be positive");
  const Point center = window_center(spec, space);
  const Window window{center, spec.window};

  if (spec.type == "file") return load_pointset(space, spec.path, window);

  const bool hyperbolic = std::holds_alternative<HyperbolicUpperHalfPlane>(space.variant());
  if (spec.type == "lattice" && hyperbolic) {
    return PointSet(space, hyperbolic_lattice(space, center, spec.steps, spec.window), window, {"lattice", 0});
  }
  if (hyperbolic) throw InputError("pointset: " + spec.type + " is not available on the half-plane");

  const std::vector<double> steps = broadcast_steps(spec, space.point_dim());
  if (space.is_discrete())
    for (double s : steps)
      if (s != std::floor(s)) throw InputError("pointset: word-metric lattice steps must be integers");
  const double reach = coordinate_reach(space, spec.window);

  if (spec.type == "lattice") {
    std::vector<Point> pts;
    box_lattice(center, steps, reach, [&](const Point& p) {
      if (distance(space, center, p) <= spec.window * (1.0 + kEdge)) pts.push_back(p);
    });
    return PointSet(space, std::move(pts), window, {"lattice", 0});
  }

  if (spec.type == "jittered_lattice") {
    if (space.is_discrete()) throw InputError("pointset: jitter is not available on the word metric");
    const double min_step = *std::min_element(steps.begin(), steps.end());
    if (!(spec.jitter >= 0.0) || !(spec.jitter < 0.5 * min_step))
      throw InputError("pointset: jitter " + std::to_string(spec.jitter) +
                       " must be below half the smallest step (separation violation)");
    const std::uint64_t s = spec.seed.value_or(seed);
    std::vector<Point> pts;
    std::uint64_t index = 0;
    box_lattice(center, steps, reach, [&](const Point& p) {
      SplitMix64 rng(s, index++);
      Point q = p;
      for (std::size_t i = 0; i < q.dim(); ++i) q[i] += rng.uniform(-spec.jitter, spec.jitter);
      if (distance(space, center, q) <= spec.window) pts.push_back(q);
    });
    return PointSet(space, std::move(pts), window, {"jittered_lattice", s});
  }

  throw InputError("pointset: unknown type '" + spec.type + "'");
}

}  // namespace rkhs
