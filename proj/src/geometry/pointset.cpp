#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "rkhs/errors.hpp"
#include "rkhs/geometry.hpp"

namespace rkhs {

namespace {

constexpr double kWindowSlack = 1e-9;

}  // namespace

PointSet::PointSet(const Space& space, std::vector<Point> points, Window window, Provenance provenance)
    : points_(std::move(points)), window_(std::move(window)), provenance_(std::move(provenance)) {
  space.validate(window_.center);
  if (!(window_.radius > 0.0) || !std::isfinite(window_.radius))
    throw InputError("window radius must be positive and finite");
  for (const auto& p : points_) {
    space.validate(p);
    if (distance(space, p, window_.center) > window_.radius * (1.0 + kWindowSlack))
      throw InputError("point " + p.to_string() + " lies outside the window");
  }
  std::vector<Point> sorted = points_;
  std::sort(sorted.begin(), sorted.end());
  const auto dup = std::adjacent_find(sorted.begin(), sorted.end());
  if (dup != sorted.end()) throw InputError("duplicate point " + dup->to_string());
}

PointSet PointSet::restrict_to(const Space& space, const Point& center, double radius) const {
  std::vector<Point> kept;
  for (const auto& p : points_)
    if (distance(space, p, center) <= radius) kept.push_back(p);
  return PointSet(space, std::move(kept), Window{center, radius}, provenance_);
}

std::vector<Point> parse_points(std::istream& in) {
  std::vector<Point> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ss(line);
    std::vector<double> c;
    std::string tok;
    while (ss >> tok) {
      try {
        std::size_t used = 0;
        c.push_back(std::stod(tok, &used));
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw InputError("line " + std::to_string(lineno) + ": bad coordinate '" + tok + "'");
      }
    }
    if (c.empty()) continue;
    if (!out.empty() && c.size() != out.front().dim())
      throw InputError("line " + std::to_string(lineno) + ": inconsistent dimension");
    out.emplace_back(std::span<const double>(c));
  }
  return out;
}

PointSet load_pointset(const Space& space, const std::string& path, Window window) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open point file " + path);
  return PointSet(space, parse_points(in), std::move(window), Provenance{"file:" + path, 0});
}

bool ball_within_window(const PointSet& lambda, const Space& space, const Point& x, double r) {
  const auto& w = lambda.window();
  return distance(space, x, w.center) + r <= w.radius * (1.0 + kWindowSlack);
}

BallCount count_in_ball(const PointSet& lambda, const Space& space, const Point& x, double r) {
  if (!(r > 0.0)) throw InputError("radius must be positive");
  BallCount out;
  out.censored = !ball_within_window(lambda, space, x, r);
  for (const auto& p : lambda.points())
    if (distance(space, x, p) < r) ++out.count;
  return out;
}

std::vector<Point> candidate_centers(const PointSet& lambda, const Space& space, double spacing,
                                     bool include_points) {
  if (!(spacing > 0.0)) throw InputError("center spacing must be positive");
  const auto& w = lambda.window();
  const auto& v = space.variant();
  std::vector<Point> out;

  if (std::holds_alternative<HyperbolicUpperHalfPlane>(v)) {
    // Rows one spacing apart in log y; x-steps of spacing * y.
    const long rows = static_cast<long>(std::floor(w.radius / spacing));
    for (long j = -rows; j <= rows; ++j) {
      const double y = w.center[1] * std::exp(spacing * static_cast<double>(j));
      const long cols = static_cast<long>(std::ceil(w.center[1] * std::sinh(w.radius) / (spacing * y))) + 1;
      for (long i = -cols; i <= cols; ++i) {
        Point p{w.center[0] + spacing * y * static_cast<double>(i), y};
        if (distance(space, p, w.center) <= w.radius) out.push_back(p);
      }
    }
  } else {
    double step = spacing;
    double reach = w.radius;
    if (std::holds_alternative<IntegerWordMetric>(v)) step = std::max(1.0, std::round(spacing));
    if (std::holds_alternative<LogMetricLine>(v)) reach = std::expm1(w.radius);
    const std::size_t m = space.point_dim();
    const long k = static_cast<long>(std::floor(reach / step));
    std::array<long, Point::kMaxDim> idx{};
    idx.fill(-k);
    while (true) {
      Point p = w.center;
      for (std::size_t i = 0; i < m; ++i) p[i] += step * static_cast<double>(idx[i]);
      if (distance(space, p, w.center) <= w.radius) out.push_back(p);
      std::size_t q = 0;
      while (q < m && ++idx[q] > k) idx[q++] = -k;
      if (q == m) break;
    }
  }
  if (include_points) out.insert(out.end(), lambda.points().begin(), lambda.points().end());
  return out;
}

}  // namespace rkhs
