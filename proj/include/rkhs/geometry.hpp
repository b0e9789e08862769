#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "rkhs/point.hpp"

namespace rkhs {

// ---------------------------------------------------------------------------
// Spaces

/// Tensor-grid midpoint rule restricted to balls by their indicator.
struct QuadratureRule {
  double h = 0.05;
  /// Balls reaching beyond this distance from the origin are censored.
  std::optional<double> extent;
};

/// R^d with Lebesgue measure.
struct EuclideanLebesgue {
  int dim = 1;
};

/// C^n (stored as R^2n) with mu = 2^-n Lebesgue, the measure induced by the
/// Gaussian weight |z|^2 / 2.
struct FockGaussian {
  int n = 1;
};

/// Time-frequency plane R^2 with Lebesgue measure.
struct PhasePlane {};

/// R with d(x, y) = log(1 + |x - y|) and Lebesgue measure.
struct LogMetricLine {};

/// Upper half-plane, hyperbolic metric, mu = Im(z)^-2 dA / pi.
struct HyperbolicUpperHalfPlane {};

/// Z^d, counting measure, word metric of the unit box (the sup-norm).
struct IntegerWordMetric {
  int dim = 1;
};

using SpaceVariant = std::variant<EuclideanLebesgue, FockGaussian, PhasePlane, LogMetricLine,
                                  HyperbolicUpperHalfPlane, IntegerWordMetric>;

enum class Growth { polynomial, exponential };

class Space {
 public:
  explicit Space(SpaceVariant v);
  Space(SpaceVariant v, QuadratureRule rule);

  const SpaceVariant& variant() const noexcept { return v_; }
  const QuadratureRule& quadrature() const noexcept { return rule_; }
  Space with_quadrature(QuadratureRule rule) const { return Space(v_, rule); }
  Space with_step(double h) const;

  std::size_t point_dim() const noexcept;
  Growth growth() const noexcept;
  bool is_discrete() const noexcept { return std::holds_alternative<IntegerWordMetric>(v_); }
  std::string name() const;

  /// Throws InputError unless p is a valid point of this space.
  void validate(const Point& p) const;

  /// Default quadrature step for a variant.
  static double default_step(const SpaceVariant& v);

 private:
  SpaceVariant v_;
  QuadratureRule rule_;
};

double distance(const Space& space, const Point& x, const Point& y);

/// mu(B_r(x)) for the open ball, in closed form.
double ball_measure(const Space& space, const Point& x, double r);

/// d/dt mu(B_t(x)) for the continuous spaces.
double shell_density(const Space& space, const Point& x, double t);

/// A point at distance t from x; u supplies uniform draws in [0, 1) for the
/// direction.
Point point_at_distance(const Space& space, const Point& x, double t, std::span<const double> u);

/// Number of uniform draws `point_at_distance` consumes.
std::size_t direction_draws(const Space& space);

// ---------------------------------------------------------------------------
// Quadrature over balls

struct QuadNode {
  Point point;
  double weight;
  double dist;  // distance to the ball center
};

/// Midpoint nodes of the space's rule inside B_r(center). Nodes are anchored
/// at the center, so the node set for a smaller radius is a subset.
std::vector<QuadNode> ball_quadrature(const Space& space, const Point& center, double r);

double ball_measure_quadrature(const Space& space, const Point& center, double r);

/// tol_quad = 5 h V'(r): the measure of a boundary layer five steps thick.
double quadrature_tolerance(const Space& space, const Point& center, double r);

/// False when the rule's extent does not contain B_r(center).
bool quadrature_covers(const Space& space, const Point& center, double r);

// ---------------------------------------------------------------------------
// Point sets

/// Closed ball inside which a point set is complete.
struct Window {
  Point center;
  double radius = 0.0;
};

struct Provenance {
  std::string generator;
  std::uint64_t seed = 0;
};

class PointSet {
 public:
  /// Validates points against the space, rejects exact duplicates and points
  /// outside the window.
  PointSet(const Space& space, std::vector<Point> points, Window window, Provenance provenance);

  const std::vector<Point>& points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }
  bool empty() const noexcept { return points_.empty(); }
  const Window& window() const noexcept { return window_; }
  const Provenance& provenance() const noexcept { return provenance_; }

  /// Points with d(p, center) <= radius, as a set complete on that ball.
  PointSet restrict_to(const Space& space, const Point& center, double radius) const;

 private:
  std::vector<Point> points_;
  Window window_;
  Provenance provenance_;
};

/// Parses one point per line, whitespace-separated coordinates, '#' comments.
std::vector<Point> parse_points(std::istream& in);
PointSet load_pointset(const Space& space, const std::string& path, Window window);

/// True when B_r(x) lies inside the window (d(x, c) + r <= R).
bool ball_within_window(const PointSet& lambda, const Space& space, const Point& x, double r);

struct BallCount {
  std::size_t count = 0;
  bool censored = false;
};

/// #(Lambda ∩ B_r(x)) with strict d < r; censored if the ball leaves the window.
BallCount count_in_ball(const PointSet& lambda, const Space& space, const Point& x, double r);

/// Grid of the given spacing inside the window, together with Lambda itself.
std::vector<Point> candidate_centers(const PointSet& lambda, const Space& space,
                                     double spacing = 1.0, bool include_points = true);

// ---------------------------------------------------------------------------
// Densities and separation

struct DensityRow {
  double radius = 0.0;
  double inf_ratio = 0.0;
  double sup_ratio = 0.0;
  std::size_t centers_used = 0;
  std::size_t centers_censored = 0;
};

struct DensityReport {
  std::vector<DensityRow> rows;
  double d_minus = 0.0;  // at the largest radius
  double d_plus = 0.0;
  double trend_minus = 0.0;  // least-squares slope of the ratio against 1/r
  double trend_plus = 0.0;
};

/// Per radius, inf/sup over uncensored centers of #(Lambda ∩ B_r(x)) / mu(B_r(x)).
DensityReport beurling_density(const PointSet& lambda, const Space& space,
                               std::span<const Point> centers, std::span<const double> radii);

struct SeparationReport {
  double rho = 0.0;
  double c_rho = 0.0;
  bool pass = false;
  std::size_t centers_used = 0;
};

SeparationReport relative_separation(const PointSet& lambda, const Space& space, double rho,
                                     std::span<const Point> centers);

// ---------------------------------------------------------------------------
// Geometric axioms

struct NdbResult {
  double inf_measure = 0.0;
  bool pass = false;
};

NdbResult check_ndb(const Space& space, std::span<const Point> centers, double r,
                    double floor = 1e-9);

struct CurvePoint {
  double r;
  double value;
};

struct WadResult {
  std::vector<CurvePoint> ratio_curve;
  double tol = 0.05;
  double horizon = 0.0;
  bool decreasing = false;
  bool pass = false;
};

/// Horizon the largest radius must reach: 100 for polynomial growth, 20 for
/// exponential growth.
double default_wad_horizon(const Space& space);

WadResult check_wad(const Space& space, std::span<const Point> centers,
                    std::span<const double> radii, double tol = 0.05,
                    std::optional<double> horizon = std::nullopt);

struct DoublingResult {
  std::vector<CurvePoint> constants;
  bool bounded = false;
  bool pass = false;
};

DoublingResult check_locally_doubling(const Space& space, std::span<const Point> centers,
                                      std::span<const double> radii);

struct ShellCount {
  std::size_t lhs = 0;
  double rhs = 0.0;
  bool holds = false;
  bool censored = false;
};

/// #(Lambda ∩ (B_{R+r} \ B_R)) against C mu(B_{R+r+rho} \ B_{R-rho}).
ShellCount shell_count_bound(const PointSet& lambda, const Space& space, const Point& x,
                             double big_r, double r, double rho, double c_rho);

struct AnnularResult {
  std::vector<CurvePoint> growth_ratio;  // mu(B_{r+rho'}) / mu(B_r)
  std::vector<CurvePoint> shell_ratio;   // mu(B_{r+rho'} \ B_{r-rho'}) / mu(B_r)
  bool monotone = false;
  bool pass = false;
};

AnnularResult annular_variants(const Space& space, std::span<const Point> centers,
                               std::span<const double> radii, double rho_prime,
                               double tol = 0.05);

}  // namespace rkhs
