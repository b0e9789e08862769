#include <algorithm>
#include <cmath>
#include <limits>

#include "rkhs/errors.hpp"
#include "rkhs/geometry.hpp"

namespace rkhs {

namespace {

void require_radii(std::span<const double> radii) {
  if (radii.empty()) throw InputError("radii must be nonempty");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0) || !std::isfinite(radii[i])) throw InputError("radii must be positive");
    if (i && !(radii[i] > radii[i - 1])) throw InputError("radii must be strictly increasing");
  }
}

void require_centers(std::span<const Point> centers) {
  if (centers.empty()) throw InputError("at least one center is required");
}

template <class F>
double sup_over(std::span<const Point> centers, F&& f) {
  double s = -std::numeric_limits<double>::infinity();
  for (const auto& x : centers) s = std::max(s, f(x));
  return s;
}

bool nonincreasing_tail(const std::vector<CurvePoint>& c) {
  for (std::size_t i = c.size() / 2 + 1; i < c.size(); ++i)
    if (c[i].value > c[i - 1].value * (1.0 + 1e-12)) return false;
  return true;
}

double shell_measure(const Space& space, const Point& x, double inner, double outer) {
  const double out = ball_measure(space, x, outer);
  return inner > 0.0 ? out - ball_measure(space, x, inner) : out;
}

}  // namespace

NdbResult check_ndb(const Space& space, std::span<const Point> centers, double r, double floor) {
  require_centers(centers);
  if (!(r > 0.0)) throw InputError("radius must be positive");
  NdbResult res;
  res.inf_measure = std::numeric_limits<double>::infinity();
  for (const auto& x : centers) res.inf_measure = std::min(res.inf_measure, ball_measure(space, x, r));
  res.pass = res.inf_measure > floor;
  return res;
}

double default_wad_horizon(const Space& space) {
  return space.growth() == Growth::exponential ? 20.0 : 100.0;
}

WadResult check_wad(const Space& space, std::span<const Point> centers, std::span<const double> radii, double tol,
                    std::optional<double> horizon) {
  require_centers(centers);
  require_radii(radii);
  WadResult res;
  res.tol = tol;
  res.horizon = horizon.value_or(default_wad_horizon(space));
  if (radii.back() < res.horizon)
    throw InputError("largest WAD radius " + std::to_string(radii.back()) + " is below the horizon " +
                     std::to_string(res.horizon));
  for (double r : radii) {
    const double v = sup_over(centers, [&](const Point& x) {
      return shell_measure(space, x, r, r + 1.0) / ball_measure(space, x, r);
    });
    res.ratio_curve.push_back({r, v});
  }
  res.decreasing = nonincreasing_tail(res.ratio_curve);
  res.pass = res.ratio_curve.back().value < tol && res.decreasing;
  return res;
}

DoublingResult check_locally_doubling(const Space& space, std::span<const Point> centers,
                                      std::span<const double> radii) {
  require_centers(centers);
  require_radii(radii);
  DoublingResult res;
  for (double r : radii) {
    const double v = sup_over(centers, [&](const Point& x) {
      return ball_measure(space, x, 2.0 * r) / ball_measure(space, x, r);
    });
    res.constants.push_back({r, v});
  }
  double first_half = 0.0;
  bool finite = true;
  for (std::size_t i = 0; i < res.constants.size(); ++i) {
    finite = finite && std::isfinite(res.constants[i].value);
    if (i <= res.constants.size() / 2) first_half = std::max(first_half, res.constants[i].value);
  }
  res.bounded = finite && res.constants.back().value <= 1.05 * first_half;
  res.pass = res.bounded;
  return res;
}

ShellCount shell_count_bound(const PointSet& lambda, const Space& space, const Point& x, double big_r, double r,
                             double rho, double c_rho) {
  if (!(big_r > rho) || !(r > 0.0) || !(rho > 0.0)) throw InputError("shell bound needs R > rho > 0 and r > 0");
  if (!(c_rho >= 0.0)) throw InputError("separation constant must be nonnegative");
  ShellCount res;
  res.censored = !ball_within_window(lambda, space, x, big_r + r);
  for (const auto& p : lambda.points()) {
    const double d = distance(space, x, p);
    if (d >= big_r && d < big_r + r) ++res.lhs;
  }
  res.rhs = c_rho * shell_measure(space, x, big_r - rho, big_r + r + rho);
  res.holds = static_cast<double>(res.lhs) <= res.rhs;
  return res;
}

AnnularResult annular_variants(const Space& space, std::span<const Point> centers, std::span<const double> radii,
                               double rho_prime, double tol) {
  require_centers(centers);
  require_radii(radii);
  if (!(rho_prime > 0.0)) throw InputError("rho' must be positive");
  if (!(radii.front() > rho_prime)) throw InputError("radii must exceed rho'");
  AnnularResult res;
  for (double r : radii) {
    res.growth_ratio.push_back({r, sup_over(centers, [&](const Point& x) {
                                  return ball_measure(space, x, r + rho_prime) / ball_measure(space, x, r);
                                })});
    res.shell_ratio.push_back({r, sup_over(centers, [&](const Point& x) {
                                 return shell_measure(space, x, r - rho_prime, r + rho_prime) /
                                        ball_measure(space, x, r);
                               })});
  }
  res.monotone = nonincreasing_tail(res.growth_ratio) && nonincreasing_tail(res.shell_ratio);
  res.pass = res.monotone && res.growth_ratio.back().value - 1.0 < tol && res.shell_ratio.back().value < tol;
  return res;
}

}  // namespace rkhs
