#include <algorithm>
#include <cmath>
#include <limits>

#include "rkhs/errors.hpp"
#include "rkhs/geometry.hpp"
#include "rkhs/parallel.hpp"

namespace rkhs {

namespace {

// Least-squares slope of y against x.
double slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  if (n < 2) return 0.0;
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxx > 0.0 ? sxy / sxx : 0.0;
}

void require_increasing(std::span<const double> radii) {
  if (radii.empty()) throw InputError("radii must be nonempty");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0) || !std::isfinite(radii[i])) throw InputError("radii must be positive");
    if (i && !(radii[i] > radii[i - 1])) throw InputError("radii must be strictly increasing");
  }
}

}  // namespace

DensityReport beurling_density(const PointSet& lambda, const Space& space, std::span<const Point> centers,
                               std::span<const double> radii) {
  if (centers.empty()) throw InputError("density needs at least one center");
  require_increasing(radii);
  const std::size_t nr = radii.size();

  struct PerCenter {
    std::vector<double> ratio;  // NaN where censored
  };
  std::vector<PerCenter> per(centers.size());
  parallel_for(centers.size(), [&](std::size_t c) {
    const Point& x = centers[c];
    std::vector<double> d;
    d.reserve(lambda.size());
    for (const auto& p : lambda.points()) d.push_back(distance(space, x, p));
    std::sort(d.begin(), d.end());
    auto& out = per[c].ratio;
    out.assign(nr, std::numeric_limits<double>::quiet_NaN());
    for (std::size_t k = 0; k < nr; ++k) {
      if (!ball_within_window(lambda, space, x, radii[k])) continue;
      const auto count = std::lower_bound(d.begin(), d.end(), radii[k]) - d.begin();
      out[k] = static_cast<double>(count) / ball_measure(space, x, radii[k]);
    }
  });

  DensityReport rep;
  for (std::size_t k = 0; k < nr; ++k) {
    DensityRow row;
    row.radius = radii[k];
    row.inf_ratio = std::numeric_limits<double>::infinity();
    row.sup_ratio = 0.0;
    for (const auto& pc : per) {
      const double v = pc.ratio[k];
      if (std::isnan(v)) {
        ++row.centers_censored;
        continue;
      }
      ++row.centers_used;
      row.inf_ratio = std::min(row.inf_ratio, v);
      row.sup_ratio = std::max(row.sup_ratio, v);
    }
    if (row.centers_used == 0)
      throw CensoredError("every center is censored at radius " + std::to_string(radii[k]));
    rep.rows.push_back(row);
  }
  rep.d_minus = rep.rows.back().inf_ratio;
  rep.d_plus = rep.rows.back().sup_ratio;
  std::vector<double> inv, lo, hi;
  for (const auto& r : rep.rows) {
    inv.push_back(1.0 / r.radius);
    lo.push_back(r.inf_ratio);
    hi.push_back(r.sup_ratio);
  }
  rep.trend_minus = slope(inv, lo);
  rep.trend_plus = slope(inv, hi);
  return rep;
}

SeparationReport relative_separation(const PointSet& lambda, const Space& space, double rho,
                                     std::span<const Point> centers) {
  if (!(rho > 0.0)) throw InputError("rho must be positive");
  if (centers.empty()) throw InputError("separation needs at least one center");
  std::vector<double> ratio(centers.size(), -1.0);
  parallel_for(centers.size(), [&](std::size_t c) {
    const auto bc = count_in_ball(lambda, space, centers[c], rho);
    if (!bc.censored) ratio[c] = static_cast<double>(bc.count) / ball_measure(space, centers[c], rho);
  });
  SeparationReport rep;
  rep.rho = rho;
  for (double r : ratio) {
    if (r < 0.0) continue;
    ++rep.centers_used;
    rep.c_rho = std::max(rep.c_rho, r);
  }
  rep.pass = rep.centers_used > 0 && std::isfinite(rep.c_rho);
  return rep;
}

}  // namespace rkhs
