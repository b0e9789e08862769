#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "rkhs/errors.hpp"
#include "rkhs/parallel.hpp"
#include "rkhs/spectral.hpp"

namespace rkhs {

namespace {

void require_space(const Kernel& kernel, const Space& space) {
  if (!kernel.compatible(space)) throw InputError(kernel.name() + " does not live on " + space.name());
}

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

// K(i, j) = k(a_i, b_j)
CMatrix cross_kernel(const Kernel& kernel, const std::vector<Point>& a, const std::vector<Point>& b) {
  CMatrix k(a.size(), b.size());
  parallel_for(a.size(), [&](std::size_t i) {
    for (std::size_t j = 0; j < b.size(); ++j) k(i, j) = kernel.eval_unchecked(a[i], b[j]);
  });
  return k;
}

}  // namespace

Localization localization_operator(const Kernel& kernel, const Space& space, const Point& center, double r) {
  require_space(kernel, space);
  if (!quadrature_covers(space, center, r))
    throw CensoredError("quadrature extent does not cover the localization ball");
  Localization loc;
  loc.nodes = ball_quadrature(space, center, r);
  const std::size_t n = loc.nodes.size();
  if (n == 0) throw DegenerateWindowError("no quadrature nodes in the localization ball");
  if (n > kMaxOrder)
    throw InputError("localization order " + std::to_string(n) + " exceeds the cap " + std::to_string(kMaxOrder) +
                     "; increase the quadrature step or reduce r");
  const double h = space.quadrature().h;
  if (h > kernel.decay_scale() / 5.0) {
    std::ostringstream ss;
    ss << "quadrature step " << h << " exceeds a fifth of the kernel decay scale " << kernel.decay_scale();
    loc.warnings.push_back(ss.str());
  }
  loc.sqrt_weights.resize(n);
  for (std::size_t i = 0; i < n; ++i) loc.sqrt_weights[i] = std::sqrt(loc.nodes[i].weight);
  loc.matrix.resize(n, n);
  parallel_for(n, [&](std::size_t j) {
    for (std::size_t i = 0; i <= j; ++i) {
      const cplx v = loc.sqrt_weights[i] * kernel.eval_unchecked(loc.nodes[i].point, loc.nodes[j].point) *
                     loc.sqrt_weights[j];
      loc.matrix(i, j) = v;
      loc.matrix(j, i) = std::conj(v);
    }
    loc.matrix(j, j) = loc.matrix(j, j).real();
  });
  return loc;
}

double ball_average_diagonal(const Kernel& kernel, const Space& space, const Point& x, double r, TracePath path) {
  if (path == TracePath::known_diagonal) {
    if (const auto d = kernel.known_diagonal()) return *d;
    throw InputError(kernel.name() + " has no known diagonal");
  }
  double num = 0.0, vol = 0.0;
  for (const auto& n : ball_quadrature(space, x, r)) {
    num += n.weight * kernel.eval_unchecked(n.point, n.point).real();
    vol += n.weight;
  }
  if (!(vol > 0.0)) throw DegenerateWindowError("ball contains no quadrature nodes");
  return num / vol;
}

TraceReport averaged_trace(const Kernel& kernel, const Space& space, std::span<const Point> centers,
                           std::span<const double> radii, TracePath path) {
  require_space(kernel, space);
  if (centers.empty() || radii.empty()) throw InputError("trace needs centers and radii");
  for (std::size_t i = 0; i < radii.size(); ++i)
    if (!(radii[i] > 0.0) || (i && !(radii[i] > radii[i - 1]))) throw InputError("radii must be increasing");
  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<std::vector<double>> avg(centers.size(), std::vector<double>(radii.size(), nan));
  parallel_for(centers.size(), [&](std::size_t c) {
    for (std::size_t k = 0; k < radii.size(); ++k) {
      if (path == TracePath::quadrature && !quadrature_covers(space, centers[c], radii[k])) continue;
      avg[c][k] = ball_average_diagonal(kernel, space, centers[c], radii[k], path);
    }
  });
  TraceReport rep;
  rep.path = path;
  std::vector<double> inv, lo, hi;
  for (std::size_t k = 0; k < radii.size(); ++k) {
    TraceRow row;
    row.radius = radii[k];
    row.inf_avg = std::numeric_limits<double>::infinity();
    row.sup_avg = -std::numeric_limits<double>::infinity();
    for (const auto& a : avg) {
      if (std::isnan(a[k])) {
        ++row.centers_censored;
        continue;
      }
      ++row.centers_used;
      row.inf_avg = std::min(row.inf_avg, a[k]);
      row.sup_avg = std::max(row.sup_avg, a[k]);
    }
    if (row.centers_used == 0)
      throw CensoredError("every trace center is censored at radius " + std::to_string(radii[k]));
    rep.rows.push_back(row);
    inv.push_back(1.0 / radii[k]);
    lo.push_back(row.inf_avg);
    hi.push_back(row.sup_avg);
  }
  rep.tr_minus = rep.rows.back().inf_avg;
  rep.tr_plus = rep.rows.back().sup_avg;
  rep.trend_minus = slope(inv, lo);
  rep.trend_plus = slope(inv, hi);
  return rep;
}

double default_margin(double r) { return 0.5 * r; }

FiniteSection finite_section(const Kernel& kernel, const PointSet& lambda, const Space& space, const Point& center,
                             double r, double tau, std::optional<double> margin) {
  require_space(kernel, space);
  if (!(tau > 0.0 && tau < 1.0)) throw InputError("tau must lie in (0, 1)");
  if (!(r > 0.0)) throw InputError("section radius must be positive");
  FiniteSection fs;
  fs.center = center;
  fs.center_r = r;
  fs.tau = tau;
  fs.margin = margin.value_or(default_margin(r));
  if (!(fs.margin >= 0.0)) throw InputError("margin must be nonnegative");
  const double reach = r + fs.margin;
  if (!ball_within_window(lambda, space, center, reach))
    throw CensoredError("finite section needs the point set on B_" + std::to_string(reach) + ", beyond its window");

  Localization loc = localization_operator(kernel, space, center, r);
  const Eigensystem es = eigh_above(HermitianMatrix(loc.matrix), tau);
  const Eigen::Index dim = es.values.size();
  if (dim == 0) throw DegenerateWindowError("no localization eigenvalue reaches tau");

  fs.localization_eigenvalues.assign(es.values.data(), es.values.data() + dim);
  fs.nodes.reserve(loc.nodes.size());
  for (const auto& n : loc.nodes) fs.nodes.push_back(n.point);
  fs.basis = es.vectors;
  for (Eigen::Index j = 0; j < fs.basis.rows(); ++j) fs.basis.row(j) *= loc.sqrt_weights[j];
  for (Eigen::Index a = 0; a < dim; ++a) fs.basis.col(a) /= std::sqrt(es.values(a));

  for (const auto& p : lambda.points())
    if (distance(space, center, p) < reach) fs.samples.push_back(p);
  if (fs.samples.empty()) {
    fs.phi = CMatrix::Zero(0, dim);
    fs.s = CMatrix::Zero(dim, dim);
  } else {
    fs.phi = cross_kernel(kernel, fs.samples, fs.nodes) * fs.basis;
    fs.s = fs.phi.adjoint() * fs.phi;
  }
  const HermitianMatrix s(fs.s, 1e-10);
  fs.report = spectral_report(s);
  fs.report.warnings = std::move(loc.warnings);
  return fs;
}

SpectralReport frame_bounds_finite_section(const Kernel& kernel, const PointSet& lambda, const Space& space,
                                           const Point& center, double r, double tau, std::optional<double> margin) {
  return finite_section(kernel, lambda, space, center, r, tau, margin).report;
}

std::vector<BoundPoint> frame_curve(const Kernel& kernel, const PointSet& lambda, const Space& space,
                                    const Point& center, std::span<const double> radii, double tau,
                                    std::optional<double> margin_fraction, std::vector<SpectralReport>* reports) {
  std::vector<BoundPoint> out;
  for (double r : radii) {
    const std::optional<double> margin =
        margin_fraction ? std::optional<double>(*margin_fraction * r) : std::nullopt;
    const FiniteSection fs = finite_section(kernel, lambda, space, center, r, tau, margin);
    out.push_back({r, fs.localization_eigenvalues.size(), fs.report.lambda_min, fs.report.lambda_max});
    if (reports) reports->push_back(fs.report);
  }
  return out;
}

std::vector<DimensionFreeRow> dimension_free_ratios(const Kernel& kernel, const PointSet& lambda,
                                                    const Space& space, std::span<const Point> centers,
                                                    std::span<const double> radii, TracePath path) {
  require_space(kernel, space);
  std::vector<DimensionFreeRow> out;
  for (double r : radii) {
    DimensionFreeRow row;
    row.radius = r;
    row.inf_ratio = std::numeric_limits<double>::infinity();
    row.sup_ratio = 0.0;
    std::size_t used = 0;
    for (const auto& x : centers) {
      const BallCount bc = count_in_ball(lambda, space, x, r);
      if (bc.censored) continue;
      if (path == TracePath::quadrature && !quadrature_covers(space, x, r)) continue;
      ++used;
      const double mu = ball_measure(space, x, r);
      const double avg = ball_average_diagonal(kernel, space, x, r, path);
      const double count = static_cast<double>(bc.count);
      const double ratio = count / (avg * mu);
      const double via = (count / mu) / avg;
      row.inf_ratio = std::min(row.inf_ratio, ratio);
      row.sup_ratio = std::max(row.sup_ratio, ratio);
      if (ratio > 0.0) row.max_identity_error = std::max(row.max_identity_error, std::abs(ratio - via) / ratio);
    }
    if (used == 0) throw CensoredError("every center is censored at radius " + std::to_string(r));
    out.push_back(row);
  }
  return out;
}

}  // namespace rkhs
