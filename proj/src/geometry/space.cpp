#include <cmath>
#include <numbers>

#include <boost/math/special_functions/erf.hpp>

#include "rkhs/errors.hpp"
#include "rkhs/geometry.hpp"

namespace rkhs {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

double unit_ball_volume(int d) {
  return std::pow(std::numbers::pi, 0.5 * d) / std::tgamma(0.5 * d + 1.0);
}

double euclid(const Point& x, const Point& y) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.dim(); ++i) {
    const double t = x[i] - y[i];
    s += t * t;
  }
  return std::sqrt(s);
}

// Number of integers k with |k - c| < r.
double lattice_count_1d(double c, double r) {
  return std::ceil(c + r) - std::floor(c - r) - 1.0;
}

void require_radius(double r) {
  if (!(r > 0.0) || !std::isfinite(r)) throw InputError("radius must be positive and finite");
}

}  // namespace

Space::Space(SpaceVariant v) : Space(v, QuadratureRule{default_step(v), std::nullopt}) {}

Space::Space(SpaceVariant v, QuadratureRule rule) : v_(v), rule_(rule) {
  std::visit(overloaded{
                 [](const EuclideanLebesgue& s) {
                   if (s.dim < 1 || s.dim > 6) throw InputError("Euclidean dimension must be in 1..6");
                 },
                 [](const FockGaussian& s) {
                   if (s.n < 1 || s.n > 3) throw InputError("Fock complex dimension must be in 1..3");
                 },
                 [](const IntegerWordMetric& s) {
                   if (s.dim < 1 || s.dim > 6) throw InputError("lattice dimension must be in 1..6");
                 },
                 [](const auto&) {},
             },
             v_);
  if (!(rule_.h > 0.0) || !std::isfinite(rule_.h)) throw InputError("quadrature step must be positive");
  if (rule_.extent && !(*rule_.extent > 0.0)) throw InputError("quadrature extent must be positive");
}

Space Space::with_step(double h) const {
  QuadratureRule r = rule_;
  r.h = h;
  return Space(v_, r);
}

double Space::default_step(const SpaceVariant& v) {
  if (std::holds_alternative<HyperbolicUpperHalfPlane>(v)) return 0.02;
  if (std::holds_alternative<IntegerWordMetric>(v)) return 1.0;
  return 0.05;
}

std::size_t Space::point_dim() const noexcept {
  return std::visit(overloaded{
                        [](const EuclideanLebesgue& s) -> std::size_t { return s.dim; },
                        [](const FockGaussian& s) -> std::size_t { return 2 * s.n; },
                        [](const PhasePlane&) -> std::size_t { return 2; },
                        [](const LogMetricLine&) -> std::size_t { return 1; },
                        [](const HyperbolicUpperHalfPlane&) -> std::size_t { return 2; },
                        [](const IntegerWordMetric& s) -> std::size_t { return s.dim; },
                    },
                    v_);
}

Growth Space::growth() const noexcept {
  if (std::holds_alternative<LogMetricLine>(v_) || std::holds_alternative<HyperbolicUpperHalfPlane>(v_))
    return Growth::exponential;
  return Growth::polynomial;
}

std::string Space::name() const {
  return std::visit(overloaded{
                        [](const EuclideanLebesgue& s) { return "EuclideanLebesgue(" + std::to_string(s.dim) + ")"; },
                        [](const FockGaussian& s) { return "FockGaussian(" + std::to_string(s.n) + ")"; },
                        [](const PhasePlane&) { return std::string("PhasePlane"); },
                        [](const LogMetricLine&) { return std::string("LogMetricLine"); },
                        [](const HyperbolicUpperHalfPlane&) { return std::string("HyperbolicUpperHalfPlane"); },
                        [](const IntegerWordMetric& s) { return "IntegerWordMetric(" + std::to_string(s.dim) + ")"; },
                    },
                    v_);
}

void Space::validate(const Point& p) const {
  if (p.dim() != point_dim())
    throw InputError(name() + " expects points of dimension " + std::to_string(point_dim()) + ", got " +
                     std::to_string(p.dim()));
  for (std::size_t i = 0; i < p.dim(); ++i)
    if (!std::isfinite(p[i])) throw InputError("non-finite coordinate in point " + p.to_string());
  if (std::holds_alternative<HyperbolicUpperHalfPlane>(v_) && !(p[1] > 0.0))
    throw InputError("half-plane point needs Im(z) > 0: " + p.to_string());
  if (std::holds_alternative<IntegerWordMetric>(v_))
    for (std::size_t i = 0; i < p.dim(); ++i)
      if (p[i] != std::round(p[i])) throw InputError("lattice point needs integer coordinates: " + p.to_string());
}

double distance(const Space& space, const Point& x, const Point& y) {
  const std::size_t m = space.point_dim();
  if (x.dim() != m || y.dim() != m) throw InputError("point dimension does not match " + space.name());
  return std::visit(overloaded{
                        [&](const LogMetricLine&) { return std::log1p(std::abs(x[0] - y[0])); },
                        [&](const HyperbolicUpperHalfPlane&) {
                          return 2.0 * std::asinh(euclid(x, y) / (2.0 * std::sqrt(x[1] * y[1])));
                        },
                        [&](const IntegerWordMetric&) {
                          double d = 0.0;
                          for (std::size_t i = 0; i < m; ++i) d = std::max(d, std::abs(x[i] - y[i]));
                          return d;
                        },
                        [&](const auto&) { return euclid(x, y); },
                    },
                    space.variant());
}

double ball_measure(const Space& space, const Point& x, double r) {
  require_radius(r);
  if (x.dim() != space.point_dim()) throw InputError("point dimension does not match " + space.name());
  return std::visit(overloaded{
                        [&](const EuclideanLebesgue& s) { return unit_ball_volume(s.dim) * std::pow(r, s.dim); },
                        [&](const FockGaussian& s) {
                          return std::pow(0.5 * std::numbers::pi * r * r, s.n) / std::tgamma(s.n + 1.0);
                        },
                        [&](const PhasePlane&) { return std::numbers::pi * r * r; },
                        [&](const LogMetricLine&) { return 2.0 * std::expm1(r); },
                        [&](const HyperbolicUpperHalfPlane&) {
                          const double s = std::sinh(0.5 * r);
                          return 4.0 * s * s;
                        },
                        [&](const IntegerWordMetric& s) {
                          double c = 1.0;
                          for (int i = 0; i < s.dim; ++i) c *= lattice_count_1d(x[i], r);
                          return c;
                        },
                    },
                    space.variant());
}

double shell_density(const Space& space, const Point& x, double t) {
  if (!(t >= 0.0)) throw InputError("shell radius must be nonnegative");
  if (x.dim() != space.point_dim()) throw InputError("point dimension does not match " + space.name());
  return std::visit(overloaded{
                        [&](const EuclideanLebesgue& s) {
                          return unit_ball_volume(s.dim) * s.dim * std::pow(t, s.dim - 1);
                        },
                        [&](const FockGaussian& s) {
                          const double a = 0.5 * std::numbers::pi;
                          return std::pow(a, s.n) * 2.0 * s.n * std::pow(t, 2 * s.n - 1) / std::tgamma(s.n + 1.0);
                        },
                        [&](const PhasePlane&) { return 2.0 * std::numbers::pi * t; },
                        [&](const LogMetricLine&) { return 2.0 * std::exp(t); },
                        [&](const HyperbolicUpperHalfPlane&) { return 2.0 * std::sinh(t); },
                        [&](const IntegerWordMetric&) -> double {
                          throw InputError("counting measure has no shell density");
                        },
                    },
                    space.variant());
}

std::size_t direction_draws(const Space& space) {
  return std::visit(overloaded{
                        [](const LogMetricLine&) -> std::size_t { return 1; },
                        [](const HyperbolicUpperHalfPlane&) -> std::size_t { return 1; },
                        [&](const auto&) { return space.point_dim(); },
                    },
                    space.variant());
}

Point point_at_distance(const Space& space, const Point& x, double t, std::span<const double> u) {
  if (u.size() < direction_draws(space)) throw InputError("not enough direction draws");
  if (!(t >= 0.0)) throw InputError("distance must be nonnegative");
  const std::size_t m = space.point_dim();
  return std::visit(
      overloaded{
          [&](const LogMetricLine&) { return Point{x[0] + (u[0] < 0.5 ? -1.0 : 1.0) * std::expm1(t)}; },
          [&](const HyperbolicUpperHalfPlane&) {
            // Disc-model point at distance t from 0, sent to the half-plane and
            // moved from i to x by z -> x0 + y0 z.
            const std::complex<double> zeta = std::polar(std::tanh(0.5 * t), 2.0 * std::numbers::pi * u[0]);
            const std::complex<double> w = std::complex<double>(0.0, 1.0) * (1.0 + zeta) / (1.0 - zeta);
            return Point{x[0] + x[1] * w.real(), x[1] * w.imag()};
          },
          [&](const IntegerWordMetric&) {
            const double k = std::round(t);
            Point p = x;
            const std::size_t axis = std::min(m - 1, static_cast<std::size_t>(u[0] * m));
            for (std::size_t i = 0; i < m; ++i) {
              if (i == axis) continue;
              p[i] += std::floor(u[i] * (2.0 * k + 1.0)) - k;
            }
            const double frac = u[0] * m - static_cast<double>(axis);
            p[axis] += frac < 0.5 ? -k : k;
            return p;
          },
          [&](const auto&) {
            Point dir = Point::zeros(m);
            double n = 0.0;
            for (std::size_t i = 0; i < m; ++i) {
              const double q = std::clamp(u[i], 1e-12, 1.0 - 1e-12);
              dir[i] = std::sqrt(2.0) * boost::math::erf_inv(2.0 * q - 1.0);
              n += dir[i] * dir[i];
            }
            n = std::sqrt(n);
            if (n == 0.0) {
              dir[0] = 1.0;
              n = 1.0;
            }
            return x + dir * (t / n);
          },
      },
      space.variant());
}

}  // namespace rkhs
