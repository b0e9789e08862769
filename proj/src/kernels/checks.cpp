#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "rkhs/errors.hpp"
#include "rkhs/kernels.hpp"
#include "rkhs/parallel.hpp"
#include "rkhs/random.hpp"

namespace rkhs {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require_radii(std::span<const double> radii) {
  if (radii.empty()) throw InputError("radii must be nonempty");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0) || !std::isfinite(radii[i])) throw InputError("radii must be positive");
    if (i && !(radii[i] > radii[i - 1])) throw InputError("radii must be strictly increasing");
  }
}

void require_space(const Kernel& kernel, const Space& space) {
  if (!kernel.compatible(space)) throw InputError(kernel.name() + " does not live on " + space.name());
}

// values[c][k] is the tail at centers[c], radii[k]; NaN marks censoring.
TailReport assemble(std::span<const double> radii, const std::vector<std::vector<double>>& values,
                    const TailOptions& opt) {
  TailReport rep;
  rep.radii.assign(radii.begin(), radii.end());
  rep.sup_tail.assign(radii.size(), kNaN);
  for (std::size_t c = 0; c < values.size(); ++c) {
    for (std::size_t k = 0; k < radii.size(); ++k) {
      const double v = values[c][k];
      const bool cens = std::isnan(v);
      rep.rows.push_back({c, radii[k], cens ? kNaN : v, cens});
      if (cens) {
        ++rep.censored;
        continue;
      }
      if (k && !std::isnan(values[c][k - 1]) && v > values[c][k - 1] * (1.0 + 1e-12) + 1e-15)
        rep.nonincreasing = false;
      rep.sup_tail[k] = std::isnan(rep.sup_tail[k]) ? v : std::max(rep.sup_tail[k], v);
    }
  }
  for (double e : opt.eps) {
    rep.r_of_eps[e] = std::nullopt;
    for (std::size_t k = 0; k < radii.size(); ++k) {
      if (!std::isnan(rep.sup_tail[k]) && rep.sup_tail[k] <= e) {
        rep.r_of_eps[e] = radii[k];
        break;
      }
    }
  }
  const double last = rep.sup_tail.back();
  rep.pass = rep.censored == 0 && rep.nonincreasing && !std::isnan(last) && last <= opt.pass_eps;
  return rep;
}

}  // namespace

AxiomDResult check_axiom_d(const Kernel& kernel, std::span<const Point> centers) {
  if (centers.empty()) throw InputError("axiom D needs at least one center");
  AxiomDResult res;
  res.c1 = std::numeric_limits<double>::infinity();
  res.c2 = 0.0;
  for (const auto& x : centers) {
    const double d = kernel.diagonal(x);
    res.c1 = std::min(res.c1, d);
    res.c2 = std::max(res.c2, d);
  }
  res.pass = res.c1 > 0.0 && std::isfinite(res.c2);
  return res;
}

double witness_norm_bound(const Kernel& kernel) {
  if (kernel.axiom_test()) return std::numeric_limits<double>::infinity();
  return 1.0 / std::sqrt(*kernel.known_diagonal());
}

WitnessBound witness_diagonal_bound(const Kernel& kernel, double c, const AxiomDResult& observed, double tol) {
  (void)kernel;
  if (!(c > 0.0)) throw InputError("witness norm bound must be positive");
  WitnessBound w;
  w.c = c;
  w.vacuous = !std::isfinite(c);
  w.bound = w.vacuous ? 0.0 : 1.0 / (c * c);
  w.consistent = observed.c1 >= w.bound - tol * std::max(1.0, w.bound);
  return w;
}

TailReport check_wl(const Kernel& kernel, const Space& space, std::span<const Point> centers,
                    std::span<const double> radii, const TailOptions& opt) {
  require_space(kernel, space);
  require_radii(radii);
  if (centers.empty()) throw InputError("WL needs at least one center");
  std::vector<std::vector<double>> values(centers.size(), std::vector<double>(radii.size(), kNaN));

  if (kernel.axiom_test()) {
    if (!kernel.radial_modulus(0.0)) throw InputError("axiom-test kernel has no radial profile");
    const auto f = [&](double t) {
      const double m = *kernel.radial_modulus(t);
      return m * m;
    };
    parallel_for(centers.size(), [&](std::size_t c) {
      for (std::size_t k = 0; k < radii.size(); ++k)
        values[c][k] = radial_tail_integral(space, centers[c], f, radii[k]);
    });
    return assemble(radii, values, opt);
  }

  parallel_for(centers.size(), [&](std::size_t c) {
    const Point& x = centers[c];
    std::size_t usable = 0;
    while (usable < radii.size() && quadrature_covers(space, x, radii[usable])) ++usable;
    if (usable == 0) return;
    auto nodes = ball_quadrature(space, x, radii[usable - 1]);
    std::sort(nodes.begin(), nodes.end(), [](const QuadNode& a, const QuadNode& b) { return a.dist < b.dist; });
    const double diag = kernel.diagonal(x);
    double inside = 0.0;
    std::size_t j = 0;
    for (std::size_t k = 0; k < usable; ++k) {
      for (; j < nodes.size() && nodes[j].dist < radii[k]; ++j)
        inside += nodes[j].weight * std::norm(kernel.eval_unchecked(x, nodes[j].point));
      values[c][k] = std::max(0.0, diag - inside);
    }
  });
  return assemble(radii, values, opt);
}

TailReport check_hap(const Kernel& kernel, const PointSet& lambda, const Space& space,
                     std::span<const Point> centers, std::span<const double> radii, const TailOptions& opt) {
  require_space(kernel, space);
  require_radii(radii);
  if (centers.empty()) throw InputError("HAP needs at least one center");
  std::vector<std::vector<double>> values(centers.size(), std::vector<double>(radii.size(), kNaN));
  parallel_for(centers.size(), [&](std::size_t c) {
    const Point& x = centers[c];
    std::vector<std::pair<double, double>> dk;
    dk.reserve(lambda.size());
    for (const auto& p : lambda.points()) dk.emplace_back(distance(space, x, p), std::norm(kernel.eval_unchecked(x, p)));
    std::sort(dk.begin(), dk.end());
    // Suffix sums from the far end keep small terms from being absorbed.
    std::vector<double> suffix(dk.size() + 1, 0.0);
    for (std::size_t i = dk.size(); i-- > 0;) suffix[i] = suffix[i + 1] + dk[i].second;
    for (std::size_t k = 0; k < radii.size(); ++k) {
      if (!ball_within_window(lambda, space, x, radii[k])) continue;
      const auto first = std::lower_bound(dk.begin(), dk.end(), std::make_pair(radii[k], -1.0)) - dk.begin();
      values[c][k] = suffix[static_cast<std::size_t>(first)];
    }
  });
  return assemble(radii, values, opt);
}

PolyDecayResult check_poly_decay_hypothesis(const Kernel& kernel, const Space& space, double sigma, double c,
                                            std::span<const Point> centers, std::span<const double> radii,
                                            const PolyDecayOptions& opt) {
  require_space(kernel, space);
  require_radii(radii);
  if (!(sigma > 0.0)) throw InputError("sigma must be positive");
  if (!(c > 0.0)) throw InputError("decay constant must be positive");
  if (centers.empty()) throw InputError("decay check needs at least one center");
  if (opt.pairs == 0) throw InputError("decay check needs at least one pair");

  PolyDecayResult res;
  res.sigma = sigma;
  res.c = c;
  res.pairs = opt.pairs;

  // Pairs stratified over dyadic distance shells [0,1), [1,2), [2,4), ...
  const double reach = radii.back();
  const std::size_t shells = 1 + static_cast<std::size_t>(std::ceil(std::log2(std::max(reach, 1.0))));
  const std::size_t draws = direction_draws(space);
  std::vector<double> ratio(opt.pairs);
  parallel_for(opt.pairs, [&](std::size_t i) {
    SplitMix64 rng(opt.seed, i);
    const std::size_t s = i % shells;
    const double lo = s == 0 ? 0.0 : std::ldexp(1.0, static_cast<int>(s) - 1);
    const double hi = s == 0 ? 1.0 : std::ldexp(1.0, static_cast<int>(s));
    const double t = rng.uniform(lo, hi);
    std::array<double, Point::kMaxDim> u{};
    for (std::size_t j = 0; j < draws; ++j) u[j] = rng.uniform();
    const Point& x = centers[i % centers.size()];
    const Point y = point_at_distance(space, x, t, std::span<const double>(u.data(), draws));
    ratio[i] = std::abs(kernel.eval(x, y)) * std::pow(1.0 + distance(space, x, y), sigma);
  });
  for (double r : ratio) res.fitted_c = std::max(res.fitted_c, r);
  res.decay_holds = res.fitted_c <= c;

  const auto f = [&](double t) { return std::pow(1.0 + t, -2.0 * sigma); };
  res.tail_finite = true;
  for (double r : radii) {
    double sup = 0.0;
    for (const auto& x : centers) sup = std::max(sup, radial_tail_integral(space, x, f, r));
    res.tail_curve.push_back({r, sup});
    res.tail_finite = res.tail_finite && std::isfinite(sup);
  }
  bool nonincreasing = true;
  for (std::size_t i = 1; i < res.tail_curve.size(); ++i)
    nonincreasing = nonincreasing && res.tail_curve[i].value <= res.tail_curve[i - 1].value;
  res.tail_pass = res.tail_finite && nonincreasing &&
                  res.tail_curve.back().value <= opt.tail_drop * res.tail_curve.front().value;
  res.pass = res.decay_holds && res.tail_pass;
  return res;
}

}  // namespace rkhs
