#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "oracles/hyperbolic.hpp"
#include "oracles/lattice.hpp"
#include "rkhs/errors.hpp"
#include "rkhs/geometry.hpp"
#include "rkhs/random.hpp"

using namespace rkhs;
using doctest::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

PointSet lattice_1d(double step, double window) {
  std::vector<Point> pts;
  const long n = static_cast<long>(std::floor(window / step + 1e-9));
  for (long k = -n; k <= n; ++k) pts.push_back(Point{k * step});
  return PointSet(Space(EuclideanLebesgue{1}), pts, Window{Point{0.0}, window}, {"test", 0});
}

}  // namespace

TEST_CASE("distances") {
  CHECK(distance(Space(EuclideanLebesgue{2}), Point{0.0, 0.0}, Point{3.0, 4.0}) == Approx(5.0));
  CHECK(distance(Space(LogMetricLine{}), Point{1.0}, Point{1.0 + std::expm1(2.0)}) == Approx(2.0));
  CHECK(distance(Space(IntegerWordMetric{2}), Point{0.0, 0.0}, Point{3.0, -5.0}) == Approx(5.0));
  const Space h(HyperbolicUpperHalfPlane{});
  CHECK(distance(h, Point{0.0, 1.0}, Point{0.0, std::exp(1.5)}) == Approx(1.5));
  CHECK(distance(h, Point{2.0, 3.0}, Point{2.0, 3.0}) == Approx(0.0));
  const Point a{-1.0, 0.5}, b{2.0, 2.0};
  CHECK(distance(h, a, b) == Approx(distance(h, b, a)));
  CHECK(distance(h, Point{0.0, 1.0}, Point{5.0, 5.0}) == Approx(distance(h, Point{0.0, 2.0}, Point{10.0, 10.0})));
}

TEST_CASE("ball measures against independent formulas") {
  for (int d : {1, 2, 3}) {
    const Space s(EuclideanLebesgue{d});
    CHECK(ball_measure(s, Point::zeros(d), 2.5) == Approx(oracle::unit_ball_volume(d) * std::pow(2.5, d)));
  }
  CHECK(ball_measure(Space(FockGaussian{1}), Point::zeros(2), 3.0) == Approx(0.5 * kPi * 9.0));
  CHECK(ball_measure(Space(FockGaussian{2}), Point::zeros(4), 2.0) ==
        Approx(oracle::unit_ball_volume(4) * 16.0 / 4.0));
  CHECK(ball_measure(Space(PhasePlane{}), Point{0.0, 0.0}, 2.0) == Approx(4.0 * kPi));
  CHECK(ball_measure(Space(LogMetricLine{}), Point{0.0}, 3.0) == Approx(2.0 * std::expm1(3.0)));
  for (double r : {0.5, 1.0, 3.0}) {
    const double q = oracle::hyperbolic_ball_integral([](std::complex<double>) { return 1.0; }, r);
    CHECK(ball_measure(Space(HyperbolicUpperHalfPlane{}), Point{0.0, 1.0}, r) == Approx(q).epsilon(1e-6));
  }
  for (double r : {1.0, 2.5, 7.0})
    CHECK(ball_measure(Space(IntegerWordMetric{2}), Point{0.0, 0.0}, r) ==
          Approx(static_cast<double>(oracle::word_ball_count(2, r))));
}

TEST_CASE("shell density is the derivative of the ball measure") {
  const double eps = 1e-6;
  for (const Space& s : {Space(EuclideanLebesgue{2}), Space(PhasePlane{}), Space(LogMetricLine{}),
                         Space(HyperbolicUpperHalfPlane{}), Space(FockGaussian{1})}) {
    const Point x = std::holds_alternative<HyperbolicUpperHalfPlane>(s.variant()) ? Point{0.0, 1.0}
                                                                                 : Point::zeros(s.point_dim());
    const double fd = (ball_measure(s, x, 2.0 + eps) - ball_measure(s, x, 2.0 - eps)) / (2 * eps);
    CHECK(shell_density(s, x, 2.0) == Approx(fd).epsilon(1e-6));
  }
}

TEST_CASE("points at a prescribed distance") {
  const std::vector<double> u{0.3, 0.7, 0.1, 0.9};
  for (const Space& s : {Space(EuclideanLebesgue{2}), Space(FockGaussian{1}), Space(PhasePlane{}),
                         Space(LogMetricLine{}), Space(HyperbolicUpperHalfPlane{})}) {
    const Point x = std::holds_alternative<HyperbolicUpperHalfPlane>(s.variant()) ? Point{0.5, 2.0}
                                                                                 : Point::zeros(s.point_dim());
    const Point y = point_at_distance(s, x, 1.7, std::span<const double>(u).first(direction_draws(s)));
    CHECK(distance(s, x, y) == Approx(1.7));
  }
}

TEST_CASE("space validation") {
  CHECK_THROWS_AS(Space(HyperbolicUpperHalfPlane{}).validate(Point{0.0, -1.0}), InputError);
  CHECK_THROWS_AS(Space(IntegerWordMetric{1}).validate(Point{0.5}), InputError);
  CHECK_THROWS_AS(Space(EuclideanLebesgue{2}).validate(Point{0.5}), InputError);
  CHECK_THROWS_AS(Space(EuclideanLebesgue{1}).validate(Point{std::nan("")}), InputError);
  CHECK_NOTHROW(Space(FockGaussian{1}).validate(Point{0.5, 1.0}));
}

TEST_CASE("ball quadrature approximates the ball measure") {
  const Space e2 = Space(EuclideanLebesgue{2}).with_step(0.05);
  const double r = 3.0;
  CHECK(std::abs(ball_measure_quadrature(e2, Point{0.1, -0.2}, r) - ball_measure(e2, Point{0.0, 0.0}, r)) <=
        quadrature_tolerance(e2, Point{0.0, 0.0}, r));
  const Space fock = Space(FockGaussian{1}).with_step(0.05);
  CHECK(std::abs(ball_measure_quadrature(fock, Point{0.0, 0.0}, 4.0) - ball_measure(fock, Point{0.0, 0.0}, 4.0)) <=
        quadrature_tolerance(fock, Point{0.0, 0.0}, 4.0));
  const Space hyp = Space(HyperbolicUpperHalfPlane{}).with_step(0.02);
  CHECK(std::abs(ball_measure_quadrature(hyp, Point{0.0, 1.0}, 2.0) - ball_measure(hyp, Point{0.0, 1.0}, 2.0)) <=
        quadrature_tolerance(hyp, Point{0.0, 1.0}, 2.0));
  const Space word(IntegerWordMetric{2});
  CHECK(ball_measure_quadrature(word, Point{0.0, 0.0}, 3.0) == Approx(25.0));
  const Space log = Space(LogMetricLine{}).with_step(0.01);
  CHECK(std::abs(ball_measure_quadrature(log, Point{0.0}, 2.0) - ball_measure(log, Point{0.0}, 2.0)) <=
        quadrature_tolerance(log, Point{0.0}, 2.0));
}

TEST_CASE("quadrature nodes are nested and lie inside the ball") {
  const Space s = Space(PhasePlane{}).with_step(0.1);
  const auto small = ball_quadrature(s, Point{0.3, 0.4}, 1.0);
  const auto big = ball_quadrature(s, Point{0.3, 0.4}, 2.0);
  CHECK(small.size() < big.size());
  for (const auto& n : big) CHECK(n.dist < 2.0);
  std::size_t found = 0;
  for (const auto& a : small)
    for (const auto& b : big)
      if (a.point == b.point) {
        ++found;
        break;
      }
  CHECK(found == small.size());
}

TEST_CASE("quadrature extent censors") {
  const Space s(EuclideanLebesgue{1}, QuadratureRule{0.1, 10.0});
  CHECK(quadrature_covers(s, Point{0.0}, 5.0));
  CHECK_FALSE(quadrature_covers(s, Point{8.0}, 5.0));
}

TEST_CASE("point sets") {
  const Space s(EuclideanLebesgue{1});
  CHECK_THROWS_AS(PointSet(s, {Point{1.0}, Point{1.0}}, Window{Point{0.0}, 5.0}, {}), InputError);
  CHECK_THROWS_AS(PointSet(s, {Point{6.0}}, Window{Point{0.0}, 5.0}, {}), InputError);
  std::istringstream in("# comment\n1.5 # trailing\n\n-2\n");
  const auto pts = parse_points(in);
  REQUIRE(pts.size() == 2);
  CHECK(pts[0][0] == 1.5);
  CHECK(pts[1][0] == -2.0);
  const PointSet lam = lattice_1d(1.0, 10.0);
  const PointSet sub = lam.restrict_to(s, Point{0.0}, 3.0);
  CHECK(sub.size() == 7);
  CHECK(ball_within_window(lam, s, Point{2.0}, 8.0));
  CHECK_FALSE(ball_within_window(lam, s, Point{2.5}, 8.0));
}

TEST_CASE("ball counts use the open ball and censor outside the window") {
  const Space s(EuclideanLebesgue{1});
  const PointSet lam = lattice_1d(1.0, 20.0);
  const BallCount c = count_in_ball(lam, s, Point{0.0}, 3.0);
  CHECK_FALSE(c.censored);
  CHECK(c.count == 5);
  CHECK(count_in_ball(lam, s, Point{15.0}, 10.0).censored);
}

TEST_CASE("Beurling density of lattices matches lattice counting") {
  const Space s(PhasePlane{});
  const double a = std::sqrt(0.8);
  std::vector<Point> pts;
  for (int i = -40; i <= 40; ++i)
    for (int j = -40; j <= 40; ++j) {
      const Point p{i * a, j * a};
      if (p.norm() <= 30.0) pts.push_back(p);
    }
  const PointSet lam(s, pts, Window{Point{0.0, 0.0}, 30.0}, {"test", 0});
  const std::vector<Point> centers{Point{0.013, 0.021}, Point{0.3, 0.1}, Point{-1.2, 2.0}};
  const std::vector<double> radii{5.0, 10.0, 20.0};
  const DensityReport rep = beurling_density(lam, s, centers, radii);
  REQUIRE(rep.rows.size() == 3);
  for (std::size_t k = 0; k < radii.size(); ++k) {
    double lo = 1e300, hi = 0.0;
    for (const auto& x : centers) {
      const double n = static_cast<double>(oracle::count_lattice_in_ball({a, a}, {0.0, 0.0}, {x[0], x[1]}, radii[k]));
      lo = std::min(lo, n / (kPi * radii[k] * radii[k]));
      hi = std::max(hi, n / (kPi * radii[k] * radii[k]));
    }
    CHECK(rep.rows[k].inf_ratio == Approx(lo));
    CHECK(rep.rows[k].sup_ratio == Approx(hi));
  }
  CHECK(rep.d_minus == Approx(1.25).epsilon(0.03));
  CHECK(rep.d_plus == Approx(1.25).epsilon(0.03));
  CHECK(rep.d_minus <= rep.d_plus);
}

TEST_CASE("density censors per cell and throws when every center is censored") {
  const Space s(EuclideanLebesgue{1});
  const PointSet lam = lattice_1d(0.8, 80.0);
  CHECK(lam.size() == 201);
  const std::vector<Point> centers{Point{0.0}, Point{70.0}};
  const std::vector<double> radii{5.0, 20.0};
  const DensityReport rep = beurling_density(lam, s, centers, radii);
  CHECK(rep.rows[1].centers_censored == 1);
  CHECK(rep.rows[1].centers_used == 1);
  const std::vector<double> big{100.0};
  CHECK_THROWS_AS(beurling_density(lam, s, centers, big), CensoredError);
}

TEST_CASE("relative separation") {
  const Space s(EuclideanLebesgue{1});
  const PointSet lam = lattice_1d(0.5, 20.0);
  const std::vector<Point> centers{Point{0.0}, Point{0.25}};
  const SeparationReport rep = relative_separation(lam, s, 1.0, centers);
  CHECK(rep.pass);
  CHECK(rep.c_rho == Approx(4.0 / 2.0));
}

TEST_CASE("candidate centers include the point set") {
  const Space s(EuclideanLebesgue{1});
  const PointSet lam = lattice_1d(0.8, 10.0);
  const auto c = candidate_centers(lam, s, 1.0, true);
  for (const auto& p : lam.points()) CHECK(std::find(c.begin(), c.end(), p) != c.end());
  CHECK(c.size() > lam.size());
}

TEST_CASE("NDB") {
  const std::vector<Point> centers{Point{0.0}, Point{5.0}};
  CHECK(check_ndb(Space(EuclideanLebesgue{1}), centers, 1.0).pass);
  CHECK(check_ndb(Space(EuclideanLebesgue{1}), centers, 1.0).inf_measure == Approx(2.0));
}

TEST_CASE("WAD classification") {
  auto run = [](const Space& s, const Point& x) {
    const std::vector<Point> c{x};
    std::vector<double> radii;
    for (int r = 1; r <= static_cast<int>(default_wad_horizon(s)); ++r) radii.push_back(r);
    return check_wad(s, c, radii);
  };
  CHECK(run(Space(EuclideanLebesgue{1}), Point{0.0}).pass);
  CHECK(run(Space(EuclideanLebesgue{2}), Point{0.0, 0.0}).pass);
  CHECK(run(Space(IntegerWordMetric{1}), Point{0.0}).pass);
  CHECK(run(Space(FockGaussian{1}), Point{0.0, 0.0}).pass);
  const WadResult log = run(Space(LogMetricLine{}), Point{0.0});
  const WadResult hyp = run(Space(HyperbolicUpperHalfPlane{}), Point{0.0, 1.0});
  CHECK_FALSE(log.pass);
  CHECK_FALSE(hyp.pass);
  for (const auto& p : log.ratio_curve)
    if (p.r >= 5) CHECK(p.value >= 1.0);
  for (const auto& p : hyp.ratio_curve)
    if (p.r >= 5) CHECK(p.value >= 1.0);
  CHECK(log.ratio_curve.back().value == Approx(std::numbers::e - 1.0).epsilon(1e-6));
  const std::vector<Point> c{Point{0.0}};
  const std::vector<double> short_radii{1.0, 2.0};
  CHECK_THROWS_AS(check_wad(Space(EuclideanLebesgue{1}), c, short_radii), InputError);
}

TEST_CASE("local doubling") {
  const std::vector<Point> c{Point{0.0}};
  const std::vector<double> radii{1.0, 2.0, 4.0, 8.0, 16.0};
  const DoublingResult e = check_locally_doubling(Space(EuclideanLebesgue{1}), c, radii);
  CHECK(e.pass);
  for (const auto& p : e.constants) CHECK(p.value == Approx(2.0));
  const DoublingResult w = check_locally_doubling(Space(IntegerWordMetric{1}), c, std::vector<double>{10.0});
  CHECK(w.constants.front().value == Approx(39.0 / 19.0));
  const std::vector<Point> ch{Point{0.0, 1.0}};
  CHECK_FALSE(check_locally_doubling(Space(HyperbolicUpperHalfPlane{}), ch, radii).bounded);
}

TEST_CASE("shell counts are dominated by the separation constant") {
  const Space s(EuclideanLebesgue{1});
  const PointSet lam = lattice_1d(1.0, 50.0);
  const std::vector<Point> c{Point{0.0}, Point{0.5}};
  const SeparationReport sep = relative_separation(lam, s, 1.0, c);
  const ShellCount sc = shell_count_bound(lam, s, Point{0.3}, 10.0, 2.0, 1.0, sep.c_rho);
  CHECK_FALSE(sc.censored);
  CHECK(sc.holds);
  CHECK(sc.lhs == 4);
}

TEST_CASE("annular variants") {
  const std::vector<Point> c{Point{0.0, 0.0}};
  std::vector<double> radii;
  for (int r = 10; r <= 200; r += 10) radii.push_back(r);
  CHECK(annular_variants(Space(EuclideanLebesgue{2}), c, radii, 1.0).pass);
  const std::vector<Point> ch{Point{0.0, 1.0}};
  const std::vector<double> hr{2.0, 5.0, 10.0};
  CHECK_FALSE(annular_variants(Space(HyperbolicUpperHalfPlane{}), ch, hr, 1.0).pass);
}

TEST_CASE("splitmix streams are reproducible") {
  SplitMix64 a(7, 3), b(7, 3), c(7, 4);
  const auto x = a.next();
  CHECK(x == b.next());
  CHECK(x != c.next());
  for (int i = 0; i < 1000; ++i) {
    const double u = a.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}
