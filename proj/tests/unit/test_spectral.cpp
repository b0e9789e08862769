#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <numbers>

#include "oracles/finite_section.hpp"
#include "oracles/jacobi.hpp"
#include "rkhs/errors.hpp"
#include "rkhs/random.hpp"
#include "rkhs/spectral.hpp"

using namespace rkhs;
using doctest::Approx;

namespace {

constexpr double kPi = std::numbers::pi;

PointSet lattice_1d(double step, double window, double offset = 0.0) {
  std::vector<Point> pts;
  const long n = static_cast<long>(std::floor(window / step + 1e-9));
  for (long k = -n; k <= n; ++k) {
    const double p = offset + k * step;
    if (std::abs(p) <= window) pts.push_back(Point{p});
  }
  return PointSet(Space(EuclideanLebesgue{1}), pts, Window{Point{0.0}, window}, {"test", 0});
}

PointSet square_lattice(const Space& s, double step, double window) {
  std::vector<Point> pts;
  const long n = static_cast<long>(std::floor(window / step));
  for (long i = -n; i <= n; ++i)
    for (long j = -n; j <= n; ++j) {
      const Point p{i * step, j * step};
      if (p.norm() <= window) pts.push_back(p);
    }
  return PointSet(s, pts, Window{Point{0.0, 0.0}, window}, {"test", 0});
}

CMatrix random_hermitian(int n, std::uint64_t seed) {
  SplitMix64 rng(seed);
  CMatrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = cplx(rng.uniform(-1, 1), rng.uniform(-1, 1));
  return 0.5 * (a + a.adjoint());
}

}  // namespace

TEST_CASE("Hermitian check") {
  CMatrix a = random_hermitian(5, 1);
  CHECK_NOTHROW(HermitianMatrix{a});
  a(0, 1) += 1e-3;
  CHECK_THROWS_AS(HermitianMatrix{a}, InputError);
  CHECK_THROWS_AS(HermitianMatrix{CMatrix(2, 3)}, InputError);
}

TEST_CASE("eigenvalues agree with a Jacobi oracle") {
  const CMatrix a = random_hermitian(24, 42);
  oracle::Complex h(24, std::vector<cplx>(24));
  for (int i = 0; i < 24; ++i)
    for (int j = 0; j < 24; ++j) h[i][j] = a(i, j);
  const auto ref = oracle::hermitian_eigenvalues(h);
  const RVector lib = eigvalsh(HermitianMatrix(a));
  for (int i = 0; i < 24; ++i) CHECK(lib(i) == Approx(ref[i]).epsilon(1e-10));

  const Eigensystem es = eigh(HermitianMatrix(a));
  CHECK((a * es.vectors - es.vectors * es.values.asDiagonal()).cwiseAbs().maxCoeff() < 1e-10);
  CHECK((es.vectors.adjoint() * es.vectors - CMatrix::Identity(24, 24)).cwiseAbs().maxCoeff() < 1e-12);

  const Eigensystem top = eigh_above(HermitianMatrix(a), 0.5);
  Eigen::Index expected = 0;
  for (double v : ref) expected += v >= 0.5;
  REQUIRE(top.values.size() == expected);
  for (Eigen::Index k = 0; k < expected; ++k) CHECK(top.values(k) == Approx(lib(24 - expected + k)));
}

TEST_CASE("spectral report") {
  RVector v(4);
  v << 0.001, 0.4, 0.6, 1.0;
  const SpectralReport r = spectral_report(v, 2.001);
  CHECK(r.lambda_min == Approx(0.001));
  CHECK(r.lambda_max == Approx(1.0));
  CHECK(r.plunge_count == 2);
  CHECK(r.condition_flag);
  CHECK(r.trace == Approx(2.001));
}

TEST_CASE("sinc Gram on the integers is the identity") {
  const PointSet z = lattice_1d(1.0, 32.0);
  REQUIRE(z.size() == 65);
  const SpectralReport r = riesz_bounds(Kernel(PaleyWienerBox{{1.0}}), z);
  for (double v : r.eigenvalues) CHECK(std::abs(v - 1.0) <= 1e-9);
}

TEST_CASE("Riesz curves") {
  const Kernel k(PaleyWienerBox{{1.0}});
  const Space s(EuclideanLebesgue{1});
  const std::vector<double> w{16.0, 32.0, 64.0};
  const auto sparse = riesz_curve(k, lattice_1d(1.25, 120.0), s, Point{0.0}, w);
  for (const auto& p : sparse) CHECK(p.lower == Approx(0.8).epsilon(1e-6));
  std::vector<SpectralReport> reps;
  const auto dense = riesz_curve(k, lattice_1d(0.8, 120.0), s, Point{0.0}, w, &reps);
  CHECK(dense.front().lower >= 10.0 * dense.back().lower);
  CHECK(dense.back().lower < 1e-2);
  REQUIRE(reps.size() == 3);
  CHECK(reps[0].lambda_min == dense[0].lower);
  const std::vector<double> too_wide{200.0};
  CHECK_THROWS_AS(riesz_curve(k, lattice_1d(1.0, 120.0), s, Point{0.0}, too_wide), CensoredError);
}

TEST_CASE("Gram warns about near-duplicate points") {
  const Space s(EuclideanLebesgue{1});
  const PointSet lam(s, {Point{0.0}, Point{1e-9}, Point{2.0}}, Window{Point{0.0}, 3.0}, {});
  std::vector<std::string> warnings;
  gram(Kernel(PaleyWienerBox{{1.0}}), lam, &warnings);
  CHECK_FALSE(warnings.empty());
}

TEST_CASE("Paley-Wiener localization spectra") {
  const Kernel k(PaleyWienerBox{{1.0}});
  const Space s = Space(EuclideanLebesgue{1}).with_step(0.05);
  for (double r : {4.0, 8.0}) {
    const Localization loc = localization_operator(k, s, Point{0.0}, r);
    const RVector v = eigvalsh(HermitianMatrix(loc.matrix));
    CHECK(v.minCoeff() >= -1e-6);
    CHECK(v.maxCoeff() <= 1.0 + 1e-6);
    const double trace = loc.matrix.trace().real();
    CHECK(std::abs(trace - 2.0 * r) <= quadrature_tolerance(s, Point{0.0}, r));
    const SpectralReport rep = spectral_report(v, trace);
    CHECK(std::abs(static_cast<double>(rep.plunge_count) - 2.0 * r) <= 2.0);
  }
}

TEST_CASE("localization warns about coarse steps") {
  const Kernel k(GaborGaussian{});
  const Space s = Space(PhasePlane{}).with_step(0.5);
  const Localization loc = localization_operator(k, s, Point{0.0, 0.0}, 2.0);
  CHECK_FALSE(loc.warnings.empty());
}

TEST_CASE("averaged traces") {
  const std::vector<double> radii{2.0, 4.0, 8.0};
  const std::vector<Point> c1{Point{0.0}, Point{3.0}};
  const TraceReport pw =
      averaged_trace(Kernel(PaleyWienerBox{{1.0}}), Space(EuclideanLebesgue{1}), c1, radii, TracePath::known_diagonal);
  CHECK(pw.tr_minus == 1.0);
  CHECK(pw.tr_plus == 1.0);
  const std::vector<Point> c2{Point{0.0, 0.0}, Point{3.0, 1.0}};
  const TraceReport fock = averaged_trace(Kernel(FockGaussianNormalized{1}), Space(FockGaussian{1}).with_step(0.05),
                                          c2, radii, TracePath::quadrature);
  CHECK(std::abs(fock.tr_minus - 2.0 / kPi) <= 1e-3);
  CHECK(std::abs(fock.tr_plus - 2.0 / kPi) <= 1e-3);
  const TraceReport gabor =
      averaged_trace(Kernel(GaborGaussian{}), Space(PhasePlane{}), c2, radii, TracePath::known_diagonal);
  CHECK(gabor.tr_minus == 1.0);
  const Space limited(FockGaussian{1}, QuadratureRule{0.1, 5.0});
  CHECK_THROWS_AS(averaged_trace(Kernel(FockGaussianNormalized{1}), limited, c2, radii, TracePath::quadrature),
                  CensoredError);
}

TEST_CASE("finite section agrees with a brute-force oracle") {
  const Kernel k(PaleyWienerBox{{1.0}});
  const Space s = Space(EuclideanLebesgue{1}).with_step(0.1);
  for (double alpha : {0.8, 1.25}) {
    const PointSet lam = lattice_1d(alpha, 40.0);
    const FiniteSection fs = finite_section(k, lam, s, Point{0.0}, 8.0, 0.5);
    const auto ref = oracle::paley_wiener_section(alpha, 0.0, 8.0, 0.1, 0.5, 4.0);
    CHECK(fs.localization_eigenvalues.size() == ref.dim);
    CHECK(fs.samples.size() == ref.samples);
    CHECK(fs.report.lambda_min == Approx(ref.lower).epsilon(1e-8));
    CHECK(fs.report.lambda_max == Approx(ref.upper).epsilon(1e-8));
  }
}

TEST_CASE("finite-section failures") {
  const Kernel k(PaleyWienerBox{{1.0}});
  const Space s = Space(EuclideanLebesgue{1}).with_step(0.05);
  const PointSet lam = lattice_1d(1.0, 20.0);
  CHECK_THROWS_AS(finite_section(k, lam, s, Point{0.0}, 16.0, 0.5), CensoredError);
  CHECK_THROWS_AS(finite_section(k, lam, s, Point{0.0}, 0.05, 0.5), DegenerateWindowError);
  CHECK_THROWS_AS(finite_section(k, lam, s, Point{0.0}, 4.0, 1.5), InputError);
}

TEST_CASE("finite-section frame curves separate the two lattices") {
  const Kernel k(PaleyWienerBox{{1.0}});
  const Space s = Space(EuclideanLebesgue{1}).with_step(0.1);
  const std::vector<double> radii{8.0, 16.0};
  const auto dense = frame_curve(k, lattice_1d(0.8, 60.0), s, Point{0.0}, radii);
  const auto sparse = frame_curve(k, lattice_1d(1.25, 60.0), s, Point{0.0}, radii);
  for (const auto& p : dense) CHECK(p.lower >= 0.1);
  CHECK(sparse.back().lower < 1e-3);
}

TEST_CASE("Riesz duals") {
  const Kernel k(PaleyWienerBox{{1.0}});
  const Space s(EuclideanLebesgue{1});
  const PointSet lam = lattice_1d(1.25, 40.0);
  const DualFrameModel m = dual_system(k, lam, DualMode::riesz);
  std::vector<Point> probes;
  for (int i = 0; i < 50; ++i) probes.push_back(Point{-30.0 + 60.0 * (i + 0.37) / 50.0});
  const DualIdentityReport rep = dual_identities_check(m, k, lam, s, probes);
  CHECK(rep.pass);
  CHECK(rep.biorthogonality_residual <= 1e-8);
  CHECK(rep.projection_bounded);
  CHECK(rep.pairing_max <= 1.0 + 1e-8);
  CHECK(rep.pairing_min == Approx(1.0));
  CHECK(rep.dual_norm_sup == Approx(std::sqrt(1.0 / 0.8)).epsilon(0.05));
}

TEST_CASE("Riesz duals refuse a singular Gram matrix") {
  const PointSet lam = lattice_1d(0.5, 40.0);
  CHECK_THROWS_AS(dual_system(Kernel(PaleyWienerBox{{1.0}}), lam, DualMode::riesz), SingularMatrixError);
  CHECK_NOTHROW(dual_system(Kernel(PaleyWienerBox{{1.0}}), lam, DualMode::riesz, 1e-2));
}

TEST_CASE("frame duals reproduce the section kernel") {
  const Kernel k(PaleyWienerBox{{1.0}});
  const Space s = Space(EuclideanLebesgue{1}).with_step(0.1);
  const PointSet lam = lattice_1d(1.0, 40.0);
  const DualFrameModel m = dual_system(k, lam, DualMode::frame_finite_section, 0.0, &s, Point{0.0}, 16.0);
  std::vector<Point> probes;
  for (int i = 0; i < 40; ++i) probes.push_back(Point{-13.0 + 26.0 * (i + 0.5) / 40.0});
  const DualIdentityReport rep = dual_identities_check(m, k, lam, s, probes);
  CHECK(rep.identity_residual <= 1e-8);
  CHECK(rep.pairing_max <= 1.0 + 1e-8);
  CHECK(rep.pass);
  CHECK_THROWS_AS(dual_system(k, lam, DualMode::frame_finite_section), InputError);
}

TEST_CASE("matrix dump round trip") {
  const CMatrix a = random_hermitian(7, 3);
  const auto path = std::filesystem::temp_directory_path() / "rkhs_dump_test.bin";
  dump_matrix(a, path.string());
  const CMatrix b = load_matrix(path.string());
  CHECK(b.rows() == 7);
  CHECK((a - b).cwiseAbs().maxCoeff() == 0.0);
  std::filesystem::remove(path);
}

TEST_CASE("dimension-free ratios equal density over trace") {
  const Space s(PhasePlane{});
  const PointSet lam = square_lattice(s, std::sqrt(0.8), 20.0);
  const std::vector<Point> c{Point{0.1, 0.2}};
  const std::vector<double> radii{5.0, 10.0};
  const auto rows = dimension_free_ratios(Kernel(GaborGaussian{}), lam, s, c, radii, TracePath::known_diagonal);
  const DensityReport d = beurling_density(lam, s, c, radii);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].inf_ratio == Approx(d.rows[i].inf_ratio));
    CHECK(rows[i].max_identity_error <= 1e-12);
  }
}
