#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "oracles/finite_section.hpp"
#include "oracles/lattice.hpp"
#include "rkhs/harness.hpp"

using namespace rkhs;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double budget_s;  // 0: none
  std::function<Outcome()> body;
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::string values(const std::vector<BoundPoint>& c) {
  std::string s;
  for (const auto& p : c) s += (s.empty() ? "" : " ") + fmt("%.3g", p.lower);
  return "[" + s + "]";
}

double ratio(const std::vector<BoundPoint>& c) {
  double lo = c.front().lower, hi = lo;
  for (const auto& p : c) {
    lo = std::min(lo, p.lower);
    hi = std::max(hi, p.lower);
  }
  return hi / lo;
}

double min_lower(const std::vector<BoundPoint>& c) {
  double lo = c.front().lower;
  for (const auto& p : c) lo = std::min(lo, p.lower);
  return lo;
}

PointSet line_lattice(double step, double window) {
  PointSetSpec spec;
  spec.steps = {step};
  spec.window = window;
  return generate_pointset(spec, Space(EuclideanLebesgue{1}), 0);
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

const Kernel kSinc(PaleyWienerBox{{1.0}});
const Space kLine(EuclideanLebesgue{1});

Outcome sinc_orthonormality() {
  const PointSet z = line_lattice(1.0, 32.0);
  const SpectralReport r = riesz_bounds(kSinc, z);
  double dev = 0.0;
  for (double v : r.eigenvalues) dev = std::max(dev, std::abs(v - 1.0));
  return {z.size() == 65 && r.eigenvalues.size() == 65 && dev <= 1e-9,
          std::to_string(r.eigenvalues.size()) + " eigenvalues, max |lambda - 1| = " + fmt("%.2e", dev)};
}

Outcome landau_sampling() {
  const std::vector<double> radii{8.0, 16.0, 32.0};
  const Space s = kLine.with_step(0.1);
  double cert = 0.0;
  std::vector<BoundPoint> curves[2];
  const double alphas[2] = {0.8, 1.25};
  for (int i = 0; i < 2; ++i) {
    const PointSet lam = line_lattice(alphas[i], 120.0);
    curves[i] = frame_curve(kSinc, lam, s, Point{0.0}, radii, 0.5, 0.5);
    for (std::size_t k = 0; k < radii.size(); ++k) {
      const auto ref = oracle::paley_wiener_section(alphas[i], 0.0, radii[k], 0.1, 0.5, 0.5 * radii[k]);
      cert = std::max(cert, std::abs(curves[i][k].lower - ref.lower) / std::max(1.0, std::abs(ref.lower)));
    }
  }
  const auto& d = curves[0];
  const auto& sp = curves[1];
  const bool dense_ok = min_lower(d) >= 0.1 && ratio(d) <= 2.0;
  const bool sparse_ok = sp.back().lower < 1e-3 && sp.front().lower >= 10.0 * sp.back().lower;
  const bool cert_ok = cert <= 1e-8;
  return {dense_ok && sparse_ok && cert_ok, "A_est(0.8) " + values(d) + ", A_est(1.25) " + values(sp) +
                                                ", oracle deviation " + fmt("%.1e", cert)};
}

Outcome landau_interpolation() {
  const std::vector<double> w{16.0, 32.0, 64.0};
  const auto sparse = riesz_curve(kSinc, line_lattice(1.25, 120.0), kLine, Point{0.0}, w);
  const auto dense = riesz_curve(kSinc, line_lattice(0.8, 120.0), kLine, Point{0.0}, w);
  const bool ok = min_lower(sparse) > 1e-2 && ratio(sparse) <= 2.0 && dense.front().lower >= 10.0 * dense.back().lower &&
                  dense.back().lower < 1e-2;
  return {ok, "lambda_min(1.25) " + values(sparse) + ", lambda_min(0.8) " + values(dense)};
}

Outcome traces() {
  const std::vector<double> radii{2.0, 4.0, 8.0};
  const std::vector<Point> c1{Point{0.0}, Point{3.0}};
  const std::vector<Point> c2{Point{0.0, 0.0}, Point{3.0, 1.0}};
  const TraceReport pw = averaged_trace(kSinc, kLine, c1, radii, TracePath::known_diagonal);
  const std::vector<double> r8{8.0};
  const TraceReport fock = averaged_trace(Kernel(FockGaussianNormalized{1}), Space(FockGaussian{1}).with_step(0.05),
                                          c2, r8, TracePath::quadrature);
  const TraceReport gabor = averaged_trace(Kernel(GaborGaussian{}), Space(PhasePlane{}), c2, radii,
                                           TracePath::known_diagonal);
  const double ef = std::max(std::abs(fock.tr_minus - 2.0 / kPi), std::abs(fock.tr_plus - 2.0 / kPi));
  const bool ok = pw.tr_minus == 1.0 && pw.tr_plus == 1.0 && ef <= 1e-3 && gabor.tr_minus == 1.0 &&
                  gabor.tr_plus == 1.0;
  return {ok, "PW " + fmt("%.15g", pw.tr_minus) + "/" + fmt("%.15g", pw.tr_plus) + ", Fock error " + fmt("%.2e", ef) +
                  ", Gabor " + fmt("%.15g", gabor.tr_minus) + "/" + fmt("%.15g", gabor.tr_plus)};
}

Outcome localization() {
  const Space s = kLine.with_step(0.05);
  bool ok = true;
  std::string d;
  for (double r : {4.0, 8.0, 16.0}) {
    const Localization loc = localization_operator(kSinc, s, Point{0.0}, r);
    const RVector v = eigvalsh(HermitianMatrix(loc.matrix));
    const double trace = loc.matrix.trace().real();
    const double tol = quadrature_tolerance(s, Point{0.0}, r);
    const SpectralReport rep = spectral_report(v, trace);
    const bool here = v.minCoeff() >= -1e-6 && v.maxCoeff() <= 1.0 + 1e-6 && std::abs(trace - 2.0 * r) <= tol &&
                      std::abs(static_cast<double>(rep.plunge_count) - 2.0 * r) <= 2.0;
    ok = ok && here;
    d += (d.empty() ? "" : "; ") + fmt("r=%g:", r) + " spectrum [" + fmt("%.1e", v.minCoeff()) + ", " +
         fmt("%.9f", v.maxCoeff()) + "] trace " + fmt("%.6f", trace) + " plunge " + std::to_string(rep.plunge_count);
  }
  return {ok, d};
}

Outcome fock_critical() {
  const std::vector<double> w{6.0, 9.0, 12.0};
  const Kernel k(FockGaussianNormalized{1});
  const Space s(FockGaussian{1});
  std::vector<BoundPoint> c[2];
  const char* names[2] = {"fock_s_1.2", "fock_s_0.8"};
  for (int i = 0; i < 2; ++i) {
    const ExperimentConfig cfg = canonical_config(names[i]);
    c[i] = riesz_curve(k, generate_pointset(cfg.pointset, s, 0), s, Point{0.0, 0.0}, w);
  }
  const bool ok = min_lower(c[0]) >= 1e-2 && ratio(c[0]) <= 2.0 && c[1].front().lower >= 10.0 * c[1].back().lower;
  return {ok, "lambda_min(s=1.2) " + values(c[0]) + ", lambda_min(s=0.8) " + values(c[1])};
}

Outcome gabor_critical() {
  const fs::path root = fs::temp_directory_path() / "rkhs_acceptance_gabor";
  fs::remove_all(root);
  const RunResult lo = run(canonical_config("gabor_ab_0.8"), RunOptions{Stage::verdict, root / "a", {}});
  const RunResult hi = run(canonical_config("gabor_ab_1.2"), RunOptions{Stage::verdict, root / "b", {}});
  fs::remove_all(root);
  if (!lo.verdict || !hi.verdict) return {false, "verdict missing: " + lo.message + hi.message};
  const VerdictReport& a = *lo.verdict;
  const VerdictReport& b = *hi.verdict;
  const bool ok = a.empirical_class == EmpiricalClass::sampling_like &&
                  a.d_minus >= a.tr_minus - a.sampling_condition.slack_minus &&
                  b.riesz_trend == CurveTrend::stable && b.d_plus <= b.tr_plus + b.interpolation_condition.slack_plus &&
                  b.frame_trend == CurveTrend::collapse;
  return {ok, "ab=0.8 " + to_string(a.empirical_class) + " D- " + fmt("%.4f", a.d_minus) + "; ab=1.2 Riesz " +
                  to_string(b.riesz_trend) + " D+ " + fmt("%.4f", b.d_plus) + " A_est " + to_string(b.frame_trend) +
                  " " + values(b.frame_curve)};
}

Outcome geometry_axioms() {
  struct Case {
    const char* name;
    Space space;
    Point center;
    bool expect;
  };
  const std::vector<Case> cases{{"R", Space(EuclideanLebesgue{1}), Point{0.0}, true},
                                {"R^2", Space(EuclideanLebesgue{2}), Point{0.0, 0.0}, true},
                                {"Z", Space(IntegerWordMetric{1}), Point{0.0}, true},
                                {"Fock", Space(FockGaussian{1}), Point{0.0, 0.0}, true},
                                {"log", Space(LogMetricLine{}), Point{0.0}, false},
                                {"H", Space(HyperbolicUpperHalfPlane{}), Point{0.0, 1.0}, false}};
  bool ok = true;
  std::string d;
  for (const auto& c : cases) {
    const std::vector<Point> centers{c.center};
    const auto radii = default_wad_radii(c.space);
    const WadResult w = check_wad(c.space, centers, radii);
    bool here = w.pass == c.expect;
    if (c.expect) {
      here = here && w.ratio_curve.back().value < 0.05;
    } else {
      for (const auto& p : w.ratio_curve)
        if (p.r >= 5.0) here = here && p.value >= 1.0;
    }
    ok = ok && here;
    d += (d.empty() ? "" : "; ") + std::string(c.name) + (w.pass ? " pass " : " fail ") +
         fmt("%.3g", w.ratio_curve.back().value);
  }
  return {ok, d};
}

Outcome dual_identities() {
  const Space s = kLine.with_step(0.1);
  std::vector<Point> frame_probes, riesz_probes;
  for (int i = 0; i < 100; ++i) {
    frame_probes.push_back(Point{-13.0 + 26.0 * (i + 0.5) / 100.0});
    riesz_probes.push_back(Point{-30.0 + 60.0 * (i + 0.37) / 100.0});
  }
  const PointSet z = line_lattice(1.0, 40.0);
  const DualFrameModel fm = dual_system(kSinc, z, DualMode::frame_finite_section, 0.0, &s, Point{0.0}, 16.0);
  const DualIdentityReport f = dual_identities_check(fm, kSinc, z, s, frame_probes);
  const PointSet sparse = line_lattice(1.25, 40.0);
  const DualFrameModel rm = dual_system(kSinc, sparse, DualMode::riesz);
  const DualIdentityReport r = dual_identities_check(rm, kSinc, sparse, kLine, riesz_probes);
  const bool ok = f.probes.size() == 100 && f.censored == 0 && f.identity_residual <= 1e-8 &&
                  r.probes.size() == 100 && r.censored == 0 && r.projection_bounded &&
                  r.biorthogonality_residual <= 1e-8 && f.pairing_max <= 1.0 + 1e-8 && r.pairing_max <= 1.0 + 1e-8;
  return {ok, "frame identity residual " + fmt("%.1e", f.identity_residual) + ", projection in [" +
                  fmt("%.6f", r.projection_min) + ", " + fmt("%.6f", r.projection_max) + "], biorthogonality " +
                  fmt("%.1e", r.biorthogonality_residual) + ", pairing max " +
                  fmt("%.12f", std::max(f.pairing_max, r.pairing_max))};
}

Outcome poly_decay_audit() {
  const std::vector<Point> centers{Point{0.0}, Point{0.5}};
  const std::vector<double> radii{1, 2, 5, 10, 20, 50};
  const PolyDecayResult good =
      check_poly_decay_hypothesis(Kernel(SyntheticPolyDecay{2.0, 1}), kLine, 2.0, 2.0, centers, radii);
  double err = 0.0;
  for (const auto& p : good.tail_curve) err = std::max(err, std::abs(p.value - 2.0 * std::pow(1.0 + p.r, -3.0) / 3.0));
  const PolyDecayResult bad =
      check_poly_decay_hypothesis(Kernel(SyntheticPolyDecay{0.4, 1}), kLine, 0.4, 2.0, centers, radii);
  const bool ok = good.pass && err <= 1e-6 && !bad.pass && !bad.tail_finite;
  return {ok, "sigma=2 " + std::string(good.pass ? "passes" : "fails") + ", closed-form error " + fmt("%.1e", err) +
                  ", tail at r=50 " + fmt("%.3e", good.tail_curve.back().value) + "; sigma=0.4 " +
                  (bad.pass ? "passes" : "fails") + ", tail " + fmt("%g", bad.tail_curve.front().value)};
}

std::vector<int> canonical_codes;
fs::path canonical_root = fs::temp_directory_path() / "rkhs_acceptance_canonical";

Outcome determinism() {
  fs::remove_all(canonical_root);
  std::size_t compared = 0;
  std::vector<std::string> diffs;
  for (const auto& n : canonical_names()) {
    const ExperimentConfig c = canonical_config(n);
    const RunResult a = run(c, RunOptions{Stage::all, canonical_root / n / "1", {}});
    run(c, RunOptions{Stage::all, canonical_root / n / "2", {}});
    canonical_codes.push_back(a.exit_code);
    for (const auto& e : fs::recursive_directory_iterator(canonical_root / n / "1")) {
      if (!e.is_regular_file() || e.path().filename() == "manifest.json") continue;
      const fs::path rel = fs::relative(e.path(), canonical_root / n / "1");
      if (slurp(e.path()) != slurp(canonical_root / n / "2" / rel)) diffs.push_back(n + "/" + rel.string());
      ++compared;
    }
  }
  fs::remove_all(canonical_root);
  std::string d = std::to_string(compared) + " files compared across " + std::to_string(canonical_names().size()) +
                  " configs, " + std::to_string(diffs.size()) + " differ";
  for (const auto& x : diffs) d += " " + x;
  return {diffs.empty() && compared > 0, d};
}

Outcome soundness() {
  if (canonical_codes.size() != canonical_names().size()) return {false, "canonical runs missing"};
  bool ok = true;
  std::string d;
  for (std::size_t i = 0; i < canonical_codes.size(); ++i) {
    ok = ok && canonical_codes[i] != exit_code::violated;
    d += (d.empty() ? "" : " ") + canonical_names()[i] + "=" + std::to_string(canonical_codes[i]);
  }
  return {ok, "exit codes " + d};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "sinc orthonormality", 1.0, sinc_orthonormality},
      {2, "Landau sampling side", 120.0, landau_sampling},
      {3, "Landau interpolation side", 60.0, landau_interpolation},
      {4, "trace estimates", 60.0, traces},
      {5, "localization spectra", 120.0, localization},
      {6, "Fock critical density", 120.0, fock_critical},
      {7, "Gabor critical density", 180.0, gabor_critical},
      {8, "geometry axioms", 10.0, geometry_axioms},
      {9, "dual-frame identities", 30.0, dual_identities},
      {10, "decay hypothesis audit", 10.0, poly_decay_audit},
      {11, "determinism", 0.0, determinism},
      {12, "soundness tripwire", 0.0, soundness},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = c.budget_s == 0.0 || secs < c.budget_s;
    const bool pass = o.pass && in_time;
    failed += !pass;
    std::string budget = c.budget_s > 0.0 ? fmt(" < %gs", c.budget_s) : "";
    std::printf("criterion %2d %s: %s (%.3fs%s) %s%s\n", c.id, c.name, pass ? "PASS" : "FAIL", secs, budget.c_str(),
                o.detail.c_str(), in_time ? "" : " [over budget]");
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
