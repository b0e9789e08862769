#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rkhs/geometry.hpp"
#include "rkhs/kernels.hpp"
#include "rkhs/spectral.hpp"

namespace rkhs {

inline constexpr const char* kReportSchemaVersion = "1.0";

struct AxiomVerdict {
  std::string name;
  bool pass = false;
  bool censored = false;
  std::string statistic_name;
  double statistic = 0.0;
  std::vector<CurvePoint> curve;
  std::string note;
};

struct AxiomAudit {
  AxiomVerdict ndb, wad, d, wl, hap;
  std::optional<AxiomVerdict> poly_decay;
  std::optional<WitnessBound> witness;
  std::optional<SeparationReport> separation;
  std::optional<TailReport> wl_tail, hap_tail;
  /// NDB, WAD, D, WL and HAP all pass.
  bool sampling_applicable = false;
  /// NDB, WAD, D and WL pass; HAP is not needed.
  bool interpolation_applicable = false;
  std::vector<std::string> failures;
};

struct AuditSettings {
  std::vector<Point> centers;  // for NDB, WAD, D, WL, HAP
  double ndb_radius = 1.0;
  double ndb_floor = 1e-9;
  std::vector<double> wad_radii;  // empty: 1..horizon
  double wad_tol = 0.05;
  std::vector<double> wl_radii;
  std::vector<double> hap_radii;
  double tail_eps = 0.01;
  double separation_rho = 1.0;
  struct PolyDecay {
    double sigma = 2.0;
    double c = 1.0;
    std::vector<double> radii;
    std::size_t pairs = 1000;
  };
  std::optional<PolyDecay> poly_decay;
  std::uint64_t seed = 0;
};

/// Radii 1, 2, ..., horizon for the WAD curve.
std::vector<double> default_wad_radii(const Space& space);

AxiomAudit hypothesis_audit(const Space& space, const Kernel& kernel, const PointSet& lambda,
                            const AuditSettings& settings);

enum class EmpiricalClass { sampling_like, interpolation_like, both, neither, inconclusive };

std::string to_string(EmpiricalClass c);

struct ClassifyThresholds {
  double riesz_floor = 1e-2;
  double frame_floor = 1e-2;
  double stable_ratio = 2.0;     // max / min across windows
  double collapse_factor = 10.0; // first / last
  std::size_t min_windows = 3;
};

enum class CurveTrend { stable, collapse, below_floor, unclear, missing };

std::string to_string(CurveTrend t);

CurveTrend curve_trend(const std::vector<BoundPoint>& curve, double floor, const ClassifyThresholds& t);

EmpiricalClass classify_empirically(const std::vector<BoundPoint>& riesz_curve,
                                    const std::vector<BoundPoint>& frame_curve, const ClassifyThresholds& t,
                                    bool axiom_test_kernel = false);

struct InequalityCheck {
  std::string name;   // "sampling_condition" or "interpolation_condition"
  bool evaluated = false;
  double d_minus = 0.0, d_plus = 0.0;
  double tr_minus = 0.0, tr_plus = 0.0;
  double slack_minus = 0.0, slack_plus = 0.0;
  bool holds = true;
};

struct VerdictInputs {
  DensityReport density;
  TraceReport trace;
  std::vector<BoundPoint> riesz_curve;
  std::vector<BoundPoint> frame_curve;
  std::vector<DimensionFreeRow> dimension_free;
  AxiomAudit audit;
  ClassifyThresholds thresholds;
  double base_slack = 0.05;
  bool axiom_test_kernel = false;
};

struct VerdictReport {
  double d_minus = 0.0, d_plus = 0.0, d_trend_minus = 0.0, d_trend_plus = 0.0;
  double tr_minus = 0.0, tr_plus = 0.0, tr_trend_minus = 0.0, tr_trend_plus = 0.0;
  std::vector<BoundPoint> riesz_curve, frame_curve;
  CurveTrend riesz_trend = CurveTrend::missing, frame_trend = CurveTrend::missing;
  EmpiricalClass empirical_class = EmpiricalClass::inconclusive;
  InequalityCheck sampling_condition, interpolation_condition;
  std::vector<DimensionFreeRow> dimension_free;
  double base_slack = 0.05;
  double r_max = 0.0;
  AxiomAudit audit;
  bool applicable = false;
  bool violated = false;
};

/// Slack at the largest radius: base + |slope against 1/r| / r_max.
double trend_slack(double base, double slope, double r_max);

VerdictReport density_vs_trace(const VerdictInputs& in);

}  // namespace rkhs
