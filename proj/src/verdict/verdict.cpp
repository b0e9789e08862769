#include <algorithm>
#include <cmath>

#include "rkhs/errors.hpp"
#include "rkhs/verdict.hpp"

namespace rkhs {

std::string to_string(EmpiricalClass c) {
  switch (c) {
    case EmpiricalClass::sampling_like: return "sampling-like";
    case EmpiricalClass::interpolation_like: return "interpolation-like";
    case EmpiricalClass::both: return "both";
    case EmpiricalClass::neither: return "neither";
    case EmpiricalClass::inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

std::string to_string(CurveTrend t) {
  switch (t) {
    case CurveTrend::stable: return "stable";
    case CurveTrend::collapse: return "collapse";
    case CurveTrend::below_floor: return "below_floor";
    case CurveTrend::unclear: return "unclear";
    case CurveTrend::missing: return "missing";
  }
  return "missing";
}

CurveTrend curve_trend(const std::vector<BoundPoint>& curve, double floor, const ClassifyThresholds& t) {
  if (curve.size() < t.min_windows) return CurveTrend::missing;
  double lo = curve.front().lower, hi = curve.front().lower;
  for (const auto& p : curve) {
    lo = std::min(lo, p.lower);
    hi = std::max(hi, p.lower);
  }
  if (lo >= floor && hi <= t.stable_ratio * lo) return CurveTrend::stable;
  if (hi < floor) return CurveTrend::below_floor;
  const double first = curve.front().lower, last = curve.back().lower;
  if (first > 0.0 && last * t.collapse_factor <= first) return CurveTrend::collapse;
  return CurveTrend::unclear;
}

EmpiricalClass classify_empirically(const std::vector<BoundPoint>& riesz_curve,
                                    const std::vector<BoundPoint>& frame_curve, const ClassifyThresholds& t,
                                    bool axiom_test_kernel) {
  if (axiom_test_kernel) return EmpiricalClass::inconclusive;
  const CurveTrend r = curve_trend(riesz_curve, t.riesz_floor, t);
  const CurveTrend f = curve_trend(frame_curve, t.frame_floor, t);
  if (r == CurveTrend::missing && f == CurveTrend::missing) return EmpiricalClass::inconclusive;
  if (r == CurveTrend::unclear || f == CurveTrend::unclear) return EmpiricalClass::inconclusive;
  const bool rs = r == CurveTrend::stable, fs = f == CurveTrend::stable;
  if (rs && fs) return EmpiricalClass::both;
  if (rs) return EmpiricalClass::interpolation_like;
  if (fs) return EmpiricalClass::sampling_like;
  if (r != CurveTrend::missing && f != CurveTrend::missing) return EmpiricalClass::neither;
  return EmpiricalClass::inconclusive;
}

double trend_slack(double base, double slope, double r_max) {
  if (!(r_max > 0.0)) throw InputError("largest radius must be positive");
  return base + std::abs(slope) / r_max;
}

VerdictReport density_vs_trace(const VerdictInputs& in) {
  if (in.density.rows.empty() || in.trace.rows.empty()) throw InputError("verdict needs density and trace rows");
  VerdictReport v;
  v.d_minus = in.density.d_minus;
  v.d_plus = in.density.d_plus;
  v.d_trend_minus = in.density.trend_minus;
  v.d_trend_plus = in.density.trend_plus;
  v.tr_minus = in.trace.tr_minus;
  v.tr_plus = in.trace.tr_plus;
  v.tr_trend_minus = in.trace.trend_minus;
  v.tr_trend_plus = in.trace.trend_plus;
  v.riesz_curve = in.riesz_curve;
  v.frame_curve = in.frame_curve;
  v.riesz_trend = curve_trend(in.riesz_curve, in.thresholds.riesz_floor, in.thresholds);
  v.frame_trend = curve_trend(in.frame_curve, in.thresholds.frame_floor, in.thresholds);
  v.empirical_class = classify_empirically(in.riesz_curve, in.frame_curve, in.thresholds, in.axiom_test_kernel);
  v.dimension_free = in.dimension_free;
  v.base_slack = in.base_slack;
  v.r_max = in.density.rows.back().radius;
  v.audit = in.audit;

  const double s_minus = trend_slack(in.base_slack, in.density.trend_minus, v.r_max);
  const double s_plus = trend_slack(in.base_slack, in.density.trend_plus, v.r_max);
  for (InequalityCheck* c : {&v.sampling_condition, &v.interpolation_condition}) {
    c->d_minus = v.d_minus;
    c->d_plus = v.d_plus;
    c->tr_minus = v.tr_minus;
    c->tr_plus = v.tr_plus;
    c->slack_minus = s_minus;
    c->slack_plus = s_plus;
  }
  v.sampling_condition.name = "sampling_condition";
  v.interpolation_condition.name = "interpolation_condition";

  const EmpiricalClass ec = v.empirical_class;
  const bool sampling = ec == EmpiricalClass::sampling_like || ec == EmpiricalClass::both;
  const bool interpolation = ec == EmpiricalClass::interpolation_like || ec == EmpiricalClass::both;
  v.applicable = in.audit.interpolation_applicable;
  if (sampling && in.audit.sampling_applicable) {
    auto& c = v.sampling_condition;
    c.evaluated = true;
    c.holds = c.d_minus >= c.tr_minus - s_minus && c.d_plus >= c.tr_plus - s_plus;
  }
  if (interpolation && in.audit.interpolation_applicable) {
    auto& c = v.interpolation_condition;
    c.evaluated = true;
    c.holds = c.d_minus <= c.tr_minus + s_minus && c.d_plus <= c.tr_plus + s_plus;
  }
  v.violated = (v.sampling_condition.evaluated && !v.sampling_condition.holds) ||
               (v.interpolation_condition.evaluated && !v.interpolation_condition.holds);
  return v;
}

}  // namespace rkhs
