#include <charconv>
#include <cmath>
#include <sstream>

#include "rkhs/errors.hpp"
#include "rkhs/harness.hpp"

namespace rkhs {

namespace {

ojson curve_json(const std::vector<CurvePoint>& c) {
  ojson a = ojson::array();
  for (const auto& p : c) a.push_back({{"r", p.r}, {"value", p.value}});
  return a;
}

ojson verdict_json(const AxiomVerdict& v) {
  return {{"name", v.name},
          {"pass", v.pass},
          {"censored", v.censored},
          {"statistic_name", v.statistic_name},
          {"statistic", v.statistic},
          {"curve", curve_json(v.curve)},
          {"note", v.note}};
}

ojson check_json(const InequalityCheck& c) {
  return {{"name", c.name},
          {"evaluated", c.evaluated},
          {"holds", c.evaluated ? ojson(c.holds) : ojson(nullptr)},
          {"D_minus", c.d_minus},
          {"D_plus", c.d_plus},
          {"tr_minus", c.tr_minus},
          {"tr_plus", c.tr_plus},
          {"slack_minus", c.slack_minus},
          {"slack_plus", c.slack_plus}};
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

CsvWriter::CsvWriter(std::vector<std::string> header) : header_(std::move(header)) {}

CsvWriter& CsvWriter::row(const std::vector<std::string>& cells) {
  if (cells.size() != header_.size()) throw InputError("csv row width does not match the header");
  for (const auto& c : cells)
    if (c.find_first_of(",\n\"") != std::string::npos) throw InputError("csv cell contains a separator: " + c);
  rows_.push_back(cells);
  return *this;
}

std::string CsvWriter::str() const {
  std::ostringstream out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
    out << '\n';
  };
  line(header_);
  for (const auto& r : rows_) line(r);
  return out.str();
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      cells.push_back(line.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (!rows.empty() && cells.size() != rows.front().size())
      throw InputError("csv row " + std::to_string(rows.size()) + " has " + std::to_string(cells.size()) +
                       " cells, header has " + std::to_string(rows.front().size()));
    rows.push_back(std::move(cells));
  }
  return rows;
}

ojson to_json(const DensityReport& r) {
  ojson rows = ojson::array();
  for (const auto& row : r.rows)
    rows.push_back({{"radius", row.radius},
                    {"inf_ratio", row.inf_ratio},
                    {"sup_ratio", row.sup_ratio},
                    {"centers_used", row.centers_used},
                    {"centers_censored", row.centers_censored}});
  return {{"D_minus", r.d_minus},
          {"D_plus", r.d_plus},
          {"trend_minus", r.trend_minus},
          {"trend_plus", r.trend_plus},
          {"rows", rows}};
}

ojson to_json(const TraceReport& r) {
  ojson rows = ojson::array();
  for (const auto& row : r.rows)
    rows.push_back({{"radius", row.radius},
                    {"inf_avg", row.inf_avg},
                    {"sup_avg", row.sup_avg},
                    {"centers_used", row.centers_used},
                    {"centers_censored", row.centers_censored}});
  return {{"path", r.path == TracePath::known_diagonal ? "known_diagonal" : "quadrature"},
          {"tr_minus", r.tr_minus},
          {"tr_plus", r.tr_plus},
          {"trend_minus", r.trend_minus},
          {"trend_plus", r.trend_plus},
          {"rows", rows}};
}

ojson to_json(const SpectralReport& r, bool with_eigenvalues) {
  ojson j{{"lambda_min", r.lambda_min},
          {"lambda_max", r.lambda_max},
          {"trace", r.trace},
          {"plunge_count", r.plunge_count},
          {"condition_flag", r.condition_flag},
          {"ridge", r.ridge},
          {"warnings", r.warnings}};
  if (with_eigenvalues) j["eigenvalues"] = r.eigenvalues;
  return j;
}

ojson to_json(const std::vector<BoundPoint>& curve) {
  ojson a = ojson::array();
  for (const auto& p : curve)
    a.push_back({{"window", p.window}, {"size", p.size}, {"lower", p.lower}, {"upper", p.upper}});
  return a;
}

ojson to_json(const AxiomAudit& a) {
  ojson j;
  ojson axioms = ojson::array();
  for (const AxiomVerdict* v : {&a.ndb, &a.wad, &a.d, &a.wl, &a.hap}) axioms.push_back(verdict_json(*v));
  j["axioms"] = axioms;
  j["poly_decay"] = a.poly_decay ? verdict_json(*a.poly_decay) : ojson(nullptr);
  if (a.witness) {
    j["witness"] = {{"c", a.witness->c},
                    {"bound", a.witness->bound},
                    {"vacuous", a.witness->vacuous},
                    {"consistent", a.witness->consistent}};
  } else {
    j["witness"] = nullptr;
  }
  if (a.separation) {
    j["separation"] = {{"rho", a.separation->rho},
                       {"c_rho", a.separation->c_rho},
                       {"pass", a.separation->pass},
                       {"centers_used", a.separation->centers_used}};
  } else {
    j["separation"] = nullptr;
  }
  j["sampling_applicable"] = a.sampling_applicable;
  j["interpolation_applicable"] = a.interpolation_applicable;
  j["failures"] = a.failures;
  return j;
}

ojson to_json(const VerdictReport& v, const ClassifyThresholds& t) {
  ojson j;
  j["schema_version"] = kReportSchemaVersion;
  j["D_minus"] = v.d_minus;
  j["D_plus"] = v.d_plus;
  j["D_trend_minus"] = v.d_trend_minus;
  j["D_trend_plus"] = v.d_trend_plus;
  j["tr_minus"] = v.tr_minus;
  j["tr_plus"] = v.tr_plus;
  j["tr_trend_minus"] = v.tr_trend_minus;
  j["tr_trend_plus"] = v.tr_trend_plus;
  j["riesz_curve"] = to_json(v.riesz_curve);
  j["frame_curve"] = to_json(v.frame_curve);
  j["riesz_trend"] = to_string(v.riesz_trend);
  j["frame_trend"] = to_string(v.frame_trend);
  j["empirical_class"] = to_string(v.empirical_class);
  j["classifier"] = {{"riesz_floor", t.riesz_floor},
                     {"frame_floor", t.frame_floor},
                     {"stable_ratio", t.stable_ratio},
                     {"collapse_factor", t.collapse_factor},
                     {"min_windows", t.min_windows},
                     {"definition",
                      "finite-scale proxies: a curve is stable when every lower bound clears its floor and "
                      "max/min <= stable_ratio; it collapses when first/last >= collapse_factor and sits below_floor "
                      "when every lower bound is under its floor; both failing modes count against the class"}};
  j["inequality_checks"] = {check_json(v.sampling_condition), check_json(v.interpolation_condition)};
  ojson df = ojson::array();
  for (const auto& r : v.dimension_free)
    df.push_back({{"radius", r.radius},
                  {"inf_ratio", r.inf_ratio},
                  {"sup_ratio", r.sup_ratio},
                  {"max_identity_error", r.max_identity_error}});
  j["dimension_free_ratios"] = df;
  j["slack"] = {{"base", v.base_slack},
                {"r_max", v.r_max},
                {"minus", v.sampling_condition.slack_minus},
                {"plus", v.sampling_condition.slack_plus},
                {"formula", "base + |trend| / r_max"}};
  j["applicable"] = v.applicable;
  j["violated"] = v.violated;
  return j;
}

}  // namespace rkhs
