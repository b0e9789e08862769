#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include "rkhs/errors.hpp"
#include "rkhs/harness.hpp"

namespace rkhs {

namespace fs = std::filesystem;

namespace {

const std::vector<std::pair<Stage, std::string>> kStages = {
    {Stage::audit, "audit"},     {Stage::density, "density"}, {Stage::trace, "trace"},
    {Stage::gram, "gram"},       {Stage::framebounds, "framebounds"}, {Stage::locspec, "locspec"},
    {Stage::verdict, "verdict"}, {Stage::all, "all"}};

const std::vector<std::string> kSpectralColumns = {"experiment_id", "center", "r", "lambda_min",
                                                   "lambda_max",    "trace",  "plunge_count"};

std::string fmt(double v) { return format_double(v); }

std::string point_cell(const Point& p) { return p.to_string(' '); }

// Thrown by a stage; carries the stage name for the abort message.
struct StageFailure {
  std::string stage;
  int code;
  std::string what;
};

class Pipeline {
 public:
  Pipeline(const ExperimentConfig& c, const RunOptions& opt)
      : c_(c), opt_(opt), space_(make_space(c)), kernel_(make_kernel(c)) {}

  RunResult run();

 private:
  bool wants(Stage s) const {
    if (opt_.stage == Stage::all) return true;
    if (opt_.stage == Stage::verdict) return s != Stage::locspec;
    return opt_.stage == s;
  }
  bool explicit_stage(Stage s) const { return opt_.stage == s; }

  template <class F>
  void timed(const std::string& name, F&& f) {
    const auto t0 = std::chrono::steady_clock::now();
    try {
      f();
    } catch (const InputError& e) {
      throw StageFailure{name, exit_code::input_error, e.what()};
    } catch (const std::exception& e) {
      throw StageFailure{name, exit_code::failure, e.what()};
    }
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
    result_.timings.push_back({name, dt.count()});
  }

  void add_csv(const std::string& name, const CsvWriter& w) {
    files_[fs::path(c_.outputs.csv_dir) / name] = w.str();
  }

  Point center_or_default(const std::optional<Point>& p) const { return p ? *p : window_center(c_.pointset, space_); }

  std::vector<Point> audit_centers() const {
    return c_.audit.centers.empty() ? std::vector<Point>{window_center(c_.pointset, space_)} : c_.audit.centers;
  }
  std::vector<Point> trace_centers() const {
    return c_.trace.centers.empty() ? std::vector<Point>{window_center(c_.pointset, space_)} : c_.trace.centers;
  }
  std::vector<double> trace_radii() const { return c_.trace.radii.empty() ? c_.radii : c_.trace.radii; }

  void stage_audit();
  void stage_density();
  void stage_trace();
  void stage_gram();
  void stage_framebounds();
  void stage_locspec();
  void stage_verdict();

  void tail_csv(const std::string& name, const TailReport& t);
  void spectral_rows(CsvWriter& w, const Point& center, const std::vector<BoundPoint>& curve,
                     const std::vector<SpectralReport>& reps);
  void write_outputs();
  void remove_outputs();
  ojson manifest(const std::string& status) const;

  const ExperimentConfig& c_;
  const RunOptions& opt_;
  Space space_;
  Kernel kernel_;
  std::optional<PointSet> lambda_;
  std::optional<DensityReport> density_;
  std::optional<TraceReport> trace_;
  std::vector<BoundPoint> riesz_, frame_;
  RunResult result_;
  std::map<fs::path, std::string> files_;
  std::vector<std::pair<fs::path, CMatrix>> matrices_;
};

void Pipeline::tail_csv(const std::string& name, const TailReport& t) {
  CsvWriter w({"center_index", "r", "tail_value"});
  for (const auto& row : t.rows) w.row({std::to_string(row.center_index), fmt(row.r), fmt(row.censored ? NAN : row.value)});
  add_csv(name, w);
}

void Pipeline::spectral_rows(CsvWriter& w, const Point& center, const std::vector<BoundPoint>& curve,
                             const std::vector<SpectralReport>& reps) {
  for (std::size_t i = 0; i < curve.size(); ++i)
    w.row({c_.experiment_id, point_cell(center), fmt(curve[i].window), fmt(reps[i].lambda_min),
           fmt(reps[i].lambda_max), fmt(reps[i].trace), std::to_string(reps[i].plunge_count)});
}

void Pipeline::stage_audit() {
  AuditSettings s;
  s.centers = audit_centers();
  s.ndb_radius = c_.audit.ndb_radius;
  s.ndb_floor = c_.thresholds.ndb_floor;
  s.wad_radii = c_.audit.wad_radii;
  s.wad_tol = c_.thresholds.wad_tol;
  s.wl_radii = c_.audit.wl_radii;
  s.hap_radii = c_.audit.hap_radii;
  s.tail_eps = c_.thresholds.tail_eps;
  s.separation_rho = c_.audit.separation_rho;
  s.poly_decay = c_.audit.poly_decay;
  s.seed = c_.seed;
  const AxiomAudit a = hypothesis_audit(space_, kernel_, *lambda_, s);
  result_.report["audit"] = to_json(a);
  if (a.wl_tail) tail_csv("wl_tail.csv", *a.wl_tail);
  if (a.hap_tail) tail_csv("hap_tail.csv", *a.hap_tail);
  CsvWriter w({"axiom", "r", "value"});
  for (const AxiomVerdict* v : {&a.ndb, &a.wad, &a.d, &a.wl, &a.hap})
    for (const auto& p : v->curve) w.row({v->name, fmt(p.r), fmt(p.value)});
  if (a.poly_decay)
    for (const auto& p : a.poly_decay->curve) w.row({a.poly_decay->name, fmt(p.r), fmt(p.value)});
  add_csv("audit_curves.csv", w);
  for (const AxiomVerdict* v : {&a.ndb, &a.wad, &a.d, &a.wl, &a.hap})
    result_.summary.push_back({"axiom " + v->name, std::string(v->pass ? "pass" : "FAIL") + " (" +
                                                       v->statistic_name + " " + fmt(v->statistic) + ")"});
  if (a.poly_decay)
    result_.summary.push_back({"axiom poly_decay", std::string(a.poly_decay->pass ? "pass" : "FAIL")});
  result_.summary.push_back({"interpolation path", a.interpolation_applicable ? "applicable" : "not applicable"});
  result_.summary.push_back({"sampling path", a.sampling_applicable ? "applicable" : "not applicable"});
  result_.audit = a;
}

void Pipeline::stage_density() {
  if (c_.radii.empty()) throw InputError("density needs radii");
  const auto centers = candidate_centers(*lambda_, space_, c_.centers.spacing, c_.centers.include_points);
  density_ = beurling_density(*lambda_, space_, centers, c_.radii);
  ojson j = to_json(*density_);
  j["centers"] = centers.size();
  result_.report["density"] = j;
  CsvWriter w({"experiment_id", "r", "inf_ratio", "sup_ratio", "centers_used", "centers_censored"});
  for (const auto& r : density_->rows)
    w.row({c_.experiment_id, fmt(r.radius), fmt(r.inf_ratio), fmt(r.sup_ratio), std::to_string(r.centers_used),
           std::to_string(r.centers_censored)});
  add_csv("density.csv", w);
  result_.summary.push_back({"D-", fmt(density_->d_minus)});
  result_.summary.push_back({"D+", fmt(density_->d_plus)});
}

void Pipeline::stage_trace() {
  const auto radii = trace_radii();
  if (radii.empty()) throw InputError("trace needs radii");
  trace_ = averaged_trace(kernel_, space_, trace_centers(), radii, c_.trace.path);
  result_.report["trace"] = to_json(*trace_);
  CsvWriter w({"experiment_id", "r", "inf_avg", "sup_avg", "centers_used", "centers_censored"});
  for (const auto& r : trace_->rows)
    w.row({c_.experiment_id, fmt(r.radius), fmt(r.inf_avg), fmt(r.sup_avg), std::to_string(r.centers_used),
           std::to_string(r.centers_censored)});
  add_csv("trace.csv", w);
  result_.summary.push_back({"tr-", fmt(trace_->tr_minus)});
  result_.summary.push_back({"tr+", fmt(trace_->tr_plus)});
}

void Pipeline::stage_gram() {
  if (c_.gram.windows.empty()) {
    if (explicit_stage(Stage::gram)) throw InputError("gram needs windows");
    return;
  }
  const Point center = center_or_default(c_.gram.center);
  std::vector<SpectralReport> reps;
  riesz_ = riesz_curve(kernel_, *lambda_, space_, center, c_.gram.windows, &reps);
  ojson rj = ojson::array();
  for (const auto& r : reps) rj.push_back(to_json(r));
  result_.report["gram"] = {{"center", point_cell(center)}, {"curve", to_json(riesz_)}, {"reports", rj}};
  CsvWriter w(kSpectralColumns);
  spectral_rows(w, center, riesz_, reps);
  add_csv("gram.csv", w);
  if (c_.outputs.dump_matrices)
    for (double win : c_.gram.windows) {
      const PointSet sub = lambda_->restrict_to(space_, center, win);
      matrices_.push_back({fs::path("matrices") / ("gram_r" + fmt(win) + ".bin"), gram(kernel_, sub).matrix()});
    }
  std::ostringstream ss;
  for (const auto& p : riesz_) ss << fmt(p.lower) << ' ';
  result_.summary.push_back({"Gram lambda_min by window", ss.str()});
}

void Pipeline::stage_framebounds() {
  if (c_.framebounds.radii.empty()) {
    if (explicit_stage(Stage::framebounds)) throw InputError("framebounds needs radii");
    return;
  }
  const Point center = center_or_default(c_.framebounds.center);
  const Space sp = c_.framebounds.h ? space_.with_step(*c_.framebounds.h) : space_;
  std::vector<SpectralReport> reps;
  frame_ = frame_curve(kernel_, *lambda_, sp, center, c_.framebounds.radii, c_.thresholds.tau,
                       c_.framebounds.margin_fraction, &reps);
  ojson rj = ojson::array();
  for (const auto& r : reps) rj.push_back(to_json(r));
  result_.report["framebounds"] = {{"center", point_cell(center)},
                                   {"h", sp.quadrature().h},
                                   {"tau", c_.thresholds.tau},
                                   {"margin_fraction", c_.framebounds.margin_fraction},
                                   {"curve", to_json(frame_)},
                                   {"reports", rj}};
  CsvWriter w(kSpectralColumns);
  spectral_rows(w, center, frame_, reps);
  add_csv("framebounds.csv", w);
  std::ostringstream ss;
  for (const auto& p : frame_) ss << fmt(p.lower) << ' ';
  result_.summary.push_back({"frame A_est by radius", ss.str()});
}

void Pipeline::stage_locspec() {
  if (c_.locspec.radii.empty()) {
    if (explicit_stage(Stage::locspec)) throw InputError("locspec needs radii");
    return;
  }
  const Point center = center_or_default(c_.locspec.center);
  const Space sp = c_.locspec.h ? space_.with_step(*c_.locspec.h) : space_;
  CsvWriter w(kSpectralColumns);
  CsvWriter ev({"r", "index", "eigenvalue"});
  ojson rows = ojson::array();
  for (double r : c_.locspec.radii) {
    const Localization loc = localization_operator(kernel_, sp, center, r);
    const HermitianMatrix m(loc.matrix);
    const RVector vals = eigvalsh(m);
    SpectralReport rep = spectral_report(vals, loc.matrix.trace().real());
    rep.warnings = loc.warnings;
    double quad_measure = 0.0;
    for (const auto& n : loc.nodes) quad_measure += n.weight;
    ojson j = to_json(rep);
    j["r"] = r;
    j["nodes"] = loc.nodes.size();
    j["ball_measure"] = ball_measure(sp, center, r);
    j["quadrature_measure"] = quad_measure;
    j["quadrature_tolerance"] = quadrature_tolerance(sp, center, r);
    rows.push_back(j);
    w.row({c_.experiment_id, point_cell(center), fmt(r), fmt(rep.lambda_min), fmt(rep.lambda_max), fmt(rep.trace),
           std::to_string(rep.plunge_count)});
    for (Eigen::Index i = 0; i < vals.size(); ++i) ev.row({fmt(r), std::to_string(i), fmt(vals(i))});
    if (c_.outputs.dump_matrices)
      matrices_.push_back({fs::path("matrices") / ("localization_r" + fmt(r) + ".bin"), loc.matrix});
    result_.summary.push_back({"locspec r=" + fmt(r), "trace " + fmt(rep.trace) + ", plunge " +
                                                          std::to_string(rep.plunge_count)});
  }
  result_.report["locspec"] = {{"center", point_cell(center)}, {"h", sp.quadrature().h}, {"rows", rows}};
  add_csv("locspec.csv", w);
  add_csv("locspec_eigenvalues.csv", ev);
}

void Pipeline::stage_verdict() {
  if (!result_.audit || !density_ || !trace_) throw InputError("verdict needs audit, density and trace");
  VerdictInputs in;
  in.density = *density_;
  in.trace = *trace_;
  in.riesz_curve = riesz_;
  in.frame_curve = frame_;
  in.dimension_free = dimension_free_ratios(kernel_, *lambda_, space_, trace_centers(), trace_radii(), c_.trace.path);
  in.audit = *result_.audit;
  in.thresholds.riesz_floor = c_.thresholds.riesz_floor;
  in.thresholds.frame_floor = c_.thresholds.frame_floor;
  in.base_slack = c_.thresholds.slack;
  in.axiom_test_kernel = kernel_.axiom_test();
  const VerdictReport v = density_vs_trace(in);
  result_.report["verdict"] = to_json(v, in.thresholds);
  result_.verdict = v;
  result_.summary.push_back({"empirical class", to_string(v.empirical_class)});
  for (const InequalityCheck* chk : {&v.sampling_condition, &v.interpolation_condition})
    result_.summary.push_back({chk->name, chk->evaluated ? (chk->holds ? "consistent" : "VIOLATED") : "not evaluated"});
}

ojson Pipeline::manifest(const std::string& status) const {
  ojson m;
  std::ostringstream hash;
  hash << std::hex << std::setw(16) << std::setfill('0') << config_hash(c_);
  m["experiment_id"] = c_.experiment_id;
  m["config_hash"] = hash.str();
  m["tool_version"] = kToolVersion;
  m["seed"] = c_.seed;
  m["stage"] = to_string(opt_.stage);
  m["status"] = status;
  m["exit_code"] = result_.exit_code;
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream when;
  when << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  m["wall_clock"] = when.str();
  ojson t = ojson::array();
  double total = 0.0;
  for (const auto& s : result_.timings) {
    t.push_back({{"stage", s.stage}, {"seconds", s.seconds}});
    total += s.seconds;
  }
  m["timings"] = t;
  m["total_seconds"] = total;
  ojson files = ojson::array();
  for (const auto& f : result_.files) files.push_back(f.lexically_relative(opt_.out_dir).generic_string());
  m["files"] = files;
  if (!result_.message.empty()) m["message"] = result_.message;
  return m;
}

void Pipeline::write_outputs() {
  fs::create_directories(opt_.out_dir);
  auto write = [&](const fs::path& rel, const std::string& text) {
    const fs::path p = opt_.out_dir / rel;
    fs::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary);
    out << text;
    if (!out) throw std::runtime_error("cannot write " + p.string());
    result_.files.push_back(p);
  };
  files_[fs::path(c_.outputs.json_path)] = result_.report.dump(2) + "\n";
  for (const auto& [rel, text] : files_) write(rel, text);
  for (const auto& [rel, m] : matrices_) {
    const fs::path p = opt_.out_dir / rel;
    fs::create_directories(p.parent_path());
    dump_matrix(m, p.string());
    result_.files.push_back(p);
  }
}

void Pipeline::remove_outputs() {
  std::error_code ec;
  for (const auto& f : result_.files) fs::remove(f, ec);
  result_.files.clear();
  for (const char* name : {"wl_tail.csv", "hap_tail.csv", "audit_curves.csv", "density.csv", "trace.csv", "gram.csv",
                           "framebounds.csv", "locspec.csv", "locspec_eigenvalues.csv"})
    fs::remove(opt_.out_dir / c_.outputs.csv_dir / name, ec);
  fs::remove(opt_.out_dir / c_.outputs.json_path, ec);
  fs::remove_all(opt_.out_dir / "matrices", ec);
}

RunResult Pipeline::run() {
  result_.report["schema_version"] = kReportSchemaVersion;
  result_.report["tool_version"] = kToolVersion;
  result_.report["experiment_id"] = c_.experiment_id;
  result_.report["seed"] = c_.seed;
  result_.report["stage"] = to_string(opt_.stage);
  result_.report["config"] = config_to_json(c_);
  std::string status = "ok";
  try {
    timed("pointset", [&] { lambda_ = generate_pointset(c_.pointset, space_, c_.seed); });
    const auto& w = lambda_->window();
    result_.report["pointset"] = {{"generator", lambda_->provenance().generator},
                                  {"seed", lambda_->provenance().seed},
                                  {"size", lambda_->size()},
                                  {"window", {{"center", point_cell(w.center)}, {"radius", w.radius}}}};
    result_.summary.push_back({"points", std::to_string(lambda_->size())});
    if (wants(Stage::audit)) timed("audit", [&] { stage_audit(); });
    if (wants(Stage::density)) timed("density", [&] { stage_density(); });
    if (wants(Stage::trace)) timed("trace", [&] { stage_trace(); });
    if (wants(Stage::gram)) timed("gram", [&] { stage_gram(); });
    if (wants(Stage::framebounds)) timed("framebounds", [&] { stage_framebounds(); });
    if (wants(Stage::locspec)) timed("locspec", [&] { stage_locspec(); });
    if (wants(Stage::verdict)) timed("verdict", [&] { stage_verdict(); });

    if (result_.audit && !result_.audit->interpolation_applicable) {
      result_.exit_code = exit_code::not_applicable;
      std::string msg = "theorem not applicable:";
      for (const auto& f : result_.audit->failures) msg += " [" + f + "]";
      result_.message = msg;
      status = "not_applicable";
    } else if (result_.verdict && result_.verdict->violated) {
      result_.exit_code = exit_code::violated;
      result_.message = "licensed density inequality violated beyond slack";
      status = "violated";
    }
    result_.report["exit_code"] = result_.exit_code;
    result_.report["status"] = status;
    write_outputs();
  } catch (const StageFailure& f) {
    remove_outputs();
    result_.exit_code = f.code;
    result_.message = "stage " + f.stage + " failed: " + f.what;
    status = f.code == exit_code::input_error ? "input_error" : "failed";
  } catch (const std::exception& e) {
    remove_outputs();
    result_.exit_code = exit_code::failure;
    result_.message = std::string("output failed: ") + e.what();
    status = "failed";
  }
  try {
    fs::create_directories(opt_.out_dir);
    std::ofstream out(opt_.out_dir / "manifest.json");
    out << manifest(status).dump(2) << "\n";
  } catch (const std::exception&) {
    if (result_.exit_code == exit_code::ok) result_.exit_code = exit_code::failure;
  }
  return result_;
}

}  // namespace

Stage parse_stage(const std::string& s) {
  for (const auto& [st, name] : kStages)
    if (name == s) return st;
  throw InputError("unknown stage '" + s + "'");
}

std::string to_string(Stage s) {
  for (const auto& [st, name] : kStages)
    if (st == s) return name;
  return "all";
}

RunResult run(const ExperimentConfig& config, const RunOptions& opt) {
  ExperimentConfig c = config;
  if (opt.seed) c.seed = *opt.seed;
  try {
    Pipeline p(c, opt);
    return p.run();
  } catch (const InputError& e) {
    RunResult r;
    r.exit_code = exit_code::input_error;
    r.message = e.what();
    return r;
  }
}

std::string summary_table(const RunResult& r) {
  std::size_t width = 8;
  for (const auto& [k, v] : r.summary) width = std::max(width, k.size());
  std::ostringstream out;
  for (const auto& [k, v] : r.summary) out << std::left << std::setw(static_cast<int>(width) + 2) << k << v << '\n';
  out << std::left << std::setw(static_cast<int>(width) + 2) << "exit code" << r.exit_code << '\n';
  return out.str();
}

}  // namespace rkhs
