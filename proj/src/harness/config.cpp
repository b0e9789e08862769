#include <fstream>
#include <set>
#include <sstream>

#include "rkhs/errors.hpp"
#include "rkhs/harness.hpp"

namespace rkhs {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Strict object reader: every key must be consumed before finish().
class Fields {
 public:
  Fields(const ojson& j, std::string where) : j_(j), where_(std::move(where)) {
    if (!j_.is_object()) throw InputError(where_ + ": expected an object");
  }

  bool has(const std::string& k) const { return j_.contains(k); }

  const ojson* get(const std::string& k) {
    seen_.insert(k);
    const auto it = j_.find(k);
    return it == j_.end() ? nullptr : &*it;
  }

  const ojson& need(const std::string& k) {
    const ojson* v = get(k);
    if (!v) throw InputError(where_ + ": missing field '" + k + "'");
    return *v;
  }

  double number(const std::string& k, double def) {
    const ojson* v = get(k);
    return v ? as_number(*v, k) : def;
  }

  double need_number(const std::string& k) { return as_number(need(k), k); }

  std::optional<double> opt_number(const std::string& k) {
    const ojson* v = get(k);
    if (!v || v->is_null()) return std::nullopt;
    return as_number(*v, k);
  }

  std::uint64_t unsigned_int(const std::string& k, std::uint64_t def) {
    const ojson* v = get(k);
    if (!v) return def;
    if (v->is_number_unsigned()) return v->get<std::uint64_t>();
    if (v->is_number_integer() && v->get<std::int64_t>() >= 0) return static_cast<std::uint64_t>(v->get<std::int64_t>());
    throw InputError(where_ + "." + k + ": expected a nonnegative integer");
  }

  int integer(const std::string& k, int def) {
    const ojson* v = get(k);
    if (!v) return def;
    if (!v->is_number_integer()) throw InputError(where_ + "." + k + ": expected an integer");
    return v->get<int>();
  }

  bool boolean(const std::string& k, bool def) {
    const ojson* v = get(k);
    if (!v) return def;
    if (!v->is_boolean()) throw InputError(where_ + "." + k + ": expected a boolean");
    return v->get<bool>();
  }

  std::string string(const std::string& k, const std::string& def) {
    const ojson* v = get(k);
    if (!v) return def;
    if (!v->is_string()) throw InputError(where_ + "." + k + ": expected a string");
    return v->get<std::string>();
  }

  std::vector<double> numbers(const std::string& k) {
    const ojson* v = get(k);
    if (!v) return {};
    if (!v->is_array()) throw InputError(where_ + "." + k + ": expected an array");
    std::vector<double> out;
    for (const auto& e : *v) out.push_back(as_number(e, k));
    return out;
  }

  std::optional<Point> point(const std::string& k) {
    const ojson* v = get(k);
    if (!v || v->is_null()) return std::nullopt;
    return as_point(*v, k);
  }

  std::vector<Point> points(const std::string& k) {
    const ojson* v = get(k);
    if (!v) return {};
    if (!v->is_array()) throw InputError(where_ + "." + k + ": expected an array of points");
    std::vector<Point> out;
    for (const auto& e : *v) out.push_back(as_point(e, k));
    return out;
  }

  Fields object(const std::string& k, const ojson& empty) {
    const ojson* v = get(k);
    return Fields(v ? *v : empty, where_ + "." + k);
  }

  void finish() const {
    for (const auto& [k, v] : j_.items())
      if (!seen_.count(k)) throw InputError(where_ + ": unknown field '" + k + "'");
  }

  const std::string& where() const { return where_; }

 private:
  double as_number(const ojson& v, const std::string& k) const {
    if (!v.is_number()) throw InputError(where_ + "." + k + ": expected a number");
    return v.get<double>();
  }

  Point as_point(const ojson& v, const std::string& k) const {
    if (!v.is_array() || v.empty() || v.size() > Point::kMaxDim)
      throw InputError(where_ + "." + k + ": expected a coordinate array");
    std::vector<double> c;
    for (const auto& e : v) c.push_back(as_number(e, k));
    return Point(std::span<const double>(c));
  }

  const ojson& j_;
  std::string where_;
  std::set<std::string> seen_;
};

const ojson kEmpty = ojson::object();

SpaceVariant parse_space(Fields f) {
  const std::string type = f.string("type", "");
  SpaceVariant v;
  if (type == "EuclideanLebesgue") {
    v = EuclideanLebesgue{f.integer("dim", 1)};
  } else if (type == "FockGaussian") {
    v = FockGaussian{f.integer("n", 1)};
  } else if (type == "PhasePlane") {
    v = PhasePlane{};
  } else if (type == "LogMetricLine") {
    v = LogMetricLine{};
  } else if (type == "HyperbolicUpperHalfPlane") {
    v = HyperbolicUpperHalfPlane{};
  } else if (type == "IntegerWordMetric") {
    v = IntegerWordMetric{f.integer("dim", 1)};
  } else {
    throw InputError(f.where() + ": unknown space type '" + type + "'");
  }
  f.finish();
  return v;
}

KernelVariant parse_kernel(Fields f, bool& normalize) {
  const std::string type = f.string("type", "");
  normalize = f.boolean("normalize", false);
  KernelVariant v;
  if (type == "PaleyWienerBox") {
    PaleyWienerBox k;
    const auto w = f.numbers("widths");
    if (!w.empty()) k.widths = w;
    v = k;
  } else if (type == "FockGaussianNormalized") {
    v = FockGaussianNormalized{f.integer("n", 1)};
  } else if (type == "GaborGaussian") {
    v = GaborGaussian{};
  } else if (type == "SyntheticPolyDecay") {
    v = SyntheticPolyDecay{f.number("sigma", 2.0), f.integer("dim", 1)};
  } else if (type == "HyperbolicBergman") {
    v = HyperbolicBergman{};
  } else {
    throw InputError(f.where() + ": unknown kernel type '" + type + "'");
  }
  f.finish();
  return v;
}

void require_radii(const std::vector<double>& r, const std::string& what) {
  for (std::size_t i = 0; i < r.size(); ++i)
    if (!(r[i] > 0.0) || (i && !(r[i] > r[i - 1]))) throw InputError(what + ": radii must be positive and increasing");
}

void require_positive(double v, const std::string& what) {
  if (!(v > 0.0)) throw InputError(what + " must be positive");
}

ojson point_json(const Point& p) {
  ojson a = ojson::array();
  for (double c : p.coords()) a.push_back(c);
  return a;
}

ojson points_json(const std::vector<Point>& ps) {
  ojson a = ojson::array();
  for (const auto& p : ps) a.push_back(point_json(p));
  return a;
}

ojson opt_point_json(const std::optional<Point>& p) { return p ? point_json(*p) : ojson(nullptr); }

}  // namespace

ExperimentConfig parse_config(const ojson& j) {
  Fields f(j, "config");
  ExperimentConfig c;
  c.experiment_id = f.string("experiment_id", "");
  if (c.experiment_id.empty()) throw InputError("config: experiment_id is required");
  c.seed = f.unsigned_int("seed", 0);
  c.space = parse_space(Fields(f.need("space"), "config.space"));
  c.kernel = parse_kernel(Fields(f.need("kernel"), "config.kernel"), c.normalize);

  {
    Fields p(f.need("pointset"), "config.pointset");
    auto& ps = c.pointset;
    ps.type = p.string("type", "lattice");
    ps.steps = p.numbers("steps");
    ps.jitter = p.number("jitter", 0.0);
    if (const ojson* sd = p.get("seed"); sd && !sd->is_null()) ps.seed = p.unsigned_int("seed", 0);
    ps.window = p.need_number("window");
    ps.center = p.point("center");
    ps.path = p.string("path", "");
    p.finish();
    if (ps.type != "lattice" && ps.type != "jittered_lattice" && ps.type != "file")
      throw InputError("config.pointset: unknown type '" + ps.type + "'");
    require_positive(ps.window, "config.pointset.window");
    if (ps.type != "file" && ps.steps.empty()) throw InputError("config.pointset: steps are required");
    if (ps.type == "file" && ps.path.empty()) throw InputError("config.pointset: path is required");
  }
  {
    Fields p = f.object("centers", kEmpty);
    c.centers.spacing = p.number("spacing", 1.0);
    c.centers.include_points = p.boolean("include_points", true);
    p.finish();
    require_positive(c.centers.spacing, "config.centers.spacing");
  }
  c.radii = f.numbers("radii");
  require_radii(c.radii, "config.radii");
  {
    Fields p = f.object("quadrature", kEmpty);
    c.quadrature_h = p.number("h", Space::default_step(c.space));
    p.finish();
    require_positive(c.quadrature_h, "config.quadrature.h");
  }
  {
    Fields p = f.object("thresholds", kEmpty);
    auto& t = c.thresholds;
    t.tau = p.number("tau", t.tau);
    t.slack = p.number("slack", t.slack);
    t.wad_tol = p.number("wad_tol", t.wad_tol);
    t.riesz_floor = p.number("riesz_floor", t.riesz_floor);
    t.frame_floor = p.number("frame_floor", t.frame_floor);
    t.tail_eps = p.number("tail_eps", t.tail_eps);
    t.ndb_floor = p.number("ndb_floor", t.ndb_floor);
    p.finish();
    if (!(t.tau > 0.0 && t.tau < 1.0)) throw InputError("config.thresholds.tau must lie in (0, 1)");
    if (!(t.slack >= 0.0)) throw InputError("config.thresholds.slack must be nonnegative");
  }
  {
    Fields p = f.object("audit", kEmpty);
    auto& a = c.audit;
    a.centers = p.points("centers");
    a.ndb_radius = p.number("ndb_radius", 1.0);
    a.wad_radii = p.numbers("wad_radii");
    a.wl_radii = p.numbers("wl_radii");
    a.hap_radii = p.numbers("hap_radii");
    a.separation_rho = p.number("separation_rho", 1.0);
    if (const ojson* pd = p.get("poly_decay"); pd && !pd->is_null()) {
      Fields q(*pd, "config.audit.poly_decay");
      AuditSettings::PolyDecay d;
      d.sigma = q.need_number("sigma");
      d.c = q.need_number("c");
      d.radii = q.numbers("radii");
      d.pairs = q.unsigned_int("pairs", d.pairs);
      q.finish();
      require_radii(d.radii, "config.audit.poly_decay.radii");
      a.poly_decay = d;
    }
    p.finish();
    require_radii(a.wad_radii, "config.audit.wad_radii");
    require_radii(a.wl_radii, "config.audit.wl_radii");
    require_radii(a.hap_radii, "config.audit.hap_radii");
  }
  {
    Fields p = f.object("trace", kEmpty);
    const std::string path = p.string("path", "known_diagonal");
    if (path == "known_diagonal") c.trace.path = TracePath::known_diagonal;
    else if (path == "quadrature") c.trace.path = TracePath::quadrature;
    else throw InputError("config.trace.path: expected known_diagonal or quadrature");
    c.trace.radii = p.numbers("radii");
    c.trace.centers = p.points("centers");
    p.finish();
    require_radii(c.trace.radii, "config.trace.radii");
  }
  {
    Fields p = f.object("gram", kEmpty);
    c.gram.windows = p.numbers("windows");
    c.gram.center = p.point("center");
    p.finish();
    require_radii(c.gram.windows, "config.gram.windows");
  }
  {
    Fields p = f.object("framebounds", kEmpty);
    c.framebounds.radii = p.numbers("radii");
    c.framebounds.h = p.opt_number("h");
    c.framebounds.margin_fraction = p.number("margin_fraction", 0.5);
    c.framebounds.center = p.point("center");
    p.finish();
    require_radii(c.framebounds.radii, "config.framebounds.radii");
    if (!(c.framebounds.margin_fraction >= 0.0)) throw InputError("config.framebounds.margin_fraction must be >= 0");
  }
  {
    Fields p = f.object("locspec", kEmpty);
    c.locspec.radii = p.numbers("radii");
    c.locspec.h = p.opt_number("h");
    c.locspec.center = p.point("center");
    p.finish();
    require_radii(c.locspec.radii, "config.locspec.radii");
  }
  {
    Fields p = f.object("outputs", kEmpty);
    c.outputs.csv_dir = p.string("csv_dir", c.outputs.csv_dir);
    c.outputs.json_path = p.string("json_path", c.outputs.json_path);
    c.outputs.dump_matrices = p.boolean("dump_matrices", false);
    p.finish();
  }
  f.finish();

  const Space space = make_space(c);
  if (!make_kernel(c).compatible(space))
    throw InputError("config: kernel " + make_kernel(c).name() + " does not live on " + space.name());
  if (c.pointset.center) space.validate(*c.pointset.center);
  for (const auto& p : c.audit.centers) space.validate(p);
  for (const auto& p : c.trace.centers) space.validate(p);
  for (const auto* p : {&c.gram.center, &c.framebounds.center, &c.locspec.center})
    if (*p) space.validate(**p);
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config " + path.string());
  ojson j;
  try {
    j = ojson::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError("config " + path.string() + ": " + e.what());
  }
  return parse_config(j);
}

ojson config_to_json(const ExperimentConfig& c) {
  ojson j;
  j["experiment_id"] = c.experiment_id;
  j["seed"] = c.seed;
  j["space"] = std::visit(overloaded{
                              [](const EuclideanLebesgue& s) { return ojson{{"type", "EuclideanLebesgue"}, {"dim", s.dim}}; },
                              [](const FockGaussian& s) { return ojson{{"type", "FockGaussian"}, {"n", s.n}}; },
                              [](const PhasePlane&) { return ojson{{"type", "PhasePlane"}}; },
                              [](const LogMetricLine&) { return ojson{{"type", "LogMetricLine"}}; },
                              [](const HyperbolicUpperHalfPlane&) { return ojson{{"type", "HyperbolicUpperHalfPlane"}}; },
                              [](const IntegerWordMetric& s) { return ojson{{"type", "IntegerWordMetric"}, {"dim", s.dim}}; },
                          },
                          c.space);
  ojson k = std::visit(overloaded{
                           [](const PaleyWienerBox& v) { return ojson{{"type", "PaleyWienerBox"}, {"widths", v.widths}}; },
                           [](const FockGaussianNormalized& v) {
                             return ojson{{"type", "FockGaussianNormalized"}, {"n", v.n}};
                           },
                           [](const GaborGaussian&) { return ojson{{"type", "GaborGaussian"}}; },
                           [](const SyntheticPolyDecay& v) {
                             return ojson{{"type", "SyntheticPolyDecay"}, {"sigma", v.sigma}, {"dim", v.dim}};
                           },
                           [](const HyperbolicBergman&) { return ojson{{"type", "HyperbolicBergman"}}; },
                       },
                       c.kernel);
  k["normalize"] = c.normalize;
  j["kernel"] = k;

  ojson ps;
  ps["type"] = c.pointset.type;
  ps["steps"] = c.pointset.steps;
  ps["jitter"] = c.pointset.jitter;
  ps["seed"] = c.pointset.seed ? ojson(*c.pointset.seed) : ojson(nullptr);
  ps["window"] = c.pointset.window;
  ps["center"] = opt_point_json(c.pointset.center);
  ps["path"] = c.pointset.path;
  j["pointset"] = ps;

  j["centers"] = {{"spacing", c.centers.spacing}, {"include_points", c.centers.include_points}};
  j["radii"] = c.radii;
  j["quadrature"] = {{"h", c.quadrature_h}};
  const auto& t = c.thresholds;
  j["thresholds"] = {{"tau", t.tau},         {"slack", t.slack},         {"wad_tol", t.wad_tol},
                     {"riesz_floor", t.riesz_floor}, {"frame_floor", t.frame_floor}, {"tail_eps", t.tail_eps},
                     {"ndb_floor", t.ndb_floor}};

  ojson a;
  a["centers"] = points_json(c.audit.centers);
  a["ndb_radius"] = c.audit.ndb_radius;
  a["wad_radii"] = c.audit.wad_radii;
  a["wl_radii"] = c.audit.wl_radii;
  a["hap_radii"] = c.audit.hap_radii;
  a["separation_rho"] = c.audit.separation_rho;
  if (c.audit.poly_decay) {
    const auto& d = *c.audit.poly_decay;
    a["poly_decay"] = {{"sigma", d.sigma}, {"c", d.c}, {"radii", d.radii}, {"pairs", d.pairs}};
  } else {
    a["poly_decay"] = nullptr;
  }
  j["audit"] = a;

  j["trace"] = {{"path", c.trace.path == TracePath::known_diagonal ? "known_diagonal" : "quadrature"},
                {"radii", c.trace.radii},
                {"centers", points_json(c.trace.centers)}};
  j["gram"] = {{"windows", c.gram.windows}, {"center", opt_point_json(c.gram.center)}};
  j["framebounds"] = {{"radii", c.framebounds.radii},
                      {"h", c.framebounds.h ? ojson(*c.framebounds.h) : ojson(nullptr)},
                      {"margin_fraction", c.framebounds.margin_fraction},
                      {"center", opt_point_json(c.framebounds.center)}};
  j["locspec"] = {{"radii", c.locspec.radii},
                  {"h", c.locspec.h ? ojson(*c.locspec.h) : ojson(nullptr)},
                  {"center", opt_point_json(c.locspec.center)}};
  j["outputs"] = {{"csv_dir", c.outputs.csv_dir},
                  {"json_path", c.outputs.json_path},
                  {"dump_matrices", c.outputs.dump_matrices}};
  return j;
}

Space make_space(const ExperimentConfig& c) {
  const double h = c.quadrature_h > 0.0 ? c.quadrature_h : Space::default_step(c.space);
  return Space(c.space, QuadratureRule{h, std::nullopt});
}

Kernel make_kernel(const ExperimentConfig& c) {
  Kernel k(c.kernel);
  return c.normalize ? normalize(k) : k;
}

std::uint64_t config_hash(const ExperimentConfig& c) {
  const std::string text = config_to_json(c).dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace rkhs
