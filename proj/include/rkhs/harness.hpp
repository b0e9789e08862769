#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rkhs/geometry.hpp"
#include "rkhs/kernels.hpp"
#include "rkhs/spectral.hpp"
#include "rkhs/verdict.hpp"

namespace rkhs {

using ojson = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "1.0.0";

// ---------------------------------------------------------------------------
// Configuration

struct PointSetSpec {
  std::string type = "lattice";  // lattice | jittered_lattice | file
  std::vector<double> steps;     // one per coordinate, or a single value broadcast
  double jitter = 0.0;
  std::optional<std::uint64_t> seed;
  double window = 0.0;
  std::optional<Point> center;
  std::string path;
};

struct CentersSpec {
  double spacing = 1.0;
  bool include_points = true;
};

struct Thresholds {
  double tau = 0.5;
  double slack = 0.05;
  double wad_tol = 0.05;
  double riesz_floor = 1e-2;
  double frame_floor = 1e-2;
  double tail_eps = 0.01;
  double ndb_floor = 1e-9;
};

struct AuditSpec {
  std::vector<Point> centers;  // empty: the window center
  double ndb_radius = 1.0;
  std::vector<double> wad_radii;
  std::vector<double> wl_radii;
  std::vector<double> hap_radii;
  double separation_rho = 1.0;
  std::optional<AuditSettings::PolyDecay> poly_decay;
};

struct TraceSpec {
  TracePath path = TracePath::known_diagonal;
  std::vector<double> radii;   // empty: the density radii
  std::vector<Point> centers;  // empty: the window center
};

struct GramSpec {
  std::vector<double> windows;
  std::optional<Point> center;
};

struct FrameSpec {
  std::vector<double> radii;
  std::optional<double> h;
  double margin_fraction = 0.5;
  std::optional<Point> center;
};

struct LocSpec {
  std::vector<double> radii;
  std::optional<double> h;
  std::optional<Point> center;
};

struct OutputSpec {
  std::string csv_dir = ".";
  std::string json_path = "report.json";
  bool dump_matrices = false;
};

struct ExperimentConfig {
  std::string experiment_id;
  std::uint64_t seed = 0;
  SpaceVariant space = EuclideanLebesgue{1};
  KernelVariant kernel = PaleyWienerBox{};
  bool normalize = false;
  PointSetSpec pointset;
  CentersSpec centers;
  std::vector<double> radii;
  double quadrature_h = 0.0;  // 0: the space default
  Thresholds thresholds;
  AuditSpec audit;
  TraceSpec trace;
  GramSpec gram;
  FrameSpec framebounds;
  LocSpec locspec;
  OutputSpec outputs;
};

/// Parses and validates a config; unknown fields raise InputError.
ExperimentConfig parse_config(const ojson& j);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Fully resolved config with every default written out.
ojson config_to_json(const ExperimentConfig& c);

Space make_space(const ExperimentConfig& c);
Kernel make_kernel(const ExperimentConfig& c);

/// FNV-1a over the canonical JSON text.
std::uint64_t config_hash(const ExperimentConfig& c);

// ---------------------------------------------------------------------------
// Generators

/// Window center: the configured one, else the origin of the space.
Point window_center(const PointSetSpec& spec, const Space& space);

PointSet generate_pointset(const PointSetSpec& spec, const Space& space, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Output

/// Shortest round-trip representation; "nan" / "inf" / "-inf" otherwise.
std::string format_double(double v);

class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header);
  CsvWriter& row(const std::vector<std::string>& cells);
  const std::vector<std::string>& header() const noexcept { return header_; }
  std::string str() const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

/// Parses CSV text written by CsvWriter.
std::vector<std::vector<std::string>> parse_csv(const std::string& text);

ojson to_json(const DensityReport& r);
ojson to_json(const TraceReport& r);
ojson to_json(const SpectralReport& r, bool with_eigenvalues = false);
ojson to_json(const std::vector<BoundPoint>& curve);
ojson to_json(const AxiomAudit& a);
ojson to_json(const VerdictReport& v, const ClassifyThresholds& t);

// ---------------------------------------------------------------------------
// Pipeline

enum class Stage { audit, density, trace, gram, framebounds, locspec, verdict, all };

Stage parse_stage(const std::string& s);
std::string to_string(Stage s);

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int failure = 1;
inline constexpr int violated = 2;
inline constexpr int not_applicable = 3;
inline constexpr int input_error = 4;
}  // namespace exit_code

struct StageTiming {
  std::string stage;
  double seconds = 0.0;
};

struct RunResult {
  int exit_code = exit_code::ok;
  std::string message;
  ojson report;
  std::optional<VerdictReport> verdict;
  std::optional<AxiomAudit> audit;
  std::vector<StageTiming> timings;
  std::vector<std::filesystem::path> files;
  /// One line per computed quantity for the summary table.
  std::vector<std::pair<std::string, std::string>> summary;
};

struct RunOptions {
  Stage stage = Stage::all;
  std::filesystem::path out_dir = "out";
  std::optional<std::uint64_t> seed;
};

/// Runs the requested stage(s), writes report, CSVs and manifest under
/// out_dir, and maps the outcome to an exit code. Never throws for stage
/// failures; partial outputs are removed.
RunResult run(const ExperimentConfig& config, const RunOptions& opt);

/// Plain-text summary table.
std::string summary_table(const RunResult& r);

// ---------------------------------------------------------------------------
// Canonical registry

std::vector<std::string> canonical_names();
ExperimentConfig canonical_config(const std::string& name);

}  // namespace rkhs
