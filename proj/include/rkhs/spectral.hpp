#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "rkhs/geometry.hpp"
#include "rkhs/kernels.hpp"

namespace rkhs {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

/// Largest matrix order the dense routines accept.
inline constexpr std::size_t kMaxOrder = 4096;

/// Dense complex matrix checked to be Hermitian within 1e-12 of its largest
/// entry. The strictly lower triangle is mirrored from the upper one.
class HermitianMatrix {
 public:
  explicit HermitianMatrix(CMatrix m, double tol = 1e-12);

  std::size_t order() const noexcept { return static_cast<std::size_t>(m_.rows()); }
  const CMatrix& matrix() const noexcept { return m_; }
  double max_abs() const noexcept;

 private:
  CMatrix m_;
};

/// Ascending eigenvalues.
RVector eigvalsh(const HermitianMatrix& m);

struct Eigensystem {
  RVector values;   // ascending
  CMatrix vectors;  // orthonormal columns
};

Eigensystem eigh(const HermitianMatrix& m);

/// Eigenpairs with eigenvalue >= threshold only.
Eigensystem eigh_above(const HermitianMatrix& m, double threshold);

struct SpectralReport {
  std::vector<double> eigenvalues;  // ascending
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  double trace = 0.0;
  std::size_t plunge_count = 0;  // eigenvalues >= 1/2
  bool condition_flag = false;   // lambda_min <= 1e-2 lambda_max
  double ridge = 0.0;
  std::vector<std::string> warnings;
};

SpectralReport spectral_report(const HermitianMatrix& m);
SpectralReport spectral_report(const RVector& eigenvalues, double trace);

/// G_{mu,lambda} = <k_lambda, k_mu> = k(mu, lambda).
HermitianMatrix gram(const Kernel& kernel, const PointSet& lambda, std::vector<std::string>* warnings = nullptr);

/// Exact Riesz bounds of the finite family: extreme eigenvalues of the Gram matrix.
SpectralReport riesz_bounds(const Kernel& kernel, const PointSet& lambda);

struct BoundPoint {
  double window = 0.0;  // half-width of the window or radius of the section
  std::size_t size = 0;
  double lower = 0.0;
  double upper = 0.0;
};

/// Riesz bounds of Lambda restricted to nested balls about `center`; the full
/// per-window reports go to `reports` when given.
std::vector<BoundPoint> riesz_curve(const Kernel& kernel, const PointSet& lambda, const Space& space,
                                    const Point& center, std::span<const double> half_widths,
                                    std::vector<SpectralReport>* reports = nullptr);

struct Localization {
  std::vector<QuadNode> nodes;
  std::vector<double> sqrt_weights;
  CMatrix matrix;  // sqrt(w_i) k(x_i, x_j) sqrt(w_j)
  std::vector<std::string> warnings;
};

/// Discretized f -> 1_{B_r} P f on the midpoint nodes of B_r(center).
Localization localization_operator(const Kernel& kernel, const Space& space, const Point& center, double r);

enum class TracePath { known_diagonal, quadrature };

struct TraceRow {
  double radius = 0.0;
  double inf_avg = 0.0;
  double sup_avg = 0.0;
  std::size_t centers_used = 0;
  std::size_t centers_censored = 0;
};

struct TraceReport {
  TracePath path = TracePath::known_diagonal;
  std::vector<TraceRow> rows;
  double tr_minus = 0.0;
  double tr_plus = 0.0;
  double trend_minus = 0.0;  // slope against 1/r
  double trend_plus = 0.0;
};

/// Ball averages of k(y,y). The quadrature path divides by the quadrature
/// volume of the ball, so a constant diagonal is reproduced exactly.
TraceReport averaged_trace(const Kernel& kernel, const Space& space, std::span<const Point> centers,
                           std::span<const double> radii, TracePath path);

/// Ball average of k(y,y) about one center.
double ball_average_diagonal(const Kernel& kernel, const Space& space, const Point& x, double r, TracePath path);

struct FiniteSection {
  SpectralReport report;  // spectrum of the sampling form on V_tau
  Point center;
  double center_r = 0.0;
  double tau = 0.5;
  double margin = 0.0;
  std::vector<double> localization_eigenvalues;  // those >= tau, ascending
  std::vector<Point> nodes;
  CMatrix basis;     // phi_a(y) = sum_j k(y, x_j) basis(j, a); orthonormal in H
  std::vector<Point> samples;  // Lambda within B_{r+margin}(center)
  CMatrix phi;       // phi(l, a) = phi_a(lambda_l)
  CMatrix s;         // phi^* phi
};

/// Default margin: r / 2.
double default_margin(double r);

FiniteSection finite_section(const Kernel& kernel, const PointSet& lambda, const Space& space, const Point& center,
                             double r, double tau = 0.5, std::optional<double> margin = std::nullopt);

SpectralReport frame_bounds_finite_section(const Kernel& kernel, const PointSet& lambda, const Space& space,
                                           const Point& center, double r, double tau = 0.5,
                                           std::optional<double> margin = std::nullopt);

/// Section bounds over several radii.
std::vector<BoundPoint> frame_curve(const Kernel& kernel, const PointSet& lambda, const Space& space,
                                    const Point& center, std::span<const double> radii, double tau = 0.5,
                                    std::optional<double> margin_fraction = std::nullopt,
                                    std::vector<SpectralReport>* reports = nullptr);

enum class DualMode { riesz, frame_finite_section };

struct DualFrameModel {
  DualMode mode = DualMode::riesz;
  double ridge = 0.0;
  double lambda_min = 0.0;
  std::vector<Point> points;
  CMatrix gram;     // riesz: G; frame: S
  CMatrix inverse;  // riesz: dual coefficients, g_lambda = sum_mu inverse(mu, lambda) k_mu; frame: S^-1
  std::optional<FiniteSection> section;
  bool flagged = false;  // condition flag of the inverted matrix
};

/// Canonical dual system. Frame mode needs the finite-section parameters.
DualFrameModel dual_system(const Kernel& kernel, const PointSet& lambda, DualMode mode, double ridge = 0.0,
                           const Space* space = nullptr, std::optional<Point> center = std::nullopt,
                           double r = 0.0, double tau = 0.5, std::optional<double> margin = std::nullopt);

/// g_lambda(y) for every lambda of the model.
CVector dual_values(const DualFrameModel& model, const Kernel& kernel, const Point& y);

/// sup over lambda of ||g_lambda||.
double dual_norm_sup(const DualFrameModel& model);

struct ProbeResult {
  Point y;
  double diagonal = 0.0;        // k(y, y)
  double reproduced = 0.0;      // sum_lambda k_lambda(y) conj(g_lambda(y))
  double target = 0.0;          // k(y,y) (riesz) or K_V(y,y) (frame)
  double residual = 0.0;        // |reproduced - target|
  double finite_size_gap = 0.0; // k(y,y) - target
  double dual_energy = 0.0;     // sum_lambda |g_lambda(y)|^2
};

struct DualIdentityReport {
  DualMode mode = DualMode::riesz;
  std::vector<ProbeResult> probes;
  std::size_t censored = 0;
  double identity_residual = 0.0;  // frame: max residual against K_V
  double projection_min = 0.0;     // riesz: min and max of the projection diagonal
  double projection_max = 0.0;
  bool projection_bounded = false;
  double biorthogonality_residual = 0.0;  // riesz: max |G G^-1 - I|
  double pairing_max = 0.0;               // max <k_lambda, g_lambda>
  double pairing_min = 0.0;
  double dual_energy_sup = 0.0;
  double dual_norm_sup = 0.0;
  double max_finite_size_gap = 0.0;
  bool pass = false;
};

struct DualCheckOptions {
  double edge_guard = 2.0;
  double tol = 1e-8;
};

DualIdentityReport dual_identities_check(const DualFrameModel& model, const Kernel& kernel, const PointSet& lambda,
                                         const Space& space, std::span<const Point> probes,
                                         const DualCheckOptions& opt = {});

struct DimensionFreeRow {
  double radius = 0.0;
  double inf_ratio = 0.0;
  double sup_ratio = 0.0;
  double max_identity_error = 0.0;  // |ratio - density ratio / trace ratio| relative
};

/// #(Lambda ∩ B_r(x)) / int_{B_r(x)} k(y,y) dmu over uncensored centers.
std::vector<DimensionFreeRow> dimension_free_ratios(const Kernel& kernel, const PointSet& lambda,
                                                    const Space& space, std::span<const Point> centers,
                                                    std::span<const double> radii, TracePath path);

/// Row-major little-endian float64 (re, im) pairs preceded by two uint64 dimensions.
void dump_matrix(const CMatrix& m, const std::string& path);
CMatrix load_matrix(const std::string& path);

}  // namespace rkhs
