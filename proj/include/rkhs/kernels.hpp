#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "rkhs/geometry.hpp"

namespace rkhs {

using cplx = std::complex<double>;

/// Bandlimited functions on R^d with spectrum the box prod [-W_j/2, W_j/2].
struct PaleyWienerBox {
  std::vector<double> widths{1.0};
};

/// Gaussian-weight Fock space on C^n, kernel (2/pi)^n e^{z.conj(w) - |z|^2/2 - |w|^2/2}.
struct FockGaussianNormalized {
  int n = 1;
};

/// Short-time Fourier transforms with the L^2-normalized Gaussian window on the
/// phase plane; formal dimension 1.
struct GaborGaussian {};

/// (1 + |x - y|^2)^{-sigma} on R^d. Positive definite but not a projection
/// kernel of an L^2 subspace; used for hypothesis audits only.
struct SyntheticPolyDecay {
  double sigma = 2.0;
  int dim = 1;
};

/// Weighted Bergman kernel on the upper half-plane for mu = Im(z)^-2 dA / pi.
struct HyperbolicBergman {};

using KernelVariant =
    std::variant<PaleyWienerBox, FockGaussianNormalized, GaborGaussian, SyntheticPolyDecay, HyperbolicBergman>;

enum class DecayClass { sinc, gaussian, polynomial, hyperbolic };

std::string to_string(DecayClass c);

class Kernel {
 public:
  explicit Kernel(KernelVariant v);

  const KernelVariant& variant() const noexcept { return v_; }
  std::string name() const;

  /// The space the kernel lives on (default quadrature).
  Space natural_space() const;
  /// Natural space, or the log-metric line for 1D Paley-Wiener (same measure).
  bool compatible(const Space& space) const;

  /// k(x, y); throws InputError on dimension mismatch.
  cplx eval(const Point& x, const Point& y) const;
  /// k(x, y) without validation, for assembly loops.
  cplx eval_unchecked(const Point& x, const Point& y) const noexcept;
  double diagonal(const Point& x) const { return eval(x, x).real(); }

  std::optional<double> known_diagonal() const noexcept;
  std::optional<double> formal_dimension() const noexcept;
  DecayClass decay_class() const noexcept;
  /// Distance at which |k(x,y)|^2 / k(x,x)k(y,y) first drops to 1e-2.
  double decay_scale() const noexcept;
  /// True for kernels with no L^2-subspace interpretation.
  bool axiom_test() const noexcept;

  /// |k(x, y)| as a function of d(x, y) when it depends on nothing else.
  std::optional<double> radial_modulus(double t) const;

  bool normalized() const noexcept { return normalized_; }
  /// psi(x) = k(x, x)^{1/2} of the underlying kernel.
  double psi(const Point& x) const noexcept;

  friend Kernel normalize(const Kernel& k);

 private:
  cplx raw(const Point& x, const Point& y) const noexcept;
  double raw_diagonal(const Point& x) const noexcept;
  double constant_diagonal() const noexcept;

  KernelVariant v_;
  bool normalized_ = false;
};

/// k(x,y) / (psi(x) psi(y)). Idempotent; throws DegenerateKernelError when the
/// diagonal vanishes at an evaluation point.
Kernel normalize(const Kernel& k);

// ---------------------------------------------------------------------------
// Axiom checkers

struct AxiomDResult {
  double c1 = 0.0;
  double c2 = 0.0;
  bool pass = false;
};

AxiomDResult check_axiom_d(const Kernel& kernel, std::span<const Point> centers);

struct WitnessBound {
  double c = 0.0;
  double bound = 0.0;  // 1 / C^2
  bool vacuous = false;
  bool consistent = true;  // false flags a modeling error
};

/// Norm bound C of a unit-at-x witness f_x = k_x / k(x,x), per variant;
/// infinite for axiom-test kernels.
double witness_norm_bound(const Kernel& kernel);

WitnessBound witness_diagonal_bound(const Kernel& kernel, double c, const AxiomDResult& observed,
                                    double tol = 1e-12);

struct TailRow {
  std::size_t center_index = 0;
  double r = 0.0;
  double value = 0.0;
  bool censored = false;
};

struct TailReport {
  std::vector<double> radii;
  std::vector<double> sup_tail;  // per radius over uncensored centers, NaN if none
  std::vector<TailRow> rows;
  std::map<double, std::optional<double>> r_of_eps;
  std::size_t censored = 0;
  bool nonincreasing = true;
  bool pass = false;
};

struct TailOptions {
  std::vector<double> eps{0.1, 0.01};
  /// pass requires the final sup tail to be at most this value.
  double pass_eps = 0.01;
};

/// Sup over centers of the L^2(mu) tail of k_x outside B_r(x). Projection
/// kernels use k(x,x) minus the quadrature over the ball; axiom-test kernels
/// integrate the radial profile.
TailReport check_wl(const Kernel& kernel, const Space& space, std::span<const Point> centers,
                    std::span<const double> radii, const TailOptions& opt = {});

/// Sup over centers of sum over lambda outside B_r(x) of |k(x, lambda)|^2.
TailReport check_hap(const Kernel& kernel, const PointSet& lambda, const Space& space,
                     std::span<const Point> centers, std::span<const double> radii, const TailOptions& opt = {});

struct PolyDecayResult {
  double sigma = 0.0;
  double c = 0.0;
  std::size_t pairs = 0;
  double fitted_c = 0.0;  // max of |k|(1 + d)^sigma over the pairs
  bool decay_holds = false;
  std::vector<CurvePoint> tail_curve;
  bool tail_finite = false;
  bool tail_pass = false;
  bool pass = false;
};

struct PolyDecayOptions {
  std::size_t pairs = 1000;
  std::uint64_t seed = 0;
  double tail_drop = 1e-2;
};

PolyDecayResult check_poly_decay_hypothesis(const Kernel& kernel, const Space& space, double sigma, double c,
                                            std::span<const Point> centers, std::span<const double> radii,
                                            const PolyDecayOptions& opt = {});

// ---------------------------------------------------------------------------
// Radial integrals

/// Integral of f(d(x, y)) over X \ B_r(x) as int_r^inf f(t) V'(t) dt, or
/// +inf when the panel contributions stop shrinking.
double radial_tail_integral(const Space& space, const Point& x, const std::function<double(double)>& f, double r);

}  // namespace rkhs
