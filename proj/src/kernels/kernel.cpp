#include <cmath>
#include <numbers>
#include <sstream>

#include <boost/math/special_functions/sin_pi.hpp>

#include "rkhs/errors.hpp"
#include "rkhs/kernels.hpp"

namespace rkhs {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

constexpr double kPi = std::numbers::pi;

// sin(pi t) / (pi t), exactly zero at nonzero integers.
double sinc(double t) noexcept {
  if (t == 0.0) return 1.0;
  return boost::math::sin_pi(t) / (kPi * t);
}

std::string num(double v) {
  std::ostringstream ss;
  ss << v;
  return ss.str();
}

}  // namespace

std::string to_string(DecayClass c) {
  switch (c) {
    case DecayClass::sinc: return "sinc";
    case DecayClass::gaussian: return "gaussian";
    case DecayClass::polynomial: return "polynomial";
    case DecayClass::hyperbolic: return "hyperbolic";
  }
  return "unknown";
}

Kernel::Kernel(KernelVariant v) : v_(std::move(v)) {
  std::visit(overloaded{
                 [](const PaleyWienerBox& k) {
                   if (k.widths.empty() || k.widths.size() > 6) throw InputError("Paley-Wiener box needs 1..6 widths");
                   for (double w : k.widths)
                     if (!(w > 0.0) || !std::isfinite(w)) throw InputError("Paley-Wiener widths must be positive");
                 },
                 [](const FockGaussianNormalized& k) {
                   if (k.n < 1 || k.n > 3) throw InputError("Fock complex dimension must be in 1..3");
                 },
                 [](const SyntheticPolyDecay& k) {
                   if (!(k.sigma > 0.0) || !std::isfinite(k.sigma)) throw InputError("sigma must be positive");
                   if (k.dim < 1 || k.dim > 6) throw InputError("dimension must be in 1..6");
                 },
                 [](const auto&) {},
             },
             v_);
}

std::string Kernel::name() const {
  std::string base = std::visit(overloaded{
                                    [](const PaleyWienerBox& k) {
                                      std::string s = "PaleyWienerBox(W=";
                                      for (std::size_t i = 0; i < k.widths.size(); ++i)
                                        s += (i ? "x" : "") + num(k.widths[i]);
                                      return s + ")";
                                    },
                                    [](const FockGaussianNormalized& k) {
                                      return "FockGaussianNormalized(" + std::to_string(k.n) + ")";
                                    },
                                    [](const GaborGaussian&) { return std::string("GaborGaussian"); },
                                    [](const SyntheticPolyDecay& k) {
                                      return "SyntheticPolyDecay(sigma=" + num(k.sigma) +
                                             ",d=" + std::to_string(k.dim) + ")";
                                    },
                                    [](const HyperbolicBergman&) { return std::string("HyperbolicBergman"); },
                                },
                                v_);
  return normalized_ ? "Normalized(" + base + ")" : base;
}

Space Kernel::natural_space() const {
  return std::visit(overloaded{
                        [](const PaleyWienerBox& k) {
                          return Space(EuclideanLebesgue{static_cast<int>(k.widths.size())});
                        },
                        [](const FockGaussianNormalized& k) { return Space(FockGaussian{k.n}); },
                        [](const GaborGaussian&) { return Space(PhasePlane{}); },
                        [](const SyntheticPolyDecay& k) { return Space(EuclideanLebesgue{k.dim}); },
                        [](const HyperbolicBergman&) { return Space(HyperbolicUpperHalfPlane{}); },
                    },
                    v_);
}

bool Kernel::compatible(const Space& space) const {
  const Space own = natural_space();
  if (std::holds_alternative<LogMetricLine>(space.variant()))
    return std::holds_alternative<PaleyWienerBox>(v_) && own.point_dim() == 1;
  return own.variant().index() == space.variant().index() && own.point_dim() == space.point_dim();
}

cplx Kernel::raw(const Point& x, const Point& y) const noexcept {
  return std::visit(overloaded{
                        [&](const PaleyWienerBox& k) {
                          double v = 1.0;
                          for (std::size_t j = 0; j < k.widths.size(); ++j)
                            v *= k.widths[j] * sinc(k.widths[j] * (x[j] - y[j]));
                          return cplx(v, 0.0);
                        },
                        [&](const FockGaussianNormalized& k) {
                          cplx e = 0.0;
                          double nz = 0.0, nw = 0.0;
                          for (int j = 0; j < k.n; ++j) {
                            const cplx z = x.complex_at(j), w = y.complex_at(j);
                            e += z * std::conj(w);
                            nz += std::norm(z);
                            nw += std::norm(w);
                          }
                          e -= 0.5 * (nz + nw);
                          return std::pow(2.0 / kPi, k.n) * std::exp(e);
                        },
                        [&](const GaborGaussian&) {
                          const double dx = x[0] - y[0], dw = x[1] - y[1];
                          const double mod = std::exp(-0.5 * kPi * (dx * dx + dw * dw));
                          return std::polar(mod, -kPi * dw * (x[0] + y[0]));
                        },
                        [&](const SyntheticPolyDecay& k) {
                          double s = 0.0;
                          for (int j = 0; j < k.dim; ++j) s += (x[j] - y[j]) * (x[j] - y[j]);
                          return cplx(std::pow(1.0 + s, -k.sigma), 0.0);
                        },
                        [&](const HyperbolicBergman&) {
                          const cplx z(x[0], x[1]), wbar(y[0], -y[1]);
                          const cplx q = z - wbar;
                          return -x[1] * y[1] / (q * q);
                        },
                    },
                    v_);
}

double Kernel::raw_diagonal(const Point& x) const noexcept { return raw(x, x).real(); }

double Kernel::constant_diagonal() const noexcept {
  return std::visit(overloaded{
                        [](const PaleyWienerBox& k) {
                          double v = 1.0;
                          for (double w : k.widths) v *= w;
                          return v;
                        },
                        [](const FockGaussianNormalized& k) { return std::pow(2.0 / kPi, k.n); },
                        [](const GaborGaussian&) { return 1.0; },
                        [](const SyntheticPolyDecay&) { return 1.0; },
                        [](const HyperbolicBergman&) { return 0.25; },
                    },
                    v_);
}

cplx Kernel::eval_unchecked(const Point& x, const Point& y) const noexcept {
  if (!normalized_) return raw(x, y);
  return raw(x, y) / (psi(x) * psi(y));
}

cplx Kernel::eval(const Point& x, const Point& y) const {
  const std::size_t m = natural_space().point_dim();
  if (x.dim() != m || y.dim() != m)
    throw InputError(name() + " expects points of dimension " + std::to_string(m));
  if (std::holds_alternative<HyperbolicBergman>(v_) && (!(x[1] > 0.0) || !(y[1] > 0.0)))
    throw InputError("half-plane kernel needs Im(z) > 0");
  return eval_unchecked(x, y);
}

std::optional<double> Kernel::known_diagonal() const noexcept {
  if (normalized_) return 1.0;
  return constant_diagonal();
}

std::optional<double> Kernel::formal_dimension() const noexcept {
  if (std::holds_alternative<GaborGaussian>(v_)) return 1.0;
  return std::nullopt;
}

DecayClass Kernel::decay_class() const noexcept {
  return std::visit(overloaded{
                        [](const PaleyWienerBox&) { return DecayClass::sinc; },
                        [](const FockGaussianNormalized&) { return DecayClass::gaussian; },
                        [](const GaborGaussian&) { return DecayClass::gaussian; },
                        [](const SyntheticPolyDecay&) { return DecayClass::polynomial; },
                        [](const HyperbolicBergman&) { return DecayClass::hyperbolic; },
                    },
                    v_);
}

double Kernel::decay_scale() const noexcept {
  return std::visit(overloaded{
                        // sinc(t) = 0.1 at t = 0.9080
                        [](const PaleyWienerBox& k) {
                          double w = 0.0;
                          for (double v : k.widths) w = std::max(w, v);
                          return 0.9080 / w;
                        },
                        [](const FockGaussianNormalized&) { return std::sqrt(std::log(100.0)); },
                        [](const GaborGaussian&) { return std::sqrt(std::log(100.0) / kPi); },
                        [](const SyntheticPolyDecay& k) {
                          return std::sqrt(std::pow(100.0, 1.0 / (2.0 * k.sigma)) - 1.0);
                        },
                        [](const HyperbolicBergman&) { return 2.0 * std::acosh(std::sqrt(10.0)); },
                    },
                    v_);
}

bool Kernel::axiom_test() const noexcept { return std::holds_alternative<SyntheticPolyDecay>(v_); }

std::optional<double> Kernel::radial_modulus(double t) const {
  const double scale = normalized_ ? 1.0 / constant_diagonal() : 1.0;
  return std::visit(overloaded{
                        [&](const PaleyWienerBox& k) -> std::optional<double> {
                          if (k.widths.size() != 1) return std::nullopt;
                          return scale * k.widths[0] * std::abs(sinc(k.widths[0] * t));
                        },
                        [&](const FockGaussianNormalized& k) -> std::optional<double> {
                          return scale * std::pow(2.0 / kPi, k.n) * std::exp(-0.5 * t * t);
                        },
                        [&](const GaborGaussian&) -> std::optional<double> {
                          return scale * std::exp(-0.5 * kPi * t * t);
                        },
                        [&](const SyntheticPolyDecay& k) -> std::optional<double> {
                          return scale * std::pow(1.0 + t * t, -k.sigma);
                        },
                        [&](const HyperbolicBergman&) -> std::optional<double> {
                          const double c = std::cosh(0.5 * t);
                          return scale * 0.25 / (c * c);
                        },
                    },
                    v_);
}

double Kernel::psi(const Point& x) const noexcept { return std::sqrt(raw_diagonal(x)); }

Kernel normalize(const Kernel& k) {
  if (k.normalized_) return k;
  if (!(k.constant_diagonal() > 0.0)) throw DegenerateKernelError("kernel diagonal vanishes; cannot normalize");
  Kernel out = k;
  out.normalized_ = true;
  return out;
}

}  // namespace rkhs
