#pragma once

#include <cmath>
#include <complex>
#include <numbers>

namespace oracle {

// <pi(y, eta) g, pi(x, omega) g> for g(t) = 2^{1/4} e^{-pi t^2} and
// pi(x, omega) g(t) = e^{2 pi i omega t} g(t - x), by the trapezoid rule.
inline std::complex<double> gabor_inner(double x, double omega, double y, double eta, double step = 1e-3) {
  const double pi = std::numbers::pi;
  auto g = [&](double t) { return std::pow(2.0, 0.25) * std::exp(-pi * t * t); };
  const double lo = std::min(x, y) - 8.0, hi = std::max(x, y) + 8.0;
  const long n = static_cast<long>(std::ceil((hi - lo) / step));
  const double h = (hi - lo) / n;
  std::complex<double> s = 0.0;
  for (long k = 0; k <= n; ++k) {
    const double t = lo + k * h;
    const double w = (k == 0 || k == n) ? 0.5 : 1.0;
    s += w * g(t - y) * g(t - x) * std::polar(1.0, 2.0 * pi * (eta - omega) * t);
  }
  return s * h;
}

}  // namespace oracle
