#include <cmath>
#include <limits>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "rkhs/errors.hpp"
#include "rkhs/kernels.hpp"

namespace rkhs {

double radial_tail_integral(const Space& space, const Point& x, const std::function<double(double)>& f, double r) {
  if (space.is_discrete()) throw InputError("radial integrals need a continuous space");
  if (!(r >= 0.0)) throw InputError("tail radius must be nonnegative");
  using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
  const auto integrand = [&](double t) { return f(t) * shell_density(space, x, t); };

  constexpr double kMaxReach = 1e12;
  constexpr double kSettled = 32.0;
  double total = 0.0, prev = -1.0, a = r;
  double q = 0.0;
  int rising = 0;
  while (a < kMaxReach) {
    const double b = a + std::max(a, 1.0);
    const double part = GK::integrate(integrand, a, b, 8, 1e-13);
    if (!std::isfinite(part)) return std::numeric_limits<double>::infinity();
    total += part;
    if (prev > 0.0 && a >= kSettled) {
      q = part / prev;
      if (q >= 1.0) {
        if (++rising >= 5) return std::numeric_limits<double>::infinity();
      } else {
        rising = 0;
        const double rest = part * q / (1.0 - q);
        if (rest <= 1e-15 * total) return total + rest;
      }
    } else if (prev == 0.0 && part == 0.0 && a >= kSettled) {
      return total;
    }
    prev = part;
    a = b;
  }
  return q >= 1.0 ? std::numeric_limits<double>::infinity() : total;
}

}  // namespace rkhs
