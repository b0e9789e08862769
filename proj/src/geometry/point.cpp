#include "rkhs/point.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "rkhs/errors.hpp"

namespace rkhs {

Point::Point(std::initializer_list<double> coords) : Point(std::span<const double>(coords.begin(), coords.size())) {}

Point::Point(std::span<const double> coords) {
  if (coords.size() > kMaxDim) throw InputError("point dimension exceeds " + std::to_string(kMaxDim));
  std::copy(coords.begin(), coords.end(), c_.begin());
  dim_ = static_cast<std::uint8_t>(coords.size());
}

Point Point::zeros(std::size_t dim) {
  if (dim > kMaxDim) throw InputError("point dimension exceeds " + std::to_string(kMaxDim));
  Point p;
  p.dim_ = static_cast<std::uint8_t>(dim);
  return p;
}

Point Point::from_complex(std::span<const std::complex<double>> z) {
  Point p = zeros(2 * z.size());
  for (std::size_t i = 0; i < z.size(); ++i) {
    p.c_[2 * i] = z[i].real();
    p.c_[2 * i + 1] = z[i].imag();
  }
  return p;
}

Point Point::operator+(const Point& o) const {
  if (o.dim_ != dim_) throw InputError("point dimension mismatch");
  Point p = *this;
  for (std::size_t i = 0; i < dim_; ++i) p.c_[i] += o.c_[i];
  return p;
}

Point Point::operator-(const Point& o) const {
  if (o.dim_ != dim_) throw InputError("point dimension mismatch");
  Point p = *this;
  for (std::size_t i = 0; i < dim_; ++i) p.c_[i] -= o.c_[i];
  return p;
}

Point Point::operator*(double s) const {
  Point p = *this;
  for (std::size_t i = 0; i < dim_; ++i) p.c_[i] *= s;
  return p;
}

double Point::norm() const noexcept {
  double s = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) s += c_[i] * c_[i];
  return std::sqrt(s);
}

bool operator==(const Point& a, const Point& b) noexcept {
  if (a.dim_ != b.dim_) return false;
  for (std::size_t i = 0; i < a.dim_; ++i)
    if (a.c_[i] != b.c_[i]) return false;
  return true;
}

bool operator<(const Point& a, const Point& b) noexcept {
  if (a.dim_ != b.dim_) return a.dim_ < b.dim_;
  for (std::size_t i = 0; i < a.dim_; ++i) {
    if (a.c_[i] < b.c_[i]) return true;
    if (b.c_[i] < a.c_[i]) return false;
  }
  return false;
}

std::string Point::to_string(char sep) const {
  std::string out;
  char buf[32];
  for (std::size_t i = 0; i < dim_; ++i) {
    if (i) out.push_back(sep);
    auto res = std::to_chars(buf, buf + sizeof buf, c_[i]);
    out.append(buf, res.ptr);
  }
  return out;
}

}  // namespace rkhs
