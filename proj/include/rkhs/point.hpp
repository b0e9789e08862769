#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>

namespace rkhs {

/// A point of one of the built-in spaces, stored as real coordinates.
///
/// Complex points (Fock space) are stored as interleaved (re, im) pairs,
/// phase-space points as (x, omega), half-plane points as (x, y) with y > 0,
/// and word-metric points as integral doubles.
class Point {
 public:
  static constexpr std::size_t kMaxDim = 6;

  Point() = default;
  Point(std::initializer_list<double> coords);
  explicit Point(std::span<const double> coords);

  static Point zeros(std::size_t dim);
  static Point from_complex(std::span<const std::complex<double>> z);

  std::size_t dim() const noexcept { return dim_; }
  double operator[](std::size_t i) const noexcept { return c_[i]; }
  double& operator[](std::size_t i) noexcept { return c_[i]; }
  std::span<const double> coords() const noexcept { return {c_.data(), dim_}; }

  /// i-th complex coordinate (requires an even dimension).
  std::complex<double> complex_at(std::size_t i) const noexcept {
    return {c_[2 * i], c_[2 * i + 1]};
  }

  Point operator+(const Point& o) const;
  Point operator-(const Point& o) const;
  Point operator*(double s) const;
  double norm() const noexcept;

  friend bool operator==(const Point& a, const Point& b) noexcept;
  friend bool operator<(const Point& a, const Point& b) noexcept;

  std::string to_string(char sep = ' ') const;

 private:
  std::array<double, kMaxDim> c_{};
  std::uint8_t dim_ = 0;
};

}  // namespace rkhs
