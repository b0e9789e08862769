#pragma once

#include <stdexcept>
#include <string>

namespace rkhs {

/// Malformed arguments: dimension mismatches, non-positive radii, bad configs.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A kernel whose diagonal vanishes where a normalization needs it.
class DegenerateKernelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A finite-section window that produced no usable subspace or samples.
class DegenerateWindowError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Gram or frame operator too close to singular for the requested ridge.
class SingularMatrixError : public std::runtime_error {
 public:
  SingularMatrixError(const std::string& what, double lambda_min)
      : std::runtime_error(what), lambda_min_(lambda_min) {}
  double lambda_min() const noexcept { return lambda_min_; }

 private:
  double lambda_min_;
};

/// A computation that needs data outside a point set's window.
class CensoredError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rkhs
