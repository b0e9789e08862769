#include "rkhs/parallel.hpp"

#include <cstdlib>
#include <string>

namespace rkhs {

std::size_t thread_count() {
  static const std::size_t n = [] {
    if (const char* env = std::getenv("RKHS_THREADS")) {
      try {
        const long v = std::stol(env);
        if (v > 0) return static_cast<std::size_t>(v);
      } catch (...) {
      }
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return static_cast<std::size_t>(hw ? hw : 1);
  }();
  return n;
}

}  // namespace rkhs
