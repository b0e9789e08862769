#include <cstdint>
#include <cstring>
#include <fstream>

#include "rkhs/errors.hpp"
#include "rkhs/parallel.hpp"
#include "rkhs/spectral.hpp"

namespace rkhs {

HermitianMatrix gram(const Kernel& kernel, const PointSet& lambda, std::vector<std::string>* warnings) {
  const auto& pts = lambda.points();
  const std::size_t n = pts.size();
  if (n == 0) throw InputError("Gram matrix of an empty point set");
  if (n > kMaxOrder) throw InputError("Gram order " + std::to_string(n) + " exceeds the cap " + std::to_string(kMaxOrder));
  const std::size_t m = kernel.natural_space().point_dim();
  for (const auto& p : pts)
    if (p.dim() != m) throw InputError(kernel.name() + " expects points of dimension " + std::to_string(m));

  CMatrix g(n, n);
  parallel_for(n, [&](std::size_t j) {
    for (std::size_t i = 0; i <= j; ++i) {
      const cplx v = kernel.eval_unchecked(pts[i], pts[j]);
      g(i, j) = v;
      g(j, i) = std::conj(v);
    }
    g(j, j) = g(j, j).real();
  });

  if (warnings) {
    const Space space = kernel.natural_space();
    const double close = 1e-6 * kernel.decay_scale();
    std::size_t pairs = 0;
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < j; ++i)
        if (distance(space, pts[i], pts[j]) < close) ++pairs;
    if (pairs)
      warnings->push_back(std::to_string(pairs) + " near-duplicate point pair(s); Gram matrix is near-singular");
  }
  return HermitianMatrix(std::move(g));
}

SpectralReport riesz_bounds(const Kernel& kernel, const PointSet& lambda) {
  std::vector<std::string> warnings;
  const HermitianMatrix g = gram(kernel, lambda, &warnings);
  SpectralReport rep = spectral_report(g);
  rep.warnings = std::move(warnings);
  return rep;
}

std::vector<BoundPoint> riesz_curve(const Kernel& kernel, const PointSet& lambda, const Space& space,
                                    const Point& center, std::span<const double> half_widths,
                                    std::vector<SpectralReport>* reports) {
  std::vector<BoundPoint> out;
  for (double w : half_widths) {
    if (!ball_within_window(lambda, space, center, w))
      throw CensoredError("Riesz window of half-width " + std::to_string(w) + " exceeds the point-set window");
    const PointSet sub = lambda.restrict_to(space, center, w);
    if (sub.empty()) throw DegenerateWindowError("no points within half-width " + std::to_string(w));
    const SpectralReport rep = riesz_bounds(kernel, sub);
    out.push_back({w, sub.size(), rep.lambda_min, rep.lambda_max});
    if (reports) reports->push_back(rep);
  }
  return out;
}

void dump_matrix(const CMatrix& m, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  const std::uint64_t dims[2] = {static_cast<std::uint64_t>(m.rows()), static_cast<std::uint64_t>(m.cols())};
  out.write(reinterpret_cast<const char*>(dims), sizeof dims);
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      const double pair[2] = {m(i, j).real(), m(i, j).imag()};
      out.write(reinterpret_cast<const char*>(pair), sizeof pair);
    }
  if (!out) throw std::runtime_error("short write to " + path);
}

CMatrix load_matrix(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::uint64_t dims[2];
  in.read(reinterpret_cast<char*>(dims), sizeof dims);
  if (!in) throw InputError("truncated matrix header in " + path);
  CMatrix m(static_cast<Eigen::Index>(dims[0]), static_cast<Eigen::Index>(dims[1]));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      double pair[2];
      in.read(reinterpret_cast<char*>(pair), sizeof pair);
      if (!in) throw InputError("truncated matrix data in " + path);
      m(i, j) = {pair[0], pair[1]};
    }
  return m;
}

}  // namespace rkhs
