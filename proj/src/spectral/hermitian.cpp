#include <cmath>
#include <complex>
#include <limits>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include "rkhs/errors.hpp"
#include "rkhs/spectral.hpp"

namespace rkhs {

namespace {

void require_order(std::size_t n) {
  if (n == 0) throw InputError("empty matrix");
  if (n > kMaxOrder)
    throw InputError("matrix order " + std::to_string(n) + " exceeds the cap " + std::to_string(kMaxOrder));
}

// zheevr over [vl, inf) when `above` is set, else the full spectrum.
Eigensystem run_zheevr(const HermitianMatrix& h, bool vectors, std::optional<double> above) {
  const lapack_int n = static_cast<lapack_int>(h.order());
  CMatrix a = h.matrix();
  RVector w(n);
  CMatrix z(vectors ? n : 1, vectors ? n : 1);
  std::vector<lapack_int> isuppz(2 * static_cast<std::size_t>(n));
  lapack_int found = 0;
  const char range = above ? 'V' : 'A';
  const double vl = above ? std::nextafter(*above, -std::numeric_limits<double>::infinity()) : 0.0;
  const double vu = std::numeric_limits<double>::max();
  const lapack_int info =
      LAPACKE_zheevr(LAPACK_COL_MAJOR, vectors ? 'V' : 'N', range, 'U', n, a.data(), n, vl, vu, 0, 0, 0.0, &found,
                     w.data(), z.data(), vectors ? n : 1, isuppz.data());
  if (info != 0) throw std::runtime_error("zheevr failed with info " + std::to_string(info));
  Eigensystem out;
  out.values = w.head(found);
  if (vectors) out.vectors = z.leftCols(found);
  return out;
}

}  // namespace

HermitianMatrix::HermitianMatrix(CMatrix m, double tol) : m_(std::move(m)) {
  if (m_.rows() != m_.cols()) throw InputError("matrix is not square");
  require_order(static_cast<std::size_t>(m_.rows()));
  if (!m_.allFinite()) throw InputError("matrix has non-finite entries");
  const double scale = max_abs();
  const double asym = (m_ - m_.adjoint()).cwiseAbs().maxCoeff();
  if (asym > tol * scale) throw InputError("matrix is not Hermitian (asymmetry " + std::to_string(asym) + ")");
  const Eigen::Index n = m_.rows();
  for (Eigen::Index j = 0; j < n; ++j) {
    m_(j, j) = m_(j, j).real();
    for (Eigen::Index i = j + 1; i < n; ++i) m_(i, j) = std::conj(m_(j, i));
  }
}

double HermitianMatrix::max_abs() const noexcept { return m_.size() ? m_.cwiseAbs().maxCoeff() : 0.0; }

RVector eigvalsh(const HermitianMatrix& m) { return run_zheevr(m, false, std::nullopt).values; }

Eigensystem eigh(const HermitianMatrix& m) { return run_zheevr(m, true, std::nullopt); }

Eigensystem eigh_above(const HermitianMatrix& m, double threshold) { return run_zheevr(m, true, threshold); }

SpectralReport spectral_report(const RVector& ev, double trace) {
  SpectralReport rep;
  rep.eigenvalues.assign(ev.data(), ev.data() + ev.size());
  rep.trace = trace;
  if (ev.size() == 0) return rep;
  rep.lambda_min = ev.minCoeff();
  rep.lambda_max = ev.maxCoeff();
  for (double v : rep.eigenvalues)
    if (v >= 0.5) ++rep.plunge_count;
  rep.condition_flag = rep.lambda_min <= 1e-2 * rep.lambda_max;
  return rep;
}

SpectralReport spectral_report(const HermitianMatrix& m) {
  return spectral_report(eigvalsh(m), m.matrix().trace().real());
}

}  // namespace rkhs
