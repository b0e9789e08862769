#include <algorithm>
#include <cmath>
#include <limits>

#include "rkhs/errors.hpp"
#include "rkhs/spectral.hpp"

namespace rkhs {

namespace {

constexpr double kSingularFloor = 1e-13;

// (M + ridge I)^{-1} from the eigendecomposition; throws when the shifted
// spectrum reaches the floor.
CMatrix regularized_inverse(const CMatrix& m, double ridge, double& lambda_min, bool& flagged) {
  const Eigensystem es = eigh(HermitianMatrix(m, 1e-10));
  lambda_min = es.values(0);
  const double lambda_max = es.values(es.values.size() - 1);
  flagged = lambda_min <= 1e-2 * lambda_max;
  if (!(lambda_min + ridge > kSingularFloor * std::max(lambda_max, 1.0)))
    throw SingularMatrixError("matrix is singular beyond the ridge (lambda_min = " + std::to_string(lambda_min) + ")",
                              lambda_min);
  const RVector inv = (es.values.array() + ridge).inverse();
  return es.vectors * inv.asDiagonal() * es.vectors.adjoint();
}

CVector section_basis_values(const FiniteSection& fs, const Kernel& kernel, const Point& y) {
  CVector kv(static_cast<Eigen::Index>(fs.nodes.size()));
  for (std::size_t j = 0; j < fs.nodes.size(); ++j) kv(j) = kernel.eval_unchecked(y, fs.nodes[j]);
  return fs.basis.transpose() * kv;
}

}  // namespace

DualFrameModel dual_system(const Kernel& kernel, const PointSet& lambda, DualMode mode, double ridge,
                           const Space* space, std::optional<Point> center, double r, double tau,
                           std::optional<double> margin) {
  if (!(ridge >= 0.0)) throw InputError("ridge must be nonnegative");
  DualFrameModel model;
  model.mode = mode;
  model.ridge = ridge;
  if (mode == DualMode::riesz) {
    model.points = lambda.points();
    model.gram = gram(kernel, lambda).matrix();
  } else {
    if (!space || !center) throw InputError("frame-mode duals need a space, a center and a radius");
    model.section = finite_section(kernel, lambda, *space, *center, r, tau, margin);
    model.points = model.section->samples;
    if (model.points.empty()) throw DegenerateWindowError("finite section contains no samples");
    model.gram = model.section->s;
  }
  model.inverse = regularized_inverse(model.gram, ridge, model.lambda_min, model.flagged);
  return model;
}

CVector dual_values(const DualFrameModel& model, const Kernel& kernel, const Point& y) {
  if (model.mode == DualMode::riesz) {
    CVector kb(static_cast<Eigen::Index>(model.points.size()));
    for (std::size_t m = 0; m < model.points.size(); ++m) kb(m) = kernel.eval_unchecked(y, model.points[m]);
    return model.inverse.transpose() * kb;
  }
  const FiniteSection& fs = *model.section;
  return fs.phi.conjugate() * (model.inverse.transpose() * section_basis_values(fs, kernel, y));
}

double dual_norm_sup(const DualFrameModel& model) {
  double sup = 0.0;
  if (model.mode == DualMode::riesz) {
    const CMatrix q = model.inverse.adjoint() * model.gram * model.inverse;
    for (Eigen::Index i = 0; i < q.rows(); ++i) sup = std::max(sup, q(i, i).real());
  } else {
    const CMatrix& phi = model.section->phi;
    const CMatrix q = phi * (model.inverse * model.inverse) * phi.adjoint();
    for (Eigen::Index i = 0; i < q.rows(); ++i) sup = std::max(sup, q(i, i).real());
  }
  return std::sqrt(std::max(0.0, sup));
}

DualIdentityReport dual_identities_check(const DualFrameModel& model, const Kernel& kernel, const PointSet& lambda,
                                         const Space& space, std::span<const Point> probes,
                                         const DualCheckOptions& opt) {
  if (probes.empty()) throw InputError("dual identities need probe points");
  DualIdentityReport rep;
  rep.mode = model.mode;
  rep.projection_min = std::numeric_limits<double>::infinity();
  rep.projection_max = -std::numeric_limits<double>::infinity();
  rep.projection_bounded = true;

  const bool frame = model.mode == DualMode::frame_finite_section;
  for (const auto& y : probes) {
    space.validate(y);
    const bool reliable = frame ? distance(space, y, model.section->center) + opt.edge_guard <= model.section->center_r
                                : ball_within_window(lambda, space, y, opt.edge_guard);
    if (!reliable) {
      ++rep.censored;
      continue;
    }
    ProbeResult pr;
    pr.y = y;
    pr.diagonal = kernel.diagonal(y);
    const CVector g = dual_values(model, kernel, y);
    CVector kl(g.size());
    if (frame) {
      const CVector phi_y = section_basis_values(*model.section, kernel, y);
      kl = model.section->phi.conjugate() * phi_y;
      pr.target = phi_y.squaredNorm();
    } else {
      for (std::size_t m = 0; m < model.points.size(); ++m) kl(m) = kernel.eval_unchecked(y, model.points[m]);
      pr.target = pr.diagonal;
    }
    pr.reproduced = (kl.array() * g.conjugate().array()).sum().real();
    pr.dual_energy = g.squaredNorm();
    pr.finite_size_gap = pr.diagonal - pr.target;
    if (frame) {
      pr.residual = std::abs(pr.reproduced - pr.target);
      rep.identity_residual = std::max(rep.identity_residual, pr.residual / std::max(1.0, pr.target));
    } else {
      rep.projection_min = std::min(rep.projection_min, pr.reproduced);
      rep.projection_max = std::max(rep.projection_max, pr.reproduced);
      const double tol = opt.tol * std::max(1.0, pr.diagonal);
      if (pr.reproduced < -tol || pr.reproduced > pr.diagonal + tol) rep.projection_bounded = false;
      pr.residual = std::max(0.0, std::max(-pr.reproduced, pr.reproduced - pr.diagonal));
    }
    rep.dual_energy_sup = std::max(rep.dual_energy_sup, pr.dual_energy);
    rep.max_finite_size_gap = std::max(rep.max_finite_size_gap, pr.finite_size_gap);
    rep.probes.push_back(pr);
  }
  if (rep.probes.empty()) throw CensoredError("every probe lies outside the reliable window");

  rep.pairing_min = std::numeric_limits<double>::infinity();
  rep.pairing_max = -std::numeric_limits<double>::infinity();
  if (frame) {
    const CMatrix& phi = model.section->phi;
    const CMatrix q = phi * model.inverse * phi.adjoint();
    for (Eigen::Index i = 0; i < q.rows(); ++i) {
      rep.pairing_min = std::min(rep.pairing_min, q(i, i).real());
      rep.pairing_max = std::max(rep.pairing_max, q(i, i).real());
    }
  } else {
    const CMatrix prod = model.gram * model.inverse;
    rep.biorthogonality_residual =
        (prod - CMatrix::Identity(prod.rows(), prod.cols())).cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < prod.rows(); ++i) {
      rep.pairing_min = std::min(rep.pairing_min, prod(i, i).real());
      rep.pairing_max = std::max(rep.pairing_max, prod(i, i).real());
    }
  }
  rep.dual_norm_sup = dual_norm_sup(model);
  const bool finite = std::isfinite(rep.dual_energy_sup) && std::isfinite(rep.dual_norm_sup);
  if (frame) {
    rep.projection_min = rep.projection_max = 0.0;
    rep.pass = finite && rep.identity_residual <= opt.tol && rep.pairing_max <= 1.0 + opt.tol &&
               rep.pairing_min >= -opt.tol;
  } else {
    rep.pass = finite && rep.projection_bounded && rep.biorthogonality_residual <= opt.tol &&
               rep.pairing_max <= 1.0 + opt.tol;
  }
  return rep;
}

}  // namespace rkhs
