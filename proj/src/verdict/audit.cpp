#include <cmath>
#include <sstream>

#include "rkhs/errors.hpp"
#include "rkhs/verdict.hpp"

namespace rkhs {

namespace {

std::vector<CurvePoint> tail_curve(const TailReport& t) {
  std::vector<CurvePoint> c;
  for (std::size_t k = 0; k < t.radii.size(); ++k) c.push_back({t.radii[k], t.sup_tail[k]});
  return c;
}

AxiomVerdict tail_verdict(const std::string& name, const TailReport& t, double eps) {
  AxiomVerdict v;
  v.name = name;
  v.pass = t.pass;
  v.censored = t.censored > 0;
  v.statistic_name = "sup_tail_at_largest_radius";
  v.statistic = t.sup_tail.back();
  v.curve = tail_curve(t);
  std::ostringstream ss;
  if (v.censored) ss << t.censored << " censored (center, radius) cells; ";
  if (!t.nonincreasing) ss << "tail not nonincreasing; ";
  const auto it = t.r_of_eps.find(eps);
  if (it != t.r_of_eps.end() && it->second) ss << "r(" << eps << ") = " << *it->second;
  else ss << "tail never reaches " << eps;
  v.note = ss.str();
  return v;
}

}  // namespace

std::vector<double> default_wad_radii(const Space& space) {
  const int horizon = static_cast<int>(default_wad_horizon(space));
  std::vector<double> r;
  for (int i = 1; i <= horizon; ++i) r.push_back(i);
  return r;
}

AxiomAudit hypothesis_audit(const Space& space, const Kernel& kernel, const PointSet& lambda,
                            const AuditSettings& s) {
  if (s.centers.empty()) throw InputError("audit needs centers");
  if (!kernel.compatible(space)) throw InputError(kernel.name() + " does not live on " + space.name());
  AxiomAudit a;

  const NdbResult ndb = check_ndb(space, s.centers, s.ndb_radius, s.ndb_floor);
  a.ndb = {"NDB", ndb.pass, false, "inf_ball_measure", ndb.inf_measure, {{s.ndb_radius, ndb.inf_measure}}, ""};

  const std::vector<double> wad_radii = s.wad_radii.empty() ? default_wad_radii(space) : s.wad_radii;
  const WadResult wad = check_wad(space, s.centers, wad_radii, s.wad_tol);
  a.wad.name = "WAD";
  a.wad.pass = wad.pass;
  a.wad.statistic_name = "shell_ratio_at_largest_radius";
  a.wad.statistic = wad.ratio_curve.back().value;
  a.wad.curve = wad.ratio_curve;
  {
    std::ostringstream ss;
    const CurvePoint& last = wad.ratio_curve.back();
    ss << "shell ratio " << last.value << " at r = " << last.r << (wad.pass ? " within" : " against") << " tol "
       << wad.tol << " (horizon " << wad.horizon << (wad.decreasing ? ", decreasing)" : ", not decreasing)");
    a.wad.note = ss.str();
  }

  const AxiomDResult d = check_axiom_d(kernel, s.centers);
  a.d = {"D", d.pass, false, "C1", d.c1, {}, ""};
  {
    std::ostringstream ss;
    ss << "C1 = " << d.c1 << ", C2 = " << d.c2;
    a.d.note = ss.str();
  }
  a.witness = witness_diagonal_bound(kernel, witness_norm_bound(kernel), d);
  if (!a.witness->consistent) a.d.note += "; witness bound exceeds the observed diagonal (modeling error)";

  TailOptions topt;
  topt.pass_eps = s.tail_eps;
  if (!s.wl_radii.empty()) {
    a.wl_tail = check_wl(kernel, space, s.centers, s.wl_radii, topt);
    a.wl = tail_verdict("WL", *a.wl_tail, s.tail_eps);
  } else {
    a.wl = {"WL", false, false, "sup_tail_at_largest_radius", NAN, {}, "no WL radii configured"};
  }

  a.separation = relative_separation(lambda, space, s.separation_rho, s.centers);
  if (!s.hap_radii.empty()) {
    a.hap_tail = check_hap(kernel, lambda, space, s.centers, s.hap_radii, topt);
    a.hap = tail_verdict("HAP", *a.hap_tail, s.tail_eps);
  } else {
    a.hap = {"HAP", false, false, "sup_tail_at_largest_radius", NAN, {}, "no HAP radii configured"};
  }
  if (!a.separation->pass) {
    a.hap.pass = false;
    a.hap.note += "; point set not relatively separated";
  }

  if (s.poly_decay) {
    PolyDecayOptions popt;
    popt.pairs = s.poly_decay->pairs;
    popt.seed = s.seed;
    const auto radii = s.poly_decay->radii.empty() ? s.wl_radii : s.poly_decay->radii;
    const PolyDecayResult pd =
        check_poly_decay_hypothesis(kernel, space, s.poly_decay->sigma, s.poly_decay->c, s.centers, radii, popt);
    AxiomVerdict v;
    v.name = "poly_decay";
    v.pass = pd.pass;
    v.statistic_name = "fitted_constant";
    v.statistic = pd.fitted_c;
    v.curve = pd.tail_curve;
    std::ostringstream ss;
    ss << "sigma " << pd.sigma << ", C " << pd.c << (pd.decay_holds ? ", decay holds" : ", decay violated")
       << (pd.tail_finite ? "" : ", tail integral diverges") << (pd.tail_pass ? ", tail vanishes" : "");
    v.note = ss.str();
    a.poly_decay = v;
  }

  for (const AxiomVerdict* v : {&a.ndb, &a.wad, &a.d, &a.wl, &a.hap})
    if (!v->pass) a.failures.push_back(v->name + (v->censored ? " (censored)" : "") + ": " + v->note);
  if (a.poly_decay && !a.poly_decay->pass) a.failures.push_back("poly_decay: " + a.poly_decay->note);

  a.interpolation_applicable = a.ndb.pass && a.wad.pass && a.d.pass && a.wl.pass;
  a.sampling_applicable = a.interpolation_applicable && a.hap.pass;
  return a;
}

}  // namespace rkhs
