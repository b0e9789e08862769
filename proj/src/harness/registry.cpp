#include <cmath>
#include <numbers>

#include "rkhs/errors.hpp"
#include "rkhs/harness.hpp"

namespace rkhs {

namespace {

ojson paley_wiener(const std::string& id, double alpha) {
  return {{"experiment_id", id},
          {"seed", 0},
          {"space", {{"type", "EuclideanLebesgue"}, {"dim", 1}}},
          {"kernel", {{"type", "PaleyWienerBox"}, {"widths", {1.0}}}},
          {"pointset", {{"type", "lattice"}, {"steps", {alpha}}, {"window", 120}}},
          {"centers", {{"spacing", 0.5}}},
          {"radii", {25, 50, 100}},
          {"quadrature", {{"h", 0.05}}},
          {"audit", {{"centers", {{0.0}, {0.25}, {0.5}}}, {"wl_radii", {5, 10, 20, 40}}, {"hap_radii", {5, 10, 20, 40}}}},
          {"trace", {{"path", "known_diagonal"}}},
          {"gram", {{"windows", {16, 32, 64}}}},
          {"framebounds", {{"radii", {8, 16, 32}}, {"h", 0.1}}},
          {"locspec", {{"radii", {4, 8, 16}}, {"h", 0.05}}}};
}

ojson fock(const std::string& id, double s) {
  const double step = std::sqrt(std::numbers::pi * s);
  return {{"experiment_id", id},
          {"seed", 0},
          {"space", {{"type", "FockGaussian"}, {"n", 1}}},
          {"kernel", {{"type", "FockGaussianNormalized"}, {"n", 1}}},
          {"pointset", {{"type", "lattice"}, {"steps", {step, step}}, {"window", 40}}},
          {"centers", {{"spacing", 1.0}}},
          {"radii", {10, 20, 30}},
          {"quadrature", {{"h", 0.05}}},
          {"audit",
           {{"centers", {{0.0, 0.0}, {0.7, 0.3}}}, {"wl_radii", {1, 2, 3, 4}}, {"hap_radii", {2, 4, 6, 8}}}},
          {"trace", {{"path", "quadrature"}, {"radii", {2, 4, 8}}, {"centers", {{0.0, 0.0}, {3.0, 1.0}}}}},
          {"gram", {{"windows", {6, 9, 12}}}},
          {"framebounds", {{"radii", {4, 6, 8}}, {"h", 0.4}}},
          {"locspec", {{"radii", {2, 3}}, {"h", 0.2}}}};
}

ojson gabor(const std::string& id, double ab) {
  const double step = std::sqrt(ab);
  return {{"experiment_id", id},
          {"seed", 0},
          {"space", {{"type", "PhasePlane"}}},
          {"kernel", {{"type", "GaborGaussian"}}},
          {"pointset", {{"type", "lattice"}, {"steps", {step, step}}, {"window", 30}}},
          {"centers", {{"spacing", 1.0}}},
          {"radii", {8, 16, 24}},
          {"quadrature", {{"h", 0.05}}},
          {"audit", {{"centers", {{0.0, 0.0}, {0.3, 0.2}}}, {"wl_radii", {1, 2, 3}}, {"hap_radii", {1, 2, 3, 4}}}},
          {"trace", {{"path", "known_diagonal"}}},
          {"gram", {{"windows", {3, 5, 7, 9}}}},
          {"framebounds", {{"radii", {2, 3, 4, 5}}, {"h", 0.2}}},
          {"locspec", {{"radii", {2, 3}}, {"h", 0.2}}}};
}

ojson synthetic() {
  return {{"experiment_id", "synthetic_audit"},
          {"seed", 0},
          {"space", {{"type", "EuclideanLebesgue"}, {"dim", 1}}},
          {"kernel", {{"type", "SyntheticPolyDecay"}, {"sigma", 2.0}, {"dim", 1}}},
          {"pointset", {{"type", "jittered_lattice"}, {"steps", {1.0}}, {"jitter", 0.2}, {"seed", 7}, {"window", 150}}},
          {"centers", {{"spacing", 0.5}}},
          {"radii", {25, 50, 100}},
          {"quadrature", {{"h", 0.05}}},
          {"audit",
           {{"centers", {{0.0}, {0.5}}},
            {"wl_radii", {1, 2, 5, 10, 20, 50}},
            {"hap_radii", {5, 10, 20, 40}},
            {"poly_decay", {{"sigma", 2.0}, {"c", 2.0}, {"radii", {1, 2, 5, 10, 20, 50}}, {"pairs", 1000}}}}},
          {"trace", {{"path", "known_diagonal"}}},
          {"gram", {{"windows", {16, 32, 64}}}}};
}

}  // namespace

std::vector<std::string> canonical_names() {
  return {"pw_alpha_0.8", "pw_alpha_1.0", "pw_alpha_1.25", "fock_s_0.8",
          "fock_s_1.2",   "gabor_ab_0.8", "gabor_ab_1.2",  "synthetic_audit"};
}

ExperimentConfig canonical_config(const std::string& name) {
  if (name == "pw_alpha_0.8") return parse_config(paley_wiener(name, 0.8));
  if (name == "pw_alpha_1.0") return parse_config(paley_wiener(name, 1.0));
  if (name == "pw_alpha_1.25") return parse_config(paley_wiener(name, 1.25));
  if (name == "fock_s_0.8") return parse_config(fock(name, 0.8));
  if (name == "fock_s_1.2") return parse_config(fock(name, 1.2));
  if (name == "gabor_ab_0.8") return parse_config(gabor(name, 0.8));
  if (name == "gabor_ab_1.2") return parse_config(gabor(name, 1.2));
  if (name == "synthetic_audit") return parse_config(synthetic());
  throw InputError("unknown canonical config '" + name + "'");
}

}  // namespace rkhs
