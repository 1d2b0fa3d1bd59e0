#pragma once

#include <cstdint>
#include <vector>

#include "pinsker/config.hpp"
#include "pinsker/lowerbound.hpp"
#include "pinsker/models.hpp"

namespace pinsker {

// Fully parsed experiment settings. Validation enforces: odd ns, at least two
// replications, an explicit seed (no wall-clock seeding), and configured
// densities whose fourth moments are covered by xi_star.
struct ExperimentConfig {
  // model
  int function_id = 1;
  double fill = 0.9;
  SobolevBall ball{1, 1.0};
  ScaleFamily scale = ScaleFamily::goldfeld_quandt(1.0, 0.0, 0.0);
  std::vector<NoiseDensity> noises;

  // estimator
  double gamma = 2.0;
  double xi_star = 3.0;

  // run
  std::vector<int> ns;
  int replications = 2;
  std::uint64_t seed = 0;

  // lowerbound lab
  int lb_k = 1;
  double lb_r = 1.0;
  double lb_epsilon = 0.1;
  double lb_eta = 0.1;
  NRule lb_rule = NRule::DeskLog;
  int lb_fixed_N = 0;
  int lb_draws = 200;
  std::vector<long long> lb_ns;
  double lb_eps0 = 0.5;

  static ExperimentConfig from_config(const Config& config);

  LibraryFunction function() const;
  // one ModelSpec per configured density
  std::vector<ModelSpec> model_specs() const;
};

}  // namespace pinsker
