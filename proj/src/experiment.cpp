#include "pinsker/experiment.hpp"

namespace pinsker {

ExperimentConfig ExperimentConfig::from_config(const Config& config) {
  ExperimentConfig out;

  out.function_id = config.get_int("model.function", 1);
  if (out.function_id < 1 || out.function_id > 3) {
    throw ConfigError("model.function", "must be 1, 2 or 3");
  }
  out.fill = config.get_double("model.fill", 0.9);
  const int k = config.get_int("model.ball.k", 1);
  const double r = config.get_double("model.ball.r", 1.0);
  if (k < 1) throw ConfigError("model.ball.k", "must be >= 1");
  if (!(r > 0.0)) throw ConfigError("model.ball.r", "must be > 0");
  out.ball = SobolevBall(k, r);

  const std::string kind =
      config.get_string("model.scale.kind", "goldfeld_quandt");
  if (kind != "goldfeld_quandt") {
    throw ConfigError("model.scale.kind",
                      "only 'goldfeld_quandt' is configurable");
  }
  try {
    out.scale = ScaleFamily::goldfeld_quandt(
        config.get_double("model.scale.c0", 1.0),
        config.get_double("model.scale.c1", 0.0),
        config.get_double("model.scale.c2", 0.0));
  } catch (const std::invalid_argument& e) {
    throw ConfigError("model.scale", e.what());
  }

  out.xi_star = config.get_double("estimator.xi_star", 3.0);
  if (out.xi_star < 3.0) {
    throw ConfigError("estimator.xi_star", "must be >= 3");
  }
  std::vector<std::string> names{"gaussian", "uniform"};
  if (config.has("model.noise")) names = config.get_list("model.noise");
  for (const std::string& name : names) {
    NoiseDensity density;
    try {
      density = NoiseDensity::from_name(name);
    } catch (const std::invalid_argument& e) {
      throw ConfigError("model.noise", e.what());
    }
    if (density.fourth_moment > out.xi_star) {
      throw ConfigError("model.noise",
                        "density '" + name + "' has fourth moment " +
                            std::to_string(density.fourth_moment) +
                            " above xi_star; raise estimator.xi_star");
    }
    out.noises.push_back(density);
  }

  out.gamma = config.get_double("estimator.gamma", 2.0);
  if (!(out.gamma > 0.0)) throw ConfigError("estimator.gamma", "must be > 0");

  if (config.has("run.ns")) {
    out.ns = config.get_int_list("run.ns");
    for (int n : out.ns) {
      if (n < 3 || n % 2 == 0) {
        throw ConfigError("run.ns", "every n must be odd and >= 3");
      }
    }
  }
  out.replications = config.get_int("run.m", 2);
  if (out.replications < 2) throw ConfigError("run.m", "must be >= 2");
  if (!config.has("run.seed")) {
    throw ConfigError("run.seed", "missing (wall-clock seeding is not allowed)");
  }
  out.seed = static_cast<std::uint64_t>(config.get_long("run.seed"));

  out.lb_k = config.get_int("lowerbound.k", 1);
  out.lb_r = config.get_double("lowerbound.r", 1.0);
  out.lb_epsilon = config.get_double("lowerbound.epsilon", 0.1);
  out.lb_eta = config.get_double("lowerbound.eta", 0.1);
  if (out.lb_k < 1) throw ConfigError("lowerbound.k", "must be >= 1");
  if (!(out.lb_r > 0.0)) throw ConfigError("lowerbound.r", "must be > 0");
  if (!(out.lb_epsilon > 0.0) || !(out.lb_epsilon < 1.0)) {
    throw ConfigError("lowerbound.epsilon", "must lie in (0, 1)");
  }
  if (!(out.lb_eta > 0.0) || !(out.lb_eta < 0.5)) {
    throw ConfigError("lowerbound.eta", "must lie in (0, 1/2)");
  }
  const std::string rule = config.get_string("lowerbound.n_rule", "desk-log");
  if (rule == "paper-ln4") {
    out.lb_rule = NRule::PaperLn4;
  } else if (rule == "desk-log") {
    out.lb_rule = NRule::DeskLog;
  } else if (rule.rfind("fixed:", 0) == 0) {
    out.lb_rule = NRule::Fixed;
    try {
      out.lb_fixed_N = std::stoi(rule.substr(6));
    } catch (const std::exception&) {
      throw ConfigError("lowerbound.n_rule", "fixed:<N> needs an integer");
    }
    if (out.lb_fixed_N < 1) {
      throw ConfigError("lowerbound.n_rule", "fixed N must be >= 1");
    }
  } else {
    throw ConfigError("lowerbound.n_rule",
                      "expected paper-ln4, desk-log or fixed:<N>");
  }
  out.lb_draws = config.get_int("lowerbound.draws", 200);
  if (out.lb_draws < 1) throw ConfigError("lowerbound.draws", "must be >= 1");
  if (config.has("lowerbound.ns")) {
    out.lb_ns = config.get_long_list("lowerbound.ns");
    for (long long n : out.lb_ns) {
      if (n < 3) throw ConfigError("lowerbound.ns", "every n must be >= 3");
    }
  }
  out.lb_eps0 = config.get_double("lowerbound.eps0", 0.5);
  if (!(out.lb_eps0 > 0.0)) throw ConfigError("lowerbound.eps0", "must be > 0");

  return out;
}

LibraryFunction ExperimentConfig::function() const {
  return library_function(function_id, ball, fill);
}

std::vector<ModelSpec> ExperimentConfig::model_specs() const {
  const LibraryFunction f = function();
  std::vector<ModelSpec> specs;
  specs.reserve(noises.size());
  for (const NoiseDensity& density : noises) {
    specs.push_back(make_model(f, scale, density, ball));
  }
  return specs;
}

}  // namespace pinsker
