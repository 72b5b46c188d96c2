#include "tubelog/config.hpp"

#include <fstream>

#include <json.hpp>

#include "tubelog/errors.hpp"

namespace tubelog {

RunConfig default_config() {
  RunConfig cfg;
  cfg.tolerances = {
      {"functional_eq", 1e-12}, {"reality", 1e-14},
      {"trough", 1e-12},        {"peak", 1e-10},
      {"lambda_residual", 1e-12}, {"derivative_rel", 1e-6},
      {"monodromy", 1e-10},     {"cylinder_end", 1e-8},
      {"coincidence", 1e-12},   {"membership", 1e-8},
      {"flow_return", 1e-6},    {"sigma", 1e-12},
      {"asymptotic_stability", 0.05}, {"c1_stability", 0.10},
  };
  return cfg;
}

double tol(const RunConfig& cfg, const std::string& name) {
  const auto it = cfg.tolerances.find(name);
  if (it == cfg.tolerances.end())
    throw DomainError("unknown tolerance name: " + name);
  return it->second;
}

void validate_config(const RunConfig& cfg) {
  if (cfg.depth < 0) throw DomainError("config: depth must be >= 0");
  for (const auto& [k, v] : cfg.tolerances)
    if (!(v >= 0.0)) throw DomainError("config: tolerance " + k + " negative");
  if (!cfg.alpha.explicit_values.empty()) {
    double prev = 0.0;
    for (double a : cfg.alpha.explicit_values) {
      if (!(a > prev && a < 1.0))
        throw DomainError(
            "config: alpha schedule must be strictly increasing in (0,1)");
      prev = a;
    }
  }
  if (cfg.a_cap < 5) throw DomainError("config: a_cap below the minimum a");
  if (cfg.t_samples < 2) throw DomainError("config: need at least 2 t-samples");
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("config: cannot open " + path);
  nlohmann::json j;
  in >> j;

  RunConfig cfg = default_config();
  for (const auto& [key, val] : j.items()) {
    if (key == "depth") cfg.depth = val.get<int>();
    else if (key == "h0") cfg.h0 = val.get<double>();
    else if (key == "M") cfg.M = val.get<double>();
    else if (key == "a_cap") cfg.a_cap = BigInt(val.get<std::string>());
    else if (key == "alpha_preset") cfg.alpha.preset = val.get<std::string>();
    else if (key == "alpha") cfg.alpha.explicit_values = val.get<std::vector<double>>();
    else if (key == "t_samples") cfg.t_samples = val.get<int>();
    else if (key == "output_dir") cfg.output_dir = val.get<std::string>();
    else if (key == "emit") cfg.emit = val.get<std::vector<std::string>>();
    else if (key == "seed") cfg.seed = val.get<std::uint64_t>();
    else if (key == "tolerances") {
      for (const auto& [tk, tv] : val.items()) cfg.tolerances[tk] = tv.get<double>();
    } else if (key == "grids") {
      for (const auto& [gk, gv] : val.items()) {
        if (gk == "x_grid") cfg.grids.x_grid = gv.get<int>();
        else if (gk == "segment_u_samples") cfg.grids.segment_u_samples = gv.get<int>();
        else if (gk == "tau_shrink_max") cfg.grids.tau_shrink_max = gv.get<int>();
        else if (gk == "margin_factor") cfg.grids.margin_factor = gv.get<double>();
        else if (gk == "hyp1_margin") cfg.grids.hyp1_margin = gv.get<double>();
        else throw DomainError("config: unknown grid key " + gk);
      }
    } else {
      throw DomainError("config: unknown key " + key);
    }
  }
  validate_config(cfg);
  return cfg;
}

}  // namespace tubelog
