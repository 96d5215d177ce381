#include "nlslab/config.hpp"

#include <cstdio>
#include <set>

namespace nlslab {

namespace {

/// Strict-object reader: every key must be consumed.
class StrictObject {
public:
  StrictObject(const nlohmann::json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError("'" + path_ + "' must be an object");
  }

  bool has(const char* key) {
    seen_.insert(key);
    return j_.contains(key);
  }

  const nlohmann::json* raw(const char* key) {
    seen_.insert(key);
    auto it = j_.find(key);
    return it == j_.end() ? nullptr : &*it;
  }

  template <typename T>
  T get(const char* key, T def) {
    seen_.insert(key);
    auto it = j_.find(key);
    if (it == j_.end()) return def;
    try {
      return it->get<T>();
    } catch (const nlohmann::json::exception&) {
      throw ConfigError("bad value for '" + path_ + "." + key + "'");
    }
  }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it)
      if (!seen_.count(it.key()))
        throw ConfigError("unknown key '" + path_ + "." + it.key() + "'");
  }

  const std::string& path() const { return path_; }

private:
  const nlohmann::json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

std::array<double, 2> get_vec2(StrictObject& o, const char* key, std::array<double, 2> def,
                               int dim) {
  const nlohmann::json* v = o.raw(key);
  if (!v) return def;
  if (!v->is_array() || static_cast<int>(v->size()) != dim)
    throw ConfigError("'" + o.path() + "." + std::string(key) + "' must be an array of length " +
                      std::to_string(dim));
  std::array<double, 2> out = def;
  for (int i = 0; i < dim; ++i) out[static_cast<std::size_t>(i)] = (*v)[i].get<double>();
  return out;
}

TestFamily parse_family(const nlohmann::json& j, int dim) {
  StrictObject o(j, "data");
  const std::string family = o.get<std::string>("family", "gaussian");
  TestFamily out;
  if (family == "gaussian") {
    Gaussian f;
    f.center = get_vec2(o, "center", {0.0, 0.0}, dim);
    f.width = o.get<double>("width", 1.0);
    f.amplitude = Complex{o.get<double>("amplitude", 1.0), 0.0};
    out = f;
  } else if (family == "modulated_gaussian") {
    ModulatedGaussian f;
    f.center = get_vec2(o, "center", {0.0, 0.0}, dim);
    f.width = o.get<double>("width", 1.0);
    f.modulation = get_vec2(o, "modulation", {0.0, 0.0}, dim);
    f.amplitude = Complex{o.get<double>("amplitude", 1.0), 0.0};
    out = f;
  } else if (family == "annulus_indicator") {
    out = AnnulusIndicator{o.get<int>("j", 3)};
  } else if (family == "dyadic_bump") {
    out = DyadicBump{o.get<int>("j", 3)};
  } else if (family == "random_band_limited") {
    RandomBandLimited f;
    f.seed = o.get<std::uint64_t>("seed", 0);
    f.cutoff_fraction = o.get<double>("cutoff_fraction", 0.25);
    f.amplitude = o.get<double>("amplitude", 1.0);
    out = f;
  } else {
    throw ConfigError("unknown data.family '" + family +
                      "' (gaussian, modulated_gaussian, annulus_indicator, dyadic_bump, "
                      "random_band_limited)");
  }
  o.finish();
  return out;
}

picard::SolverConfig parse_solver(const nlohmann::json& j) {
  StrictObject o(j, "solver");
  picard::SolverConfig sc;
  sc.sign = o.get<int>("sign", 1);
  const std::string mode = o.get<std::string>("mode", "besov");
  if (mode == "besov")
    sc.mode = picard::Mode::besov;
  else if (mode == "lp_1d")
    sc.mode = picard::Mode::lp_1d;
  else
    throw ConfigError("solver.mode must be 'besov' or 'lp_1d'");
  sc.p = o.get<double>("p", 1.5);
  sc.tol = o.get<double>("tol", 1e-10);
  sc.max_iter = o.get<int>("max_iter", 64);
  sc.nodes_per_unit = o.get<int>("nodes_per_unit", 128);
  if (const nlohmann::json* h = o.raw("horizon")) {
    if (h->is_string() && h->get<std::string>() == "auto")
      sc.fixed_horizon.reset();
    else if (h->is_number())
      sc.fixed_horizon = h->get<double>();
    else
      throw ConfigError("solver.horizon must be 'auto' or a positive number");
  }
  o.finish();
  return sc;
}

// Per-check override blocks; each setter consumes its keys strictly.
void parse_verify_block(const nlohmann::json& j, VerifyConfig& v,
                        std::vector<EstimateId>& only) {
  StrictObject o(j, "verify");
  v.base_seed = o.get<std::uint64_t>("base_seed", v.base_seed);
  if (const nlohmann::json* ids = o.raw("only")) {
    if (!ids->is_array()) throw ConfigError("verify.only must be an array of estimate ids");
    for (const auto& e : *ids) {
      auto id = estimate_id_from_string(e.get<std::string>());
      if (!id) {
        std::string valid;
        for (auto i : all_estimate_ids()) valid += (valid.empty() ? "" : ", ") + to_string(i);
        throw ConfigError("unknown estimate id '" + e.get<std::string>() + "' (valid: " + valid +
                          ")");
      }
      only.push_back(*id);
    }
  }

  if (const nlohmann::json* b = o.raw("lemma21")) {
    StrictObject s(*b, "verify.lemma21");
    auto& c = v.lemma21;
    c.grid_n = s.get<int>("grid_n", c.grid_n);
    c.box = s.get<double>("box", c.box);
    c.tau_min = s.get<double>("tau_min", c.tau_min);
    c.tau_max = s.get<double>("tau_max", c.tau_max);
    c.tau_count = s.get<int>("tau_count", c.tau_count);
    c.widths = s.get<std::vector<double>>("widths", c.widths);
    c.centers = s.get<std::vector<double>>("centers", c.centers);
    c.wrap_invalid = s.get<double>("wrap_invalid", c.wrap_invalid);
    c.slope_min = s.get<double>("slope_min", c.slope_min);
    c.slope_max = s.get<double>("slope_max", c.slope_max);
    if (c.widths.size() != 3 || c.centers.size() != 3)
      throw ConfigError("verify.lemma21 widths/centers must have length 3");
    s.finish();
  }
  if (const nlohmann::json* b = o.raw("lemma22")) {
    StrictObject s(*b, "verify.lemma22");
    auto& c = v.lemma22;
    c.grid_n = s.get<int>("grid_n", c.grid_n);
    c.box = s.get<double>("box", c.box);
    c.scale_lo = s.get<int>("scale_lo", c.scale_lo);
    c.scale_hi = s.get<int>("scale_hi", c.scale_hi);
    c.fixed_other = s.get<int>("fixed_other", c.fixed_other);
    c.tau = s.get<double>("tau", c.tau);
    c.seeds = s.get<int>("seeds", c.seeds);
    c.slope_target = s.get<double>("slope_target", c.slope_target);
    c.slope_tol = s.get<double>("slope_tol", c.slope_tol);
    s.finish();
  }
  if (const nlohmann::json* b = o.raw("lemma23")) {
    StrictObject s(*b, "verify.lemma23");
    auto& c = v.lemma23;
    c.grid_n = s.get<int>("grid_n", c.grid_n);
    c.box = s.get<double>("box", c.box);
    c.scale_lo = s.get<int>("scale_lo", c.scale_lo);
    c.scale_hi = s.get<int>("scale_hi", c.scale_hi);
    c.sigmas = s.get<std::vector<double>>("sigmas", c.sigmas);
    c.ps = s.get<std::vector<double>>("ps", c.ps);
    c.seeds = s.get<int>("seeds", c.seeds);
    c.max_spread = s.get<double>("max_spread", c.max_spread);
    s.finish();
  }
  if (const nlohmann::json* b = o.raw("eq_c13")) {
    StrictObject s(*b, "verify.eq_c13");
    auto& c = v.eq_c13;
    c.grid_n = s.get<int>("grid_n", c.grid_n);
    c.box = s.get<double>("box", c.box);
    c.p = s.get<double>("p", c.p);
    c.tau_min = s.get<double>("tau_min", c.tau_min);
    c.tau_max = s.get<double>("tau_max", c.tau_max);
    c.tau_count = s.get<int>("tau_count", c.tau_count);
    c.seeds = s.get<int>("seeds", c.seeds);
    c.cutoff_fraction = s.get<double>("cutoff_fraction", c.cutoff_fraction);
    c.max_spread = s.get<double>("max_spread", c.max_spread);
    s.finish();
  }
  if (const nlohmann::json* b = o.raw("contraction")) {
    StrictObject s(*b, "verify.contraction");
    auto& c = v.contraction;
    c.grid_n = s.get<int>("grid_n", c.grid_n);
    c.box = s.get<double>("box", c.box);
    c.p = s.get<double>("p", c.p);
    c.nodes = s.get<int>("nodes", c.nodes);
    c.tol = s.get<double>("tol", c.tol);
    c.max_ratio = s.get<double>("max_ratio", c.max_ratio);
    c.random_n = s.get<int>("random_n", c.random_n);
    c.random_nodes = s.get<int>("random_nodes", c.random_nodes);
    c.seeds = s.get<int>("seeds", c.seeds);
    s.finish();
  }
  if (const nlohmann::json* b = o.raw("stability")) {
    StrictObject s(*b, "verify.stability");
    auto& c = v.stability;
    c.grid_n = s.get<int>("grid_n", c.grid_n);
    c.box = s.get<double>("box", c.box);
    c.p = s.get<double>("p", c.p);
    c.nodes = s.get<int>("nodes", c.nodes);
    c.tol = s.get<double>("tol", c.tol);
    c.pairs = s.get<int>("pairs", c.pairs);
    c.perturbation = s.get<double>("perturbation", c.perturbation);
    c.max_quotient = s.get<double>("max_quotient", c.max_quotient);
    s.finish();
  }
  if (const nlohmann::json* b = o.raw("lemma41")) {
    StrictObject s(*b, "verify.lemma41");
    auto& c = v.lemma41;
    c.grid_n = s.get<int>("grid_n", c.grid_n);
    c.box = s.get<double>("box", c.box);
    c.p = s.get<double>("p", c.p);
    c.nodes = s.get<int>("nodes", c.nodes);
    c.seeds = s.get<int>("seeds", c.seeds);
    c.max_spread = s.get<double>("max_spread", c.max_spread);
    s.finish();
  }
  if (const nlohmann::json* b = o.raw("strichartz")) {
    StrictObject s(*b, "verify.strichartz");
    auto& c = v.strichartz;
    c.grid_n = s.get<int>("grid_n", c.grid_n);
    c.box = s.get<double>("box", c.box);
    c.horizon = s.get<double>("horizon", c.horizon);
    c.time_intervals = s.get<int>("time_intervals", c.time_intervals);
    c.seeds = s.get<int>("seeds", c.seeds);
    c.cutoff_fraction = s.get<double>("cutoff_fraction", c.cutoff_fraction);
    c.stability_tol = s.get<double>("stability_tol", c.stability_tol);
    s.finish();
  }
  if (const nlohmann::json* b = o.raw("a80")) {
    StrictObject s(*b, "verify.a80");
    auto& c = v.a80;
    c.grid_n = s.get<int>("grid_n", c.grid_n);
    c.coarse_n = s.get<int>("coarse_n", c.coarse_n);
    c.box = s.get<double>("box", c.box);
    c.ps = s.get<std::vector<double>>("ps", c.ps);
    c.nodes = s.get<int>("nodes", c.nodes);
    c.tol = s.get<double>("tol", c.tol);
    c.c1_drift_tol = s.get<double>("c1_drift_tol", c.c1_drift_tol);
    c.c0_drift_tol = s.get<double>("c0_drift_tol", c.c0_drift_tol);
    s.finish();
  }
  if (const nlohmann::json* b = o.raw("vector_fields")) {
    StrictObject s(*b, "verify.vector_fields");
    auto& c = v.vector_fields;
    c.grid_n = s.get<int>("grid_n", c.grid_n);
    c.box = s.get<double>("box", c.box);
    c.ts = s.get<std::vector<double>>("ts", c.ts);
    c.residual_tol = s.get<double>("residual_tol", c.residual_tol);
    c.constancy_tol = s.get<double>("constancy_tol", c.constancy_tol);
    c.decay_grid_n = s.get<int>("decay_grid_n", c.decay_grid_n);
    c.decay_box = s.get<double>("decay_box", c.decay_box);
    c.decay_ts = s.get<std::vector<double>>("decay_ts", c.decay_ts);
    c.decay_slope_tol = s.get<double>("decay_slope_tol", c.decay_slope_tol);
    c.ratio_ts = s.get<std::vector<double>>("ratio_ts", c.ratio_ts);
    c.ratio_max_spread = s.get<double>("ratio_max_spread", c.ratio_max_spread);
    c.escape_invalid = s.get<double>("escape_invalid", c.escape_invalid);
    s.finish();
  }
  if (const nlohmann::json* b = o.raw("scaling")) {
    StrictObject s(*b, "verify.scaling");
    auto& c = v.scaling;
    c.grid_n = s.get<int>("grid_n", c.grid_n);
    c.box = s.get<double>("box", c.box);
    c.lambda = s.get<double>("lambda", c.lambda);
    c.p = s.get<double>("p", c.p);
    c.nodes = s.get<int>("nodes", c.nodes);
    c.tol = s.get<double>("tol", c.tol);
    c.l1_tol = s.get<double>("l1_tol", c.l1_tol);
    c.norm_tol = s.get<double>("norm_tol", c.norm_tol);
    c.covariance_tol = s.get<double>("covariance_tol", c.covariance_tol);
    s.finish();
  }
  o.finish();
}

}  // namespace

nlohmann::json default_experiment_json() {
  return nlohmann::json{
      {"run", {{"out_root", "runs"}, {"label", ""}, {"seed", 20240901}}},
      {"grid", {{"dim", 1}, {"points_per_dim", 1024}, {"box_length", 40.0}}},
      {"data", {{"family", "gaussian"}, {"width", 1.0}, {"amplitude", 1.0}}},
      {"solver",
       {{"sign", 1},
        {"mode", "besov"},
        {"p", 1.5},
        {"tol", 1e-10},
        {"max_iter", 64},
        {"nodes_per_unit", 128},
        {"horizon", "auto"}}},
      {"verify", nlohmann::json::object()},
      {"sweep", nlohmann::json::object()},
      {"jobs", 1},
  };
}

ExperimentConfig parse_experiment_config(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("configuration root must be an object");
  ExperimentConfig cfg;
  StrictObject o(j, "config");

  if (const nlohmann::json* b = o.raw("run")) {
    StrictObject s(*b, "run");
    cfg.out_root = s.get<std::string>("out_root", cfg.out_root);
    cfg.label = s.get<std::string>("label", cfg.label);
    cfg.seed = s.get<std::uint64_t>("seed", cfg.seed);
    s.finish();
  }
  if (const nlohmann::json* b = o.raw("grid")) {
    StrictObject s(*b, "grid");
    cfg.dim = s.get<int>("dim", cfg.dim);
    cfg.points_per_dim = s.get<int>("points_per_dim", cfg.points_per_dim);
    cfg.box_length = s.get<double>("box_length", cfg.box_length);
    s.finish();
  }
  if (const nlohmann::json* b = o.raw("data")) cfg.data = parse_family(*b, cfg.dim);
  if (const nlohmann::json* b = o.raw("solver")) cfg.solver = parse_solver(*b);
  if (const nlohmann::json* b = o.raw("verify")) parse_verify_block(*b, cfg.verify, cfg.only);
  if (const nlohmann::json* b = o.raw("sweep")) {
    StrictObject s(*b, "sweep");
    cfg.sweep.command = s.get<std::string>("command", cfg.sweep.command);
    if (cfg.sweep.command != "solve" && cfg.sweep.command != "verify")
      throw ConfigError("sweep.command must be 'solve' or 'verify'");
    if (const nlohmann::json* axes = s.raw("axes")) {
      if (!axes->is_object()) throw ConfigError("sweep.axes must be an object");
      for (auto it = axes->begin(); it != axes->end(); ++it) {
        if (!it.value().is_array() || it.value().empty())
          throw ConfigError("sweep axis '" + it.key() + "' must be a non-empty array");
        std::vector<nlohmann::json> vals(it.value().begin(), it.value().end());
        cfg.sweep.axes.emplace(it.key(), std::move(vals));
      }
    }
    s.finish();
  }
  cfg.jobs = o.get<int>("jobs", cfg.jobs);
  if (cfg.jobs < 1) throw ConfigError("jobs must be >= 1");
  o.finish();

  // Surface validation errors as configuration errors before any compute.
  try {
    make_grid(cfg.dim, cfg.points_per_dim, cfg.box_length);
    cfg.solver.validate(cfg.dim);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }

  cfg.effective = j;
  return cfg;
}

void apply_override(nlohmann::json& j, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos)
    throw ConfigError("override must look like path.to.key=value: '" + assignment + "'");
  const std::string path = assignment.substr(0, eq);
  const std::string value = assignment.substr(eq + 1);

  nlohmann::json* node = &j;
  std::size_t start = 0;
  while (true) {
    const auto dot = path.find('.', start);
    const std::string key =
        dot == std::string::npos ? path.substr(start) : path.substr(start, dot - start);
    if (key.empty()) throw ConfigError("empty key component in override '" + assignment + "'");
    if (!node->is_object()) *node = nlohmann::json::object();
    if (dot == std::string::npos) {
      nlohmann::json parsed = nlohmann::json::parse(value, nullptr, false);
      (*node)[key] = parsed.is_discarded() ? nlohmann::json(value) : parsed;
      return;
    }
    node = &(*node)[key];
    start = dot + 1;
  }
}

std::string config_hash(const nlohmann::json& j) {
  const std::string s = j.dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace nlslab
