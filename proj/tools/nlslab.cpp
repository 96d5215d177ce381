// Command-line driver: configuration-driven solves, estimate verification,
// parameter sweeps, and report rendering with reproducible outputs.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include "nlslab/config.hpp"
#include "nlslab/lab.hpp"
#include "nlslab/picard.hpp"
#include "nlslab/propagator.hpp"
#include "nlslab/serialize.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitConfigError = 2;
constexpr int kExitInvalidation = 3;

void deep_merge(json& base, const json& patch) {
  if (!patch.is_object() || !base.is_object()) {
    base = patch;
    return;
  }
  for (auto it = patch.begin(); it != patch.end(); ++it) {
    if (it.value().is_object() && base.contains(it.key()) && base[it.key()].is_object())
      deep_merge(base[it.key()], it.value());
    else
      base[it.key()] = it.value();
  }
}

json load_effective_config(const std::string& config_path,
                           const std::vector<std::string>& overrides) {
  json effective = nlslab::default_experiment_json();
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) throw nlslab::ConfigError("cannot open config file '" + config_path + "'");
    json file = json::parse(in, nullptr, false);
    if (file.is_discarded())
      throw nlslab::ConfigError("config file '" + config_path + "' is not valid JSON");
    deep_merge(effective, file);
  }
  for (const auto& ov : overrides) nlslab::apply_override(effective, ov);
  return effective;
}

std::string out_root_for(const nlslab::ExperimentConfig& cfg, const std::string& flag_out) {
  if (!flag_out.empty()) return flag_out;
  if (cfg.out_root != "runs") return cfg.out_root;
  if (const char* env = std::getenv("NLSLAB_OUT_ROOT")) return env;
  return cfg.out_root;
}

/// Fresh run directory <root>/<command>-<hash>/run-NNN; prior runs are
/// never touched.
fs::path make_run_dir(const std::string& root, const std::string& command, const json& effective) {
  json hashed = effective;
  hashed["__command"] = command;
  const std::string key = command + "-" + nlslab::config_hash(hashed);
  fs::path base = fs::path(root) / key;
  fs::create_directories(base);
  for (int i = 0;; ++i) {
    char leaf[16];
    std::snprintf(leaf, sizeof leaf, "run-%03d", i);
    fs::path dir = base / leaf;
    if (!fs::exists(dir)) {
      fs::create_directories(dir);
      return dir;
    }
  }
}

void write_text(const fs::path& p, const std::string& text) {
  std::ofstream os(p);
  os << text;
  if (!os) throw std::runtime_error("cannot write " + p.string());
}

void write_run_files(const fs::path& dir, const std::string& command, const json& effective) {
  write_text(dir / "effective_config.json", effective.dump(2) + "\n");
  const auto now = std::chrono::system_clock::now();
  const auto secs = std::chrono::duration_cast<std::chrono::seconds>(now.time_since_epoch());
  json meta = {{"command", command},
               {"unix_time", secs.count()},
               {"config_hash", nlslab::config_hash(effective)}};
  write_text(dir / "run_meta.json", meta.dump(2) + "\n");
}

json diagnostics_json(const nlslab::picard::SolveResult& res) {
  const auto& d = res.diagnostics;
  const char* status = d.status == nlslab::picard::SolveStatus::converged ? "converged"
                       : d.status == nlslab::picard::SolveStatus::non_contraction
                           ? "non_contraction"
                           : "max_iter_reached";
  return json{{"status", status},
              {"iterations", d.iterations},
              {"iterate_distances", d.iterate_distances},
              {"contraction_ratios", d.contraction_ratios},
              {"chosen_horizon", d.chosen_horizon},
              {"measured_constant", d.measured_constant},
              {"initial_norm", d.initial_norm},
              {"norm_history", d.norm_history},
              {"sup_norm", d.sup_norm},
              {"apriori_constant", d.apriori_constant},
              {"apriori_ok", d.apriori_ok},
              {"final_residual", d.final_residual},
              {"weighted_integral", d.weighted_integral},
              {"norm_reliable", d.norm_reliable},
              {"nodes", res.slab.quad.nodes()},
              {"message", d.message}};
}

int run_solve_into(const nlslab::ExperimentConfig& cfg, const fs::path& dir, json* summary) {
  nlslab::Grid grid = nlslab::make_grid(cfg.dim, cfg.points_per_dim, cfg.box_length);
  nlslab::Field u0 = nlslab::make_field(cfg.data, grid);
  auto res = nlslab::picard::solve(u0, cfg.solver);

  write_text(dir / "diagnostics.json", diagnostics_json(res).dump(2) + "\n");

  // Norm history CSV; the third column lists the sweep contraction ratios
  // on the leading rows.
  {
    std::ofstream os(dir / "norm_history.csv");
    os << "tau,norm,contraction_ratio\n";
    const auto& nodes = res.slab.quad.nodes();
    for (std::size_t m = 0; m < nodes.size(); ++m) {
      os << nlslab::format_double(nodes[m]) << ','
         << nlslab::format_double(res.diagnostics.norm_history[m]) << ',';
      if (m < res.diagnostics.contraction_ratios.size())
        os << nlslab::format_double(res.diagnostics.contraction_ratios[m]);
      os << '\n';
    }
  }

  fs::create_directories(dir / "slab");
  nlslab::write_field_binary(res.slab.initial, (dir / "slab" / "initial.field").string());
  for (int m = 0; m < res.slab.count(); ++m) {
    char leaf[32];
    std::snprintf(leaf, sizeof leaf, "node_%04d.field", m);
    nlslab::write_field_binary(res.slab.states[static_cast<std::size_t>(m)],
                               (dir / "slab" / leaf).string());
  }

  if (summary) {
    *summary = {{"status", diagnostics_json(res)["status"]},
                {"chosen_horizon", res.diagnostics.chosen_horizon},
                {"iterations", res.diagnostics.iterations},
                {"sup_norm", res.diagnostics.sup_norm},
                {"apriori_constant", res.diagnostics.apriori_constant},
                {"final_residual", res.diagnostics.final_residual}};
  }
  if (!res.diagnostics.norm_reliable ||
      res.diagnostics.status == nlslab::picard::SolveStatus::non_contraction)
    return kExitInvalidation;
  return res.diagnostics.status == nlslab::picard::SolveStatus::converged ? kExitOk
                                                                          : kExitInvalidation;
}

int run_verify_into(const nlslab::ExperimentConfig& cfg, const fs::path& dir, bool quiet,
                    json* summary) {
  auto reports = nlslab::run_checks(cfg.verify, cfg.only);
  bool any_fail = false, any_invalid = false;
  int n_pass = 0;
  for (const auto& r : reports) {
    const std::string name = nlslab::to_string(r.id);
    write_text(dir / ("report_" + name + ".json"), nlslab::report_to_json(r).dump(2) + "\n");
    std::ofstream os(dir / ("sweep_" + name + ".csv"));
    nlslab::write_report_csv(r, os);
    any_fail = any_fail || (!r.invalid && !r.pass);
    any_invalid = any_invalid || r.invalid;
    n_pass += r.pass ? 1 : 0;
  }
  {
    std::ostringstream ss;
    nlslab::print_summary(reports, ss);
    write_text(dir / "summary.txt", ss.str());
    if (!quiet) std::cout << ss.str();
  }
  if (summary)
    *summary = {{"reports", reports.size()}, {"passed", n_pass},
                {"invalid", any_invalid},    {"failed", any_fail}};
  if (any_invalid) return kExitInvalidation;
  return any_fail ? kExitVerifyFailed : kExitOk;
}

int run_sweep(const nlslab::ExperimentConfig& cfg, const json& effective, const fs::path& dir) {
  // Cartesian product in deterministic axis order (map is sorted).
  std::vector<std::string> axis_names;
  std::vector<std::size_t> axis_sizes;
  std::size_t total = 1;
  for (const auto& [name, values] : cfg.sweep.axes) {
    axis_names.push_back(name);
    axis_sizes.push_back(values.size());
    total *= values.size();
  }
  if (total == 0 || cfg.sweep.axes.empty())
    throw nlslab::ConfigError("sweep.axes must declare at least one axis");

  struct Point {
    json config;
    std::vector<json> coords;
  };
  std::vector<Point> points;
  for (std::size_t idx = 0; idx < total; ++idx) {
    Point pt;
    pt.config = effective;
    pt.config["sweep"] = json::object();
    std::size_t rem = idx;
    for (std::size_t a = 0; a < axis_names.size(); ++a) {
      const auto& values = cfg.sweep.axes.at(axis_names[a]);
      const std::size_t vi = rem % axis_sizes[a];
      rem /= axis_sizes[a];
      pt.coords.push_back(values[vi]);
      nlslab::apply_override(pt.config,
                             axis_names[a] + "=" + values[vi].dump());
    }
    points.push_back(std::move(pt));
  }

  std::vector<int> codes(points.size(), kExitOk);
  std::vector<json> summaries(points.size());
  const auto run_point = [&](std::size_t i) {
    char leaf[32];
    std::snprintf(leaf, sizeof leaf, "point-%04d", static_cast<int>(i));
    fs::path pdir = dir / leaf;
    fs::create_directories(pdir);
    write_text(pdir / "point_config.json", points[i].config.dump(2) + "\n");
    try {
      nlslab::ExperimentConfig pcfg = nlslab::parse_experiment_config(points[i].config);
      codes[i] = cfg.sweep.command == "solve"
                     ? run_solve_into(pcfg, pdir, &summaries[i])
                     : run_verify_into(pcfg, pdir, /*quiet=*/true, &summaries[i]);
    } catch (const std::exception& e) {
      codes[i] = kExitConfigError;
      summaries[i] = {{"error", e.what()}};
    }
  };

  const int jobs = std::max(1, cfg.jobs);
  for (std::size_t begin = 0; begin < points.size(); begin += static_cast<std::size_t>(jobs)) {
    std::vector<std::future<void>> batch;
    const std::size_t end = std::min(points.size(), begin + static_cast<std::size_t>(jobs));
    for (std::size_t i = begin; i < end; ++i)
      batch.push_back(std::async(std::launch::async, run_point, i));
    for (auto& f : batch) f.get();
  }

  // Merged summary in point order, independent of scheduling.
  std::ofstream os(dir / "sweep_summary.csv");
  os << "point";
  for (const auto& n : axis_names) os << ',' << n;
  os << ",exit_code,summary\n";
  for (std::size_t i = 0; i < points.size(); ++i) {
    os << i;
    for (const auto& c : points[i].coords) os << ',' << c.dump();
    os << ',' << codes[i] << ',' << '"' << summaries[i].dump() << '"' << '\n';
  }

  int worst = kExitOk;
  for (int c : codes) worst = std::max(worst, c);
  return worst;
}

int run_report(const std::string& run_dir, const std::string& plot_out) {
  fs::path dir(run_dir);
  if (!fs::is_directory(dir)) throw nlslab::ConfigError("--run must name a run directory");
  std::cout << "run: " << dir.string() << "\n";
  bool found = false;
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir)) files.push_back(e.path());
  std::sort(files.begin(), files.end());

  std::ofstream plot(plot_out);
  plot << "source,row\n";
  for (const auto& p : files) {
    if (p.extension() == ".json" && p.filename() != "run_meta.json") {
      std::ifstream in(p);
      json j = json::parse(in, nullptr, false);
      if (j.is_discarded()) continue;
      found = true;
      std::cout << "\n== " << p.filename().string() << "\n";
      if (j.contains("verdict"))
        std::cout << "  verdict: " << j["verdict"].get<std::string>() << "\n";
      if (j.contains("status")) std::cout << "  status: " << j["status"].get<std::string>() << "\n";
      for (const char* key : {"chosen_horizon", "sup_norm", "final_residual", "apriori_constant"})
        if (j.contains(key)) std::cout << "  " << key << ": " << j[key].dump() << "\n";
      if (j.contains("fitted_exponents"))
        for (auto it = j["fitted_exponents"].begin(); it != j["fitted_exponents"].end(); ++it)
          std::cout << "  " << it.key() << ": " << it.value().dump() << "\n";
    }
    if (p.extension() == ".csv") {
      std::ifstream in(p);
      std::string line;
      bool first = true;
      while (std::getline(in, line)) {
        if (first) {
          first = false;
          continue;
        }
        plot << p.filename().string() << ',' << line << '\n';
      }
    }
  }
  if (!found) std::cout << "(no payload JSON found)\n";
  std::cout << "\nplot-ready CSV written to " << plot_out << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"interaction-representation cubic NLS laboratory"};
  app.require_subcommand(1);

  std::string config_path;
  std::string flag_out;
  std::vector<std::string> overrides;
  app.add_option("--config", config_path, "JSON configuration file");
  app.add_option("--set", overrides, "override config keys, e.g. --set solver.p=1.25");
  app.add_option("--out", flag_out, "output root directory");

  auto* solve_cmd = app.add_subcommand("solve", "run one Picard solve");
  auto* verify_cmd = app.add_subcommand("verify", "run estimate checks");
  std::string only_csv;
  verify_cmd->add_option("--only", only_csv, "comma-separated estimate ids");
  auto* sweep_cmd = app.add_subcommand("sweep", "cartesian parameter sweep");
  int jobs_flag = 0;
  sweep_cmd->add_option("--jobs", jobs_flag, "parallel sweep points");
  auto* report_cmd = app.add_subcommand("report", "render a persisted run");
  std::string run_dir, plot_out = "report_plot.csv";
  report_cmd->add_option("--run", run_dir, "run directory to render")->required();
  report_cmd->add_option("--plot-out", plot_out, "plot-ready CSV output path");

  CLI11_PARSE(app, argc, argv);

  try {
    if (report_cmd->parsed()) return run_report(run_dir, plot_out);

    json effective = load_effective_config(config_path, overrides);
    if (!only_csv.empty()) {
      json ids = json::array();
      std::stringstream ss(only_csv);
      std::string tok;
      while (std::getline(ss, tok, ',')) ids.push_back(tok);
      effective["verify"]["only"] = ids;
    }
    if (jobs_flag > 0) effective["jobs"] = jobs_flag;

    nlslab::ExperimentConfig cfg = nlslab::parse_experiment_config(effective);
    const std::string root = out_root_for(cfg, flag_out);

    if (solve_cmd->parsed()) {
      fs::path dir = make_run_dir(root, "solve", effective);
      write_run_files(dir, "solve", effective);
      const int code = run_solve_into(cfg, dir, nullptr);
      std::cout << "solve outputs: " << dir.string() << "\n";
      return code;
    }
    if (verify_cmd->parsed()) {
      fs::path dir = make_run_dir(root, "verify", effective);
      write_run_files(dir, "verify", effective);
      const int code = run_verify_into(cfg, dir, /*quiet=*/false, nullptr);
      std::cout << "verify outputs: " << dir.string() << "\n";
      return code;
    }
    if (sweep_cmd->parsed()) {
      fs::path dir = make_run_dir(root, "sweep", effective);
      write_run_files(dir, "sweep", effective);
      const int code = run_sweep(cfg, effective, dir);
      std::cout << "sweep outputs: " << dir.string() << "\n";
      return code;
    }
  } catch (const nlslab::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalidation;
  }
  return kExitConfigError;
}
