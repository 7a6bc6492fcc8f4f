#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <string>

#include "adsim/sweep.hpp"

namespace {

bool write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  out << content;
  out.flush();
  if (!out) {
    std::cerr << "cannot write '" << path << "'\n";
    return false;
  }
  return true;
}

int cmd_sweep(const std::string& config_path, std::string out_path, int workers) {
  const adsim::ExperimentConfig cfg = adsim::load_config(config_path);
  if (out_path.empty()) out_path = cfg.out;
  if (out_path.empty()) {
    std::cerr << "sweep: no output path; pass --out or set 'out' in the config\n";
    return 2;
  }
  const std::vector<adsim::SweepRow> rows = adsim::run_sweep(cfg, workers);
  if (!write_file(out_path, adsim::to_csv(rows))) return 2;

  std::size_t bad = 0;
  for (const auto& r : rows)
    if (!r.ok()) ++bad;
  const bool held = adsim::all_bounds_hold(rows, cfg.slack);
  std::cout << rows.size() << " rows -> " << out_path;
  if (bad) std::cout << " (" << bad << " with error status)";
  std::cout << "\nbound inequality (slack " << cfg.slack << "): " << (held ? "held on every row" : "FAILED")
            << "\n";
  return held ? 0 : 1;
}

int cmd_demo(const std::string& preset, const std::string& out_path, int workers) {
  const adsim::DemoResult res = adsim::run_demo(preset, workers);
  if (!write_file(out_path, adsim::to_csv(res.rows))) return 2;
  std::cout << res.report << "csv -> " << out_path << "\n";
  return res.exit_status;
}

int cmd_validate(const std::string& config_path) {
  const adsim::ExperimentConfig cfg = adsim::load_config(config_path);
  const std::size_t instances =
      (cfg.potential == adsim::PotentialSpec::Delta ? cfg.x_min.size() : 1) *
      cfg.total_times.size();
  std::cout << "ok: dim=" << cfg.dim << ", hi_kind=" << adsim::to_string(cfg.hi_kind) << ", "
            << instances << " instance" << (instances == 1 ? "" : "s") << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"adiabatic ground-state search on a truncated number basis"};
  app.require_subcommand(1);

  std::string config_path, out_path, preset;
  int workers = 1;

  CLI::App* sweep = app.add_subcommand("sweep", "run every (x_min, T) instance of a config");
  sweep->add_option("--config", config_path, "experiment config file")->required();
  sweep->add_option("--out", out_path, "output CSV path (falls back to the config's 'out')");
  sweep->add_option("--workers", workers, "parallel row workers")->check(CLI::PositiveNumber);

  CLI::App* demo = app.add_subcommand("demo", "run a named preset and print the bound chain");
  demo->add_option("--preset", preset, "preset name (see 'adsim demo --preset help')")->required();
  demo->add_option("--out", out_path, "output CSV path (required unless --preset help)");
  demo->add_option("--workers", workers, "parallel row workers")->check(CLI::PositiveNumber);

  CLI::App* validate = app.add_subcommand("validate", "parse a config and report every problem");
  validate->add_option("--config", config_path, "experiment config file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (sweep->parsed()) return cmd_sweep(config_path, out_path, workers);
    if (demo->parsed()) {
      if (preset == "help") {
        for (const auto& name : adsim::demo_presets()) std::cout << name << "\n";
        return 0;
      }
      if (out_path.empty()) {
        std::cerr << "demo: --out is required\n";
        return 2;
      }
      return cmd_demo(preset, out_path, workers);
    }
    if (validate->parsed()) return cmd_validate(config_path);
  } catch (const adsim::ConfigError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
