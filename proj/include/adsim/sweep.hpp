#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "adsim/hamiltonian.hpp"

namespace adsim {

enum class PotentialSpec { Delta, Poly };

/// One experiment: a single initial Hamiltonian, one potential family, and
/// a grid of (x_min, T) instances. Parsed from a flat key = value document.
struct ExperimentConfig {
  Eigen::Index dim = 0;
  HiKind hi_kind = HiKind::Hopping;
  HiParams hi_params;
  std::uint64_t seed = 1;

  PotentialSpec potential = PotentialSpec::Delta;
  std::vector<Eigen::Index> x_min;  // delta wells to sweep
  Eigen::VectorXd coefficients;     // polynomial potential

  std::vector<double> total_times;
  double dt = 0.0;
  int sample_stride = 10;
  double slack = 1e-6;
  std::string out;  // optional default CSV path
};

/// Carries every invariant violation found, not just the first.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> issues);
  const std::vector<std::string>& issues() const { return issues_; }

 private:
  std::vector<std::string> issues_;
};

/// Parses and validates a flat key = value document ('#' starts a comment,
/// list values are comma-separated). Throws ConfigError listing every
/// problem by field name.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

/// One (x_min, T) result; mirrors the CSV schema exactly, in column order.
struct SweepRow {
  Eigen::Index x_min = 0;
  double total_time = 0.0;
  double success_probability = 0.0;
  double deviation = 0.0;
  double bound = 0.0;
  double hp_gi_norm = 0.0;
  double min_gap = 0.0;
  double norm_drift = 0.0;
  Eigen::Index classical_x_star = 0;
  double classical_value = 0.0;
  double tail_mass_final = 0.0;  // wall-contact mass: |amplitude at the top basis site|^2
  std::string status = "ok";     // "ok" or "error(<reason>)"

  bool ok() const { return status == "ok"; }
};

inline constexpr const char* kCsvHeader =
    "x_min,T,success_probability,deviation,bound,hp_gi_norm,min_gap,norm_drift,"
    "classical_x_star,classical_value,tail_mass_final,status";

/// Runs every (x_min, T) instance of the config; rows come back sorted by
/// (x_min, T). A row whose propagation fails its validity checks is kept
/// with an error status rather than dropped. Deterministic for a fixed
/// config regardless of worker count.
std::vector<SweepRow> run_sweep(const ExperimentConfig& cfg, int workers = 1);

/// Fixed decimal formatting (17 significant digits), so parse_csv
/// reproduces the row values exactly.
std::string to_csv(const std::vector<SweepRow>& rows);
std::vector<SweepRow> parse_csv(const std::string& text);

/// True when every row is ok and satisfies deviation <= bound + slack.
bool all_bounds_hold(const std::vector<SweepRow>& rows, double slack);

struct DemoResult {
  std::vector<SweepRow> rows;
  std::string report;   // human-readable per-row bound chain
  int exit_status = 0;  // 0 iff every bound inequality and validity flag held
};

std::vector<std::string> demo_presets();

/// Runs a named preset scenario. Throws std::invalid_argument (listing the
/// available presets) for unknown names.
DemoResult run_demo(const std::string& preset, int workers = 1);

}  // namespace adsim
