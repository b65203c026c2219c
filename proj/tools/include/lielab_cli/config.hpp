#pragma once

#include <cstdint>
#include <nlohmann/json.hpp>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lielab/disk.hpp"

namespace lielab::cli {

/// A config that failed validation; `diagnostics` holds one "field: problem" line each.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> diagnostics);
  const std::vector<std::string>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<std::string> diagnostics_;
};

struct Tolerances {
  double word = 1e-8;      // word solver residual
  double orbit = 1e-10;    // orbit-sum residual
  double haar = 0.0;       // 0: 1e-6 for rank 1, 1e-4 for rank 2
  double unit_disk = 1e-9; // slack on |chi| <= 1
};

/// Every knob of a run. Unset optionals get type-dependent defaults.
struct ExperimentConfig {
  std::string type = "A1";
  std::optional<int> weight_bound;
  std::vector<int> weight_bounds;  // estimate-c series; empty means {weight_bound}
  std::optional<int> grid;
  std::vector<int> grids;          // estimate-c series; empty means {grid}
  int haar_grid = 0;               // 0: 2048 for rank 1, 256 for rank 2
  std::vector<double> t_values{0.3, 0.9, 1.5, 2.1};
  int axis_seeds = 2;
  std::vector<ArcSpec> arcs{{0.25, 0.75}, {0.45, 0.55}, {0.3, 0.7}};
  int random_arcs = 4;
  std::int64_t class_power_bound = 2;
  std::uint64_t seed = 1;
  std::string output_dir = "lielab_out";
  int n_max = 8;
  int starts = 16;
  int samples = 2000;
  int lattice_steps = 10000;
  int lattice_instances = 100;
  Tolerances tolerances;

  int resolved_weight_bound(int rank) const;
  int resolved_grid(int rank) const;
  int resolved_haar_grid(int rank) const;
  double resolved_haar_tol(int rank) const;
};

/// Validates and converts; throws ConfigError listing every bad field.
ExperimentConfig parse_config(const nlohmann::json& j);

/// Echo of the config for artifacts. Excludes output_dir so artifacts do not
/// depend on where they are written.
nlohmann::json config_to_json(const ExperimentConfig& cfg);

}  // namespace lielab::cli
