#include "lielab_cli/config.hpp"

#include <set>

#include "lielab/errors.hpp"
#include "lielab/root_system.hpp"

namespace lielab::cli {

namespace {

std::string join_lines(const std::vector<std::string>& lines) {
  std::string out = "invalid config";
  for (const auto& l : lines) out += "\n  " + l;
  return out;
}

// Reads typed fields and collects diagnostics instead of stopping at the first.
class Reader {
 public:
  Reader(const nlohmann::json& j, std::vector<std::string>& errors, std::string prefix = "")
      : j_(j), errors_(errors), prefix_(std::move(prefix)) {}

  bool has(const char* key) const { return j_.contains(key); }

  template <class T>
  void read(const char* key, T& out) {
    if (!j_.contains(key)) return;
    try {
      out = j_.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
      fail(key, "expected " + expected<T>() + ", got " + j_.at(key).dump());
    }
  }

  void positive(const char* key, int& out) {
    if (!j_.contains(key)) return;
    read(key, out);
    if (out <= 0) fail(key, "must be positive");
  }

  void fail(const std::string& key, const std::string& what) { errors_.push_back(prefix_ + key + ": " + what); }

 private:
  template <class T>
  static std::string expected() {
    if constexpr (std::is_same_v<T, std::string>) return "a string";
    else if constexpr (std::is_same_v<T, double>) return "a number";
    else if constexpr (std::is_integral_v<T>) return "an integer";
    else return "a list";
  }

  const nlohmann::json& j_;
  std::vector<std::string>& errors_;
  std::string prefix_;
};

const std::set<std::string> kKnownKeys{"type",        "weight_bound", "weight_bounds", "grid",    "grids",
                                       "haar_grid",   "t_values",     "axis_seeds",    "arcs",    "random_arcs",
                                       "class_power_bound", "seed",   "output_dir",    "n_max",   "starts",
                                       "samples",     "lattice_steps", "lattice_instances", "tolerances"};

}  // namespace

ConfigError::ConfigError(std::vector<std::string> diagnostics)
    : std::runtime_error(join_lines(diagnostics)), diagnostics_(std::move(diagnostics)) {}

int ExperimentConfig::resolved_weight_bound(int rank) const {
  if (weight_bound) return *weight_bound;
  return rank == 1 ? 20 : rank == 2 ? 10 : 4;
}

int ExperimentConfig::resolved_grid(int rank) const {
  if (grid) return *grid;
  return rank == 1 ? 1000 : rank == 2 ? 120 : 12;
}

int ExperimentConfig::resolved_haar_grid(int rank) const {
  if (haar_grid > 0) return haar_grid;
  return rank == 1 ? 2048 : 256;
}

double ExperimentConfig::resolved_haar_tol(int rank) const {
  if (tolerances.haar > 0.0) return tolerances.haar;
  return rank == 1 ? 1e-6 : 1e-4;
}

ExperimentConfig parse_config(const nlohmann::json& j) {
  std::vector<std::string> errors;
  ExperimentConfig cfg;
  if (!j.is_object()) throw ConfigError({"<root>: expected a JSON object"});
  for (const auto& [key, value] : j.items()) {
    if (!kKnownKeys.count(key)) errors.push_back(key + ": unknown field");
  }
  Reader r(j, errors);
  r.read("type", cfg.type);
  if (j.contains("type") && j.at("type").is_string()) {
    try {
      (void)RootSystem::build(cfg.type);
    } catch (const UnsupportedTypeError& e) {
      r.fail("type", e.what());
    }
  }
  if (j.contains("weight_bound")) {
    int v = 0;
    r.positive("weight_bound", v);
    cfg.weight_bound = v;
  }
  if (j.contains("grid")) {
    int v = 0;
    r.positive("grid", v);
    cfg.grid = v;
  }
  r.read("weight_bounds", cfg.weight_bounds);
  for (int v : cfg.weight_bounds)
    if (v <= 0) r.fail("weight_bounds", "entries must be positive");
  r.read("grids", cfg.grids);
  for (int v : cfg.grids)
    if (v <= 0) r.fail("grids", "entries must be positive");
  if (j.contains("haar_grid")) r.positive("haar_grid", cfg.haar_grid);
  r.read("t_values", cfg.t_values);
  if (cfg.t_values.empty()) r.fail("t_values", "must not be empty");
  for (double t : cfg.t_values)
    if (!(t > 0.0)) r.fail("t_values", "entries must be positive");
  r.positive("axis_seeds", cfg.axis_seeds);
  if (j.contains("arcs")) {
    std::vector<std::vector<double>> arcs;
    r.read("arcs", arcs);
    cfg.arcs.clear();
    for (const auto& a : arcs) {
      if (a.size() != 2 || !(a[0] > 0.0) || !(a[1] < 1.0) || !(a[0] <= a[1])) {
        r.fail("arcs", "each arc must be [lo, hi] with 0 < lo <= hi < 1");
        continue;
      }
      cfg.arcs.push_back({a[0], a[1]});
    }
  }
  if (j.contains("random_arcs")) {
    r.read("random_arcs", cfg.random_arcs);
    if (cfg.random_arcs < 0) r.fail("random_arcs", "must be nonnegative");
  }
  if (j.contains("class_power_bound")) {
    r.read("class_power_bound", cfg.class_power_bound);
    if (cfg.class_power_bound <= 0) r.fail("class_power_bound", "must be positive");
  }
  if (j.contains("seed")) {
    const auto& v = j.at("seed");
    if (!v.is_number_integer() || (!v.is_number_unsigned() && v.get<std::int64_t>() < 0)) r.fail("seed", "expected a nonnegative integer, got " + v.dump());
    else cfg.seed = v.is_number_unsigned() ? v.get<std::uint64_t>() : static_cast<std::uint64_t>(v.get<std::int64_t>());
  }
  r.read("output_dir", cfg.output_dir);
  if (cfg.output_dir.empty()) r.fail("output_dir", "must not be empty");
  r.positive("n_max", cfg.n_max);
  r.positive("starts", cfg.starts);
  r.positive("samples", cfg.samples);
  r.positive("lattice_steps", cfg.lattice_steps);
  r.positive("lattice_instances", cfg.lattice_instances);
  if (j.contains("tolerances")) {
    const auto& t = j.at("tolerances");
    if (!t.is_object()) {
      r.fail("tolerances", "expected an object");
    } else {
      Reader tr(t, errors, "tolerances.");
      for (const auto& [key, value] : t.items()) {
        if (key != "word" && key != "orbit" && key != "haar" && key != "unit_disk") tr.fail(key, "unknown field");
      }
      tr.read("word", cfg.tolerances.word);
      tr.read("orbit", cfg.tolerances.orbit);
      tr.read("haar", cfg.tolerances.haar);
      tr.read("unit_disk", cfg.tolerances.unit_disk);
      if (!(cfg.tolerances.word > 0.0)) tr.fail("word", "must be positive");
      if (!(cfg.tolerances.orbit > 0.0)) tr.fail("orbit", "must be positive");
      if (cfg.tolerances.haar < 0.0) tr.fail("haar", "must be nonnegative");
      if (!(cfg.tolerances.unit_disk >= 0.0)) tr.fail("unit_disk", "must be nonnegative");
    }
  }
  if (!errors.empty()) throw ConfigError(std::move(errors));
  return cfg;
}

nlohmann::json config_to_json(const ExperimentConfig& cfg) {
  nlohmann::json arcs = nlohmann::json::array();
  for (const auto& a : cfg.arcs) arcs.push_back({a.lo, a.hi});
  nlohmann::json j{{"type", cfg.type},
                   {"weight_bounds", cfg.weight_bounds},
                   {"grids", cfg.grids},
                   {"haar_grid", cfg.haar_grid},
                   {"t_values", cfg.t_values},
                   {"axis_seeds", cfg.axis_seeds},
                   {"arcs", arcs},
                   {"random_arcs", cfg.random_arcs},
                   {"class_power_bound", cfg.class_power_bound},
                   {"seed", cfg.seed},
                   {"n_max", cfg.n_max},
                   {"starts", cfg.starts},
                   {"samples", cfg.samples},
                   {"lattice_steps", cfg.lattice_steps},
                   {"lattice_instances", cfg.lattice_instances},
                   {"tolerances",
                    {{"word", cfg.tolerances.word},
                     {"orbit", cfg.tolerances.orbit},
                     {"haar", cfg.tolerances.haar},
                     {"unit_disk", cfg.tolerances.unit_disk}}}};
  j["weight_bound"] = cfg.weight_bound ? nlohmann::json(*cfg.weight_bound) : nlohmann::json(nullptr);
  j["grid"] = cfg.grid ? nlohmann::json(*cfg.grid) : nlohmann::json(nullptr);
  return j;
}

}  // namespace lielab::cli
