#include <CLI11.hpp>
#include <fstream>
#include <map>
#include <sstream>

#include "lielab_cli/commands.hpp"

namespace lielab::cli {

namespace {

struct Flags {
  std::string config_path;
  std::string type;
  int weight_bound = 0;
  int grid = 0;
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::string output;
  std::vector<std::string> sets;
};

// Flag values win over the config file.
bool apply_overrides(nlohmann::json& j, const Flags& f, CLI::App& app, std::ostream& err) {
  if (!f.type.empty()) j["type"] = f.type;
  if (app.count("--weight-bound") > 0) j["weight_bound"] = f.weight_bound;
  if (app.count("--grid") > 0) j["grid"] = f.grid;
  if (app.count("--seed") > 0) j["seed"] = f.seed;
  if (!f.output.empty()) j["output_dir"] = f.output;
  for (const std::string& s : f.sets) {
    const auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0) {
      err << "--set expects KEY=VALUE, got '" << s << "'\n";
      return false;
    }
    const std::string key = s.substr(0, eq), value = s.substr(eq + 1);
    nlohmann::json v = nlohmann::json::parse(value, nullptr, false);
    j[key] = v.is_discarded() ? nlohmann::json(value) : v;
  }
  return true;
}

}  // namespace

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical experiments on characters, adjoint orbits and conjugacy classes of compact simple Lie groups",
               "lielab"};
  app.require_subcommand(1);
  app.fallthrough();
  Flags f;
  app.add_option("-c,--config", f.config_path, "JSON config file");
  app.add_option("--type", f.type, "Group type (A1, A2, B2, C2, G2, An, Bn, Cn, Dn)");
  app.add_option("--weight-bound", f.weight_bound, "Largest level (sum of Dynkin labels) scanned");
  app.add_option("--grid", f.grid, "Grid points per root-value coordinate");
  app.add_option("--seed", f.seed, "Random seed");
  app.add_option("-o,--output", f.output, "Output directory");
  app.add_option("--set", f.sets, "Override any config field, KEY=JSON")->take_all();
  const std::map<std::string, std::string> blurbs{
      {"scan-characters", "Tabulate normalized characters on a torus grid and check Haar orthogonality"},
      {"estimate-c", "Estimate the disk constant c over irreps and grids"},
      {"orbit", "Vanishing orbit sums, hull certificates and lattice-walk bounds"},
      {"class-power", "Search for the smallest n with the identity in the n-fold class product"},
      {"bch", "Fit the scaling exponent of the product-log remainder"},
      {"arc-lemma", "Pigeonhole, Frobenius, telescoping and delta-bound checks on arcs"},
      {"verify-all", "Run every experiment on its standard types and summarize"}};
  for (const std::string& name : subcommand_names()) app.add_subcommand(name, blurbs.at(name));

  std::vector<std::string> args;
  for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, x;
    const int code = app.exit(e, o, x);
    out << o.str();
    err << x.str();
    return code == 0 ? kExitOk : kExitUsage;
  }

  nlohmann::json config = nlohmann::json::object();
  if (!f.config_path.empty()) {
    std::ifstream is(f.config_path);
    if (!is) {
      err << "config: cannot open " << f.config_path << '\n';
      return kExitUsage;
    }
    std::stringstream buf;
    buf << is.rdbuf();
    try {
      config = nlohmann::json::parse(buf.str());
    } catch (const nlohmann::json::parse_error& e) {
      err << "config: malformed JSON in " << f.config_path << ": " << e.what() << '\n';
      return kExitUsage;
    }
  }
  if (!config.is_object()) {
    err << "config: expected a JSON object at the top level\n";
    return kExitUsage;
  }
  if (!apply_overrides(config, f, app, err)) return kExitUsage;
  return run(app.get_subcommands().front()->get_name(), config, out, err);
}

}  // namespace lielab::cli
