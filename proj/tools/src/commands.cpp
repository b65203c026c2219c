#include "lielab_cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>

#include "lielab/class_power.hpp"
#include "lielab/convex_orbit.hpp"
#include "lielab/disk.hpp"
#include "lielab/errors.hpp"
#include "lielab/format.hpp"

namespace lielab::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

class ArtifactWriter {
 public:
  ArtifactWriter(const std::string& dir, CommandResult& result) : dir_(dir), result_(result) {
    fs::create_directories(dir_);
  }

  void text(const std::string& name, const std::string& content) {
    std::ofstream os(dir_ / name, std::ios::binary);
    if (!os) throw Error("cannot write " + (dir_ / name).string());
    os << content;
    result_.artifacts.push_back(name);
  }

  void json_file(const std::string& name, const json& j) { text(name, j.dump(2) + "\n"); }

 private:
  fs::path dir_;
  CommandResult& result_;
};

json envelope(const std::string& command, const ExperimentConfig& cfg) {
  return {{"schema", kSchemaVersion}, {"command", command}, {"seed", cfg.seed}, {"config", config_to_json(cfg)}};
}

std::string weight_label(const Weight& w) { return '"' + w.str() + '"'; }

std::vector<CharacterSample> grid_samples(const RootSystem& rs, const IrrepTable& table, int grid) {
  const auto values = character_on_grid(rs, table, grid);
  std::vector<CharacterSample> out;
  out.reserve(values.size());
  const double inv = 1.0 / static_cast<double>(table.dim);
  for (std::size_t flat = 0; flat < values.size(); ++flat) {
    const auto idx = grid_index(rs.rank(), grid, flat);
    Eigen::VectorXd y(rs.rank());
    for (int j = 0; j < rs.rank(); ++j) y(j) = static_cast<double>(idx[static_cast<std::size_t>(j)]) / grid;
    out.push_back({table.highest, TorusPoint::from_root_values(rs, y), values[flat] * inv});
  }
  return out;
}

std::vector<Weight> nontrivial_weights(const RootSystem& rs, int bound) {
  std::vector<Weight> out;
  for (const Weight& w : enumerate_adjoint_dominant_weights(rs, bound))
    if (!w.is_zero()) out.push_back(w);
  return out;
}

// ---------------------------------------------------------------- scan-characters

CommandResult scan_characters(const ExperimentConfig& cfg, IrrepCache& cache) {
  CommandResult res;
  ArtifactWriter out(cfg.output_dir, res);
  const RootSystem rs = RootSystem::build(cfg.type);
  const int rank = rs.rank();
  const int bound = cfg.resolved_weight_bound(rank);
  const int grid = cfg.grid ? *cfg.grid : (rank == 1 ? 256 : rank == 2 ? 48 : 6);
  const bool do_haar = rank <= 2;
  const int haar_grid = cfg.resolved_haar_grid(rank);
  const double haar_tol = cfg.resolved_haar_tol(rank);

  std::ostringstream csv, haar_csv;
  haar_csv << "type,lambda,dim,abs_integral\n";
  json irreps = json::array();
  double max_abs = 0.0, haar_max = 0.0;
  int events = 0;
  bool header = true;
  for (const Weight& w : nontrivial_weights(rs, bound)) {
    const auto table = cache.get(rs, w);
    const auto samples = grid_samples(rs, *table, grid);
    std::ostringstream part;
    write_character_csv(part, rs.label(), samples);
    std::string text = part.str();
    if (!header) text.erase(0, text.find('\n') + 1);
    header = false;
    csv << text;
    double irrep_max = 0.0;
    for (const auto& s : samples) irrep_max = std::max(irrep_max, std::abs(s.z));
    if (irrep_max > 1.0 + cfg.tolerances.unit_disk) ++events;
    max_abs = std::max(max_abs, irrep_max);
    std::int64_t mult_sum = 0;
    for (const auto& [mu, m] : table->mults) mult_sum += m;
    if (mult_sum != weyl_dimension(rs, w)) ++events;
    json entry{{"lambda", w.coeffs}, {"dim", table->dim}, {"weights", table->mults.size()}, {"max_abs_z", irrep_max}};
    if (do_haar) {
      const double h = std::abs(haar_character_integral(rs, *table, haar_grid));
      haar_max = std::max(haar_max, h);
      if (h > haar_tol) ++events;
      entry["haar_abs"] = h;
      haar_csv << rs.label() << ',' << weight_label(w) << ',' << table->dim << ',' << format_double(h) << '\n';
    }
    irreps.push_back(entry);
  }
  if (header) csv << "type,lambda,re_z,im_z\n";
  out.text("characters.csv", csv.str());
  if (do_haar) out.text("haar.csv", haar_csv.str());

  json j = envelope("scan-characters", cfg);
  j["type"] = rs.label();
  j["weight_bound"] = bound;
  j["grid"] = grid;
  j["haar_grid"] = do_haar ? json(haar_grid) : json(nullptr);
  j["haar_tolerance"] = do_haar ? json(haar_tol) : json(nullptr);
  j["haar_max"] = do_haar ? json(haar_max) : json(nullptr);
  j["max_abs_z"] = max_abs;
  j["irreps"] = irreps;
  j["falsifications"] = events;
  out.json_file("scan_characters.json", j);
  res.summary = j;
  res.falsifications = events;
  std::ostringstream head;
  head << "scan-characters " << rs.label() << ": " << irreps.size() << " irreps, max |z| = " << format_double(max_abs);
  if (do_haar) head << ", max |haar| = " << format_double(haar_max);
  res.headline = head.str();
  return res;
}

// ---------------------------------------------------------------- estimate-c

CommandResult estimate_c(const ExperimentConfig& cfg, IrrepCache& cache) {
  CommandResult res;
  ArtifactWriter out(cfg.output_dir, res);
  const RootSystem rs = RootSystem::build(cfg.type);
  const int rank = rs.rank();
  std::vector<int> bounds = cfg.weight_bounds.empty() ? std::vector<int>{cfg.resolved_weight_bound(rank)} : cfg.weight_bounds;
  std::vector<int> grids = cfg.grids.empty() ? std::vector<int>{cfg.resolved_grid(rank)} : cfg.grids;
  const auto series = disk_constant_series(rs, cache, bounds, grids);

  int events = 0;
  for (const auto& e : series) {
    if (!e.empty && !(e.c_hat > -1.0 && e.c_hat < 0.0)) ++events;
  }
  // Monotonicity wherever one scan contains the other.
  int monotone_violations = 0;
  for (const auto& a : series) {
    for (const auto& b : series) {
      if (a.empty || b.empty) continue;
      if (b.weight_bound >= a.weight_bound && b.grid % a.grid == 0 && b.c_hat > a.c_hat) ++monotone_violations;
    }
  }
  events += monotone_violations;

  const DiskEstimate* best = nullptr;
  for (const auto& e : series) {
    if (!e.empty && (best == nullptr || e.c_hat < best->c_hat)) best = &e;
  }

  std::ostringstream csv;
  csv << "type,weight_bound,grid,c_hat,lambda,re_z,im_z\n";
  json jseries = json::array();
  for (const auto& e : series) {
    jseries.push_back(to_json(e));
    csv << rs.label() << ',' << e.weight_bound << ',' << e.grid << ',';
    if (e.empty) {
      csv << "nan,,,\n";
    } else {
      csv << format_double(e.c_hat) << ',' << weight_label(e.attaining.lambda) << ',' << format_double(e.attaining.z.real())
          << ',' << format_double(e.attaining.z.imag()) << '\n';
    }
  }
  out.text("disk_series.csv", csv.str());

  json j = envelope("estimate-c", cfg);
  j["type"] = rs.label();
  j["weight_bounds"] = bounds;
  j["grids"] = grids;
  j["series"] = jseries;
  j["monotone"] = monotone_violations == 0;
  if (best != nullptr) {
    j["c_hat"] = best->c_hat;
    j["attaining_sample"] = to_json(*best).at("attaining_sample");
    j["proof_convention_c"] = proof_c_from_statement_c(best->c_hat);
    const auto table = cache.get(rs, best->attaining.lambda);
    const auto samples = grid_samples(rs, *table, best->grid);
    std::ostringstream dcsv;
    write_disk_csv(dcsv, rs.label(), samples);
    out.text("disk_samples.csv", dcsv.str());
    std::vector<std::complex<double>> zs;
    const std::size_t stride = std::max<std::size_t>(1, samples.size() / 4000);
    for (std::size_t i = 0; i < samples.size(); i += stride) zs.push_back(samples[i].z);
    out.text("disk.svg", disk_svg(zs, best->c_hat));
  } else {
    j["c_hat"] = nullptr;
  }
  j["empty"] = best == nullptr;
  j["falsifications"] = events;
  out.json_file("estimate_c.json", j);
  res.summary = j;
  res.falsifications = events;
  res.headline = "estimate-c " + rs.label() + ": c_hat = " + (best ? format_double(best->c_hat) : std::string("n/a")) +
                 (best ? " at lambda " + best->attaining.lambda.str() : std::string());
  return res;
}

// ---------------------------------------------------------------- orbit

CommandResult orbit(const ExperimentConfig& cfg, IrrepCache&) {
  CommandResult res;
  ArtifactWriter out(cfg.output_dir, res);
  const RootSystem rs = RootSystem::build(cfg.type);
  const CompactAlgebra alg = CompactAlgebra::build(rs);
  const int d = alg.dim();
  int events = 0;

  std::ostringstream tuples;
  tuples << "type,axis,n,residual,rank,attempts,spanning_n,replication_n\n";
  json jtuples = json::array();
  VanishingOptions vopts;
  vopts.refine.tol = cfg.tolerances.orbit;
  for (int a = 0; a < cfg.axis_seeds; ++a) {
    Rng rng = make_rng(cfg.seed, 100 + static_cast<std::uint64_t>(a));
    const AlgebraVector x = alg.random_unit(rng);
    json entry{{"axis", a}};
    try {
      const VanishingTuple v = find_vanishing_submersive_tuple(alg, x, rng, vopts);
      entry["n"] = v.n;
      entry["residual"] = v.residual;
      entry["rank"] = v.rank;
      entry["attempts"] = v.attempts;
      if (v.rank != d || v.residual > cfg.tolerances.orbit) ++events;
      tuples << rs.label() << ',' << a << ',' << v.n << ',' << format_double(v.residual) << ',' << v.rank << ','
             << v.attempts;
    } catch (const ConvergenceError& e) {
      ++events;
      entry["n"] = nullptr;
      entry["error"] = e.what();
      tuples << rs.label() << ',' << a << ",,,,";
    }
    Rng srng = make_rng(cfg.seed, 150 + static_cast<std::uint64_t>(a));
    const SpanningConfiguration sc = sample_spanning_configuration(alg, x, srng);
    entry["spanning"] = {{"n", sc.elements.size()}, {"tries", sc.tries}, {"certificate", to_json(sc.certificate)}};
    tuples << ',' << sc.elements.size() << ',';
    try {
      const double delta = 0.25 / static_cast<double>(sc.certificate.coefficients.size());
      const ReplicationPlan plan = replication_plan(sc.certificate.coefficients, delta);
      entry["replication"] = to_json(plan);
      tuples << plan.n;
    } catch (const CapacityError&) {
      entry["replication"] = nullptr;
    }
    tuples << '\n';
    jtuples.push_back(entry);
  }
  out.text("orbit_tuples.csv", tuples.str());

  // Explicit 120 degree triple in so(3).
  json triple = nullptr;
  if (rs.label() == "A1") {
    const AlgebraVector x = AlgebraVector::Unit(3, 0), y = AlgebraVector::Unit(3, 1);
    std::vector<AdjointMatrix> gs;
    for (int k = 0; k < 3; ++k) gs.push_back(alg.group_exp((k * kTwoPi / 3.0) / std::sqrt(2.0) * y));
    const double norm = orbit_sum(x, gs).norm();
    const int rank = orbit_sum_rank(alg, x, gs);
    if (norm > cfg.tolerances.orbit || rank != 3) ++events;
    triple = {{"norm", norm}, {"rank", rank}};
  }

  // Lattice walks and partial sums.
  std::ostringstream lcsv;
  lcsv << "instance,n,max_distance,distance_bound,max_partial_norm,partial_bound\n";
  int walk_violations = 0, partial_violations = 0;
  for (int i = 0; i < cfg.lattice_instances; ++i) {
    Rng rng = make_rng(cfg.seed, 10000 + static_cast<std::uint64_t>(i));
    std::uniform_int_distribution<int> pick_n(1, 6), pick_d(1, 4);
    std::uniform_real_distribution<double> coord(0.01, 1.0);
    std::normal_distribution<double> gauss;
    const int n = pick_n(rng);
    std::vector<double> a(static_cast<std::size_t>(n));
    double total = 0.0;
    for (double& v : a) total += (v = coord(rng));
    const LatticeWalk walk = lattice_ray_walk(a, static_cast<std::size_t>(cfg.lattice_steps));
    if (walk.max_distance > walk.bound) ++walk_violations;
    for (double& v : a) v /= total;
    const int dim = pick_d(rng);
    std::vector<Eigen::VectorXd> vs;
    Eigen::VectorXd mean = Eigen::VectorXd::Zero(dim);
    for (int k = 0; k < n; ++k) {
      Eigen::VectorXd v(dim);
      for (int c = 0; c < dim; ++c) v(c) = gauss(rng);
      mean += a[static_cast<std::size_t>(k)] * v;
      vs.push_back(v);
    }
    for (auto& v : vs) v -= mean;
    const PartialSumSequence ps = bounded_partial_sum_sequence(vs, a, static_cast<std::size_t>(cfg.lattice_steps));
    if (ps.max_partial_norm > ps.bound) ++partial_violations;
    lcsv << i << ',' << n << ',' << format_double(walk.max_distance) << ',' << format_double(walk.bound) << ','
         << format_double(ps.max_partial_norm) << ',' << format_double(ps.bound) << '\n';
  }
  events += walk_violations + partial_violations;
  out.text("lattice.csv", lcsv.str());

  json j = envelope("orbit", cfg);
  j["type"] = rs.label();
  j["dim"] = d;
  j["tuples"] = jtuples;
  j["triple_120"] = triple;
  j["lattice"] = {{"instances", cfg.lattice_instances},
                  {"steps", cfg.lattice_steps},
                  {"walk_violations", walk_violations},
                  {"partial_sum_violations", partial_violations}};
  j["falsifications"] = events;
  out.json_file("orbit.json", j);
  res.summary = j;
  res.falsifications = events;
  std::ostringstream head;
  head << "orbit " << rs.label() << ": " << jtuples.size() << " vanishing tuples, " << cfg.lattice_instances
       << " lattice instances";
  res.headline = head.str();
  return res;
}

// ---------------------------------------------------------------- class-power

CommandResult class_power(const ExperimentConfig& cfg, IrrepCache&) {
  CommandResult res;
  ArtifactWriter out(cfg.output_dir, res);
  const RootSystem rs = RootSystem::build(cfg.type);
  const CompactAlgebra alg = CompactAlgebra::build(rs);
  const int d = alg.dim();
  IdentityCheckOptions opts;
  opts.solve.starts = cfg.starts;
  opts.solve.tol = cfg.tolerances.word;
  int events = 0;
  std::ostringstream csv;
  csv << "type,axis,t,rotation_angle,greedy_n,greedy_rank,stalled,n_bound,reachable,interior,min_residual,rank_at_best\n";
  json classes = json::array();
  int max_bound = 0;
  for (int a = 0; a < cfg.axis_seeds; ++a) {
    Rng axis_rng = make_rng(cfg.seed, 200 + static_cast<std::uint64_t>(a));
    const AlgebraVector axis = alg.random_unit(axis_rng);
    for (std::size_t ti = 0; ti < cfg.t_values.size(); ++ti) {
      const ConjugacyClass cls(alg, axis, cfg.t_values[ti]);
      const std::uint64_t stream = 1000 * static_cast<std::uint64_t>(a) + ti;
      Rng grng = make_rng(cfg.seed, 300'000 + stream);
      const GreedyTuple greedy = greedy_class_tuple(alg, cls, grng);
      if (greedy.stalled) ++events;
      const IdentityPowerSearch search = identity_power_search(alg, cls, cfg.n_max, derive_seed(cfg.seed, 400'000 + stream), opts);
      if (!search.found) ++events;
      max_bound = std::max(max_bound, search.n_bound);
      json entry{{"axis", a},
                 {"t", cls.t()},
                 {"rotation_angle", cls.rotation_angle()},
                 {"greedy", to_json(greedy)},
                 {"search", to_json(search)}};
      if (rs.label() == "A1") {
        // In SO(3) every class is its own inverse, so the identity is interior to C^2.
        const IdentityCheckReport two = class_power_identity_check(alg, cls, 2, derive_seed(cfg.seed, 500'000 + stream), opts);
        if (!(two.reachable && two.interior)) ++events;
        entry["n2"] = to_json(two);
      }
      const IdentityCheckReport& last = search.reports.back();
      csv << rs.label() << ',' << a << ',' << format_double(cls.t()) << ',' << format_double(cls.rotation_angle()) << ','
          << greedy.elements.size() << ',' << (greedy.rank_history.empty() ? 0 : greedy.rank_history.back()) << ','
          << (greedy.stalled ? 1 : 0) << ',' << search.n_bound << ',' << (last.reachable ? 1 : 0) << ','
          << (last.interior ? 1 : 0) << ',' << format_double(last.min_residual) << ',' << last.rank_at_best << '\n';
      classes.push_back(entry);
    }
  }
  out.text("class_power.csv", csv.str());
  json j = envelope("class-power", cfg);
  j["type"] = rs.label();
  j["dim"] = d;
  j["n_max"] = cfg.n_max;
  j["reported_bound"] = max_bound;
  j["classes"] = classes;
  j["falsifications"] = events;
  out.json_file("class_power.json", j);
  res.summary = j;
  res.falsifications = events;
  res.headline = "class-power " + rs.label() + ": " + std::to_string(classes.size()) +
                 " classes, identity interior by n = " + std::to_string(max_bound);
  return res;
}

// ---------------------------------------------------------------- bch

CommandResult bch(const ExperimentConfig& cfg, IrrepCache&) {
  CommandResult res;
  ArtifactWriter out(cfg.output_dir, res);
  const RootSystem rs = RootSystem::build(cfg.type);
  const CompactAlgebra alg = CompactAlgebra::build(rs);
  const std::vector<double> t_grid{1e-3, 2e-3, 4e-3, 8e-3, 1.6e-2, 3.2e-2};
  int events = 0;
  std::ostringstream csv;
  csv << "type,tuple,k,t,norm\n";
  json fits = json::array();
  int tuple_id = 0;
  auto record = [&](const ScalingFit& fit, int k, const char* kind) {
    for (std::size_t i = 0; i < fit.t_grid.size(); ++i)
      csv << rs.label() << ',' << tuple_id << ',' << k << ',' << format_double(fit.t_grid[i]) << ','
          << format_double(fit.norms[i]) << '\n';
    json jf = to_json(fit);
    jf["tuple"] = tuple_id++;
    jf["k"] = k;
    jf["kind"] = kind;
    fits.push_back(jf);
  };
  for (int a = 0; a < cfg.axis_seeds; ++a) {
    for (int k : {2, 3}) {
      Rng rng = make_rng(cfg.seed, 700 + 10 * static_cast<std::uint64_t>(a) + static_cast<std::uint64_t>(k));
      std::vector<AlgebraVector> xs;
      for (int i = 0; i < k; ++i) xs.push_back(alg.random_unit(rng));
      const ScalingFit fit = bch_scaling_fit(alg, xs, t_grid);
      if (fit.exact_zero || fit.exponent < 1.95 || fit.exponent > 2.05) ++events;
      record(fit, k, "generic");
    }
  }
  {
    Rng rng = make_rng(cfg.seed, 790);
    const AlgebraVector x = alg.random_unit(rng);
    const std::vector<AlgebraVector> xs{x, 0.5 * x, -2.0 * x};
    const ScalingFit fit = bch_scaling_fit(alg, xs, t_grid);
    if (!fit.exact_zero) ++events;
    record(fit, 3, "commuting");
  }
  Rng mrng = make_rng(cfg.seed, 800);
  const ProductRadius mu = product_radius_mu(alg, 4, 0.05, cfg.samples, mrng);
  if (mu.mu_hat > mu.mu_bound * (1.0 + 1e-12)) ++events;  // k = 1 is a tie
  out.text("bch.csv", csv.str());
  json j = envelope("bch", cfg);
  j["type"] = rs.label();
  j["fits"] = fits;
  j["product_radius"] = to_json(mu);
  j["falsifications"] = events;
  out.json_file("bch.json", j);
  res.summary = j;
  res.falsifications = events;
  std::ostringstream head;
  head << "bch " << rs.label() << ": " << fits.size() << " fits, mu_hat = " << format_double(mu.mu_hat)
       << " <= " << format_double(mu.mu_bound);
  res.headline = head.str();
  return res;
}

// ---------------------------------------------------------------- arc-lemma

CommandResult arc_lemma(const ExperimentConfig& cfg, IrrepCache& cache) {
  CommandResult res;
  ArtifactWriter out(cfg.output_dir, res);
  const RootSystem rs = RootSystem::build(cfg.type);
  std::vector<ArcSpec> arcs = cfg.arcs;
  for (int i = 0; i < cfg.random_arcs; ++i) {
    Rng rng = make_rng(cfg.seed, 600 + static_cast<std::uint64_t>(i));
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double lo = 0.02 + 0.43 * u(rng);
    const double hi = lo + (0.98 - lo) * u(rng);
    arcs.push_back({lo, hi});
  }
  std::vector<ArcConstants> consts;
  for (const auto& a : arcs) consts.push_back(arc_constants(a, cfg.class_power_bound));

  // Pigeonhole construction.
  std::ostringstream csv;
  csv << "lo,hi,m,q,delta,p,epsilon,sharp_k,max_k,max_brute_force_k,fallbacks,pigeonhole_violations,in_arc,min_delta,"
         "delta_violations\n";
  std::vector<int> pig_viol(arcs.size(), 0), fallbacks(arcs.size(), 0);
  std::vector<std::int64_t> max_k(arcs.size(), 0), max_bf(arcs.size(), 0);
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    Rng rng = make_rng(cfg.seed, 650 + i);
    std::uniform_real_distribution<double> u(arcs[i].lo, arcs[i].hi);
    for (int s = 0; s < cfg.samples; ++s) {
      const double x = u(rng);
      const PigeonholeResult r = pigeonhole_k(x, consts[i]);
      const double re = std::cos(kTwoPi * std::fmod(static_cast<double>(r.k) * x, 1.0));
      if (re > 1e-12 || r.k > 2 * consts[i].p * consts[i].q || r.k < 2) ++pig_viol[i];
      fallbacks[i] += r.used_fallback ? 1 : 0;
      max_k[i] = std::max(max_k[i], r.k);
      max_bf[i] = std::max(max_bf[i], r.brute_force);
    }
  }

  // Delta lower bound over the character scan of the configured type.
  const int rank = rs.rank();
  const int bound = cfg.weight_bound ? *cfg.weight_bound : (rank == 1 ? 20 : rank == 2 ? 6 : 3);
  const int grid = cfg.grid ? *cfg.grid : (rank == 1 ? 1000 : rank == 2 ? 48 : 6);
  std::vector<DeltaBoundAccumulator> acc;
  for (const auto& c : consts) acc.emplace_back(c);
  for_each_grid_value(rs, cache, nontrivial_weights(rs, bound), grid,
                      [&](const IrrepTable&, std::size_t, std::complex<double> z) {
                        for (auto& a : acc) a.add(z);
                      });

  int events = 0;
  json jarcs = json::array();
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    const DeltaBoundReport rep = acc[i].report();
    events += pig_viol[i] + static_cast<int>(rep.violations);
    const auto& c = consts[i];
    csv << format_double(c.arc.lo) << ',' << format_double(c.arc.hi) << ',' << format_double(c.m) << ',' << c.q << ','
        << format_double(c.delta) << ',' << c.p << ',' << format_double(c.epsilon) << ',' << c.sharp_k << ','
        << max_k[i] << ',' << max_bf[i] << ',' << fallbacks[i] << ',' << pig_viol[i] << ',' << rep.in_arc << ','
        << format_double(rep.min_delta) << ',' << rep.violations << '\n';
    jarcs.push_back({{"constants", to_json(c)},
                     {"pigeonhole", {{"samples", cfg.samples}, {"violations", pig_viol[i]}, {"fallbacks", fallbacks[i]},
                                     {"max_k", max_k[i]}, {"max_brute_force_k", max_bf[i]}}},
                     {"delta_bound", to_json(rep)}});
  }
  out.text("arcs.csv", csv.str());

  // Matrix inequalities on random unitaries.
  Rng urng = make_rng(cfg.seed, 900);
  std::uniform_int_distribution<int> pick_n(1, 8), pick_tn(1, 6), pick_k(1, 8);
  std::uniform_real_distribution<double> angle(0.0, kTwoPi);
  const int frob_samples = std::max(1, cfg.samples / 10);
  const int tele_samples = std::max(1, cfg.samples / 2);
  int frob_viol = 0, tele_viol = 0;
  double frob_worst = 0.0;
  for (int s = 0; s < frob_samples; ++s) {
    const int n = pick_n(urng);
    const Eigen::MatrixXcd p = random_unitary(n, urng);
    const std::complex<double> w = std::polar(1.0, angle(urng));
    const FrobeniusDeviation f = frobenius_deviation(p, w);
    const double err = std::abs(f.norm * f.norm - 2.0 * n * f.delta);
    frob_worst = std::max(frob_worst, err);
    if (err > 1e-12) ++frob_viol;
  }
  for (int s = 0; s < tele_samples; ++s) {
    const int n = pick_tn(urng), k = pick_k(urng);
    std::vector<Eigen::MatrixXcd> ps;
    for (int i = 0; i < k; ++i) ps.push_back(random_unitary(n, urng));
    if (!telescoping_check(ps, std::polar(1.0, angle(urng))).holds) ++tele_viol;
  }
  int final_viol = 0;
  for (int k = 1; k <= 100; ++k) {
    for (int i = 1; i < 1000; ++i) {
      const FinalInequality f = final_inequality_check(k, i / 1000.0);
      if (!(f.c_one_minus_c < f.bound)) ++final_viol;
    }
  }
  events += frob_viol + tele_viol + final_viol;

  json j = envelope("arc-lemma", cfg);
  j["type"] = rs.label();
  j["scan"] = {{"weight_bound", bound}, {"grid", grid}};
  j["arcs"] = jarcs;
  j["frobenius"] = {{"samples", frob_samples}, {"violations", frob_viol}, {"max_error", frob_worst}};
  j["telescoping"] = {{"samples", tele_samples}, {"violations", tele_viol}};
  j["final_inequality"] = {{"k_max", 100}, {"c_grid", 999}, {"violations", final_viol}};
  j["falsifications"] = events;
  out.json_file("arc_lemma.json", j);
  res.summary = j;
  res.falsifications = events;
  res.headline = "arc-lemma " + rs.label() + ": " + std::to_string(arcs.size()) + " arcs, " +
                 std::to_string(cfg.samples) + " points each";
  return res;
}

// ---------------------------------------------------------------- verify-all

struct SuiteEntry {
  std::string command;
  std::string type;
  std::function<void(ExperimentConfig&)> tweak;
};

std::vector<SuiteEntry> verify_suites() {
  auto nothing = [](ExperimentConfig&) {};
  return {
      {"scan-characters", "A1", [](ExperimentConfig& c) { c.weight_bound = 20; c.grid = 256; }},
      {"scan-characters", "A2", [](ExperimentConfig& c) { c.weight_bound = 6; c.grid = 48; }},
      {"estimate-c", "A1", [](ExperimentConfig& c) { c.weight_bounds = {20}; c.grids = {1000}; }},
      {"estimate-c", "A2", [](ExperimentConfig& c) { c.weight_bounds = {2, 6, 10}; c.grids = {30, 60, 120}; }},
      {"estimate-c", "G2", [](ExperimentConfig& c) { c.weight_bounds = {2, 6, 10}; c.grids = {30, 60, 120}; }},
      {"orbit", "A1", nothing},
      {"orbit", "A2", nothing},
      {"class-power", "A1", nothing},
      {"class-power", "A2", nothing},
      {"class-power", "B2", nothing},
      {"bch", "A1", nothing},
      {"bch", "A2", nothing},
      {"bch", "G2", nothing},
      {"arc-lemma", "A1", [](ExperimentConfig& c) { c.weight_bound = 20; c.grid = 1000; }},
      {"arc-lemma", "A2", [](ExperimentConfig& c) { c.weight_bound = 6; c.grid = 48; }},
  };
}

CommandResult verify_all(const ExperimentConfig& cfg, IrrepCache& cache) {
  CommandResult res;
  ArtifactWriter out(cfg.output_dir, res);
  std::ostringstream csv;
  csv << "command,type,status,falsifications,directory\n";
  json suites = json::array();
  int events = 0;
  for (const SuiteEntry& s : verify_suites()) {
    ExperimentConfig sub = cfg;
    sub.type = s.type;
    sub.weight_bound.reset();
    sub.grid.reset();
    sub.weight_bounds.clear();
    sub.grids.clear();
    s.tweak(sub);
    std::string dir = s.command + "_" + s.type;
    sub.output_dir = (fs::path(cfg.output_dir) / dir).string();
    const CommandResult r = run_subcommand(s.command, sub, cache);
    events += r.falsifications;
    const char* status = r.falsifications == 0 ? "pass" : "fail";
    csv << s.command << ',' << s.type << ',' << status << ',' << r.falsifications << ',' << dir << '\n';
    for (const auto& a : r.artifacts) res.artifacts.push_back(dir + "/" + a);
    suites.push_back({{"command", s.command}, {"type", s.type}, {"status", status},
                      {"falsifications", r.falsifications}, {"headline", r.headline}});
  }
  out.text("suite_summary.csv", csv.str());
  json j = envelope("verify-all", cfg);
  j["suites"] = suites;
  j["falsifications"] = events;
  out.json_file("verify_all.json", j);
  res.summary = j;
  res.falsifications = events;
  res.headline = "verify-all: " + std::to_string(suites.size()) + " suites, " + std::to_string(events) +
                 " falsification events";
  return res;
}

using Handler = CommandResult (*)(const ExperimentConfig&, IrrepCache&);

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> h{{"scan-characters", scan_characters}, {"estimate-c", estimate_c},
                                                {"orbit", orbit},                     {"class-power", class_power},
                                                {"bch", bch},                         {"arc-lemma", arc_lemma},
                                                {"verify-all", verify_all}};
  return h;
}

}  // namespace

const std::vector<std::string>& subcommand_names() {
  static const std::vector<std::string> names{"scan-characters", "estimate-c", "orbit",     "class-power",
                                              "bch",             "arc-lemma",  "verify-all"};
  return names;
}

CommandResult run_subcommand(const std::string& name, const ExperimentConfig& cfg, IrrepCache& cache) {
  const auto it = handlers().find(name);
  if (it == handlers().end()) throw PreconditionError("unknown subcommand: " + name);
  return it->second(cfg, cache);
}

int run(const std::string& name, const json& config, std::ostream& out, std::ostream& err) {
  if (!handlers().count(name)) {
    err << "error: unknown subcommand '" << name << "'\n";
    return kExitUsage;
  }
  ExperimentConfig cfg;
  try {
    cfg = parse_config(config);
  } catch (const ConfigError& e) {
    err << e.what() << '\n';
    return kExitUsage;
  }
  try {
    IrrepCache cache = IrrepCache::from_environment();
    const CommandResult r = run_subcommand(name, cfg, cache);
    out << r.headline << '\n';
    out << "artifacts: " << cfg.output_dir << " (" << r.artifacts.size() << " files)\n";
    if (r.falsifications > 0) {
      out << "FALSIFIED: " << r.falsifications << " event(s)\n";
      return kExitFalsified;
    }
    return kExitOk;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
}

}  // namespace lielab::cli
