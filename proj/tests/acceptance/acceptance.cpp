// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "lielab/class_power.hpp"
#include "lielab/convex_orbit.hpp"
#include "lielab/disk.hpp"
#include "lielab/errors.hpp"
#include "lielab_cli/commands.hpp"

namespace fs = std::filesystem;
using namespace lielab;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Check {
 public:
  void require(bool ok, const std::string& what) {
    if (!ok) {
      out_.pass = false;
      if (!failures_.empty()) failures_ += "; ";
      failures_ += what;
    }
  }
  void note(const std::string& s) {
    if (!notes_.empty()) notes_ += "; ";
    notes_ += s;
  }
  Outcome done() {
    out_.detail = out_.pass ? notes_ : failures_ + (notes_.empty() ? "" : " | " + notes_);
    return out_;
  }

 private:
  Outcome out_;
  std::string failures_, notes_;
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("lielab_acceptance_" + name);
  fs::remove_all(p);
  return p;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// 1 ---------------------------------------------------------------------------
Outcome so3_disk_constant() {
  Check c;
  const auto t0 = std::chrono::steady_clock::now();
  // Oracle: min over l <= 20 of sin((2l+1)u) / ((2l+1) sin u) on a fine u grid.
  double oracle = 1.0;
  int oracle_l = 0;
  for (int l = 1; l <= 20; ++l) {
    for (int i = 1; i < 200000; ++i) {
      const double u = kPi * i / 200000.0;
      const double v = std::sin((2 * l + 1) * u) / ((2 * l + 1) * std::sin(u));
      if (v < oracle) {
        oracle = v;
        oracle_l = l;
      }
    }
  }
  c.require(std::abs(oracle + 1.0 / 3.0) <= 1e-9 && oracle_l == 1, "brute-force oracle is not -1/3 at l=1");

  const fs::path dir = scratch("c1");
  std::ostringstream out, err;
  const int code = cli::run("estimate-c", {{"type", "A1"}, {"weight_bound", 20}, {"grid", 1000}, {"output_dir", dir.string()}},
                            out, err);
  c.require(code == cli::kExitOk, "estimate-c exit " + std::to_string(code) + " " + err.str());
  if (code != cli::kExitOk) return c.done();
  const auto j = nlohmann::json::parse(slurp(dir / "estimate_c.json"));
  const double c_hat = j.at("c_hat").get<double>();
  const auto& s = j.at("attaining_sample");
  const double angle = 2 * kPi * s.at("root_values").at(0).get<double>();
  c.require(std::abs(c_hat - oracle) <= 1e-6, "c_hat " + fmt(c_hat) + " vs oracle " + fmt(oracle));
  c.require(s.at("lambda") == std::vector<int>{2}, "attained at lambda " + s.at("lambda").dump());
  c.require(std::abs(angle - kPi) <= 1e-12, "attained at <alpha,theta> = " + fmt(angle));
  const double secs = seconds_since(t0);
  c.require(secs < 60.0, "runtime " + fmt(secs) + " s");
  c.note("c_hat = " + fmt(c_hat) + " at lambda=(2), <alpha,theta> = pi, " + fmt(secs) + " s");
  return c.done();
}

// 2 ---------------------------------------------------------------------------
Outcome rank_two_disk_constants() {
  Check c;
  for (const char* type : {"A2", "G2"}) {
    const auto t0 = std::chrono::steady_clock::now();
    const RootSystem rs = RootSystem::build(type);
    IrrepCache cache;
    const std::vector<int> bounds{2, 6, 10}, grids{30, 60, 120};
    const auto series = disk_constant_series(rs, cache, bounds, grids);
    const auto at = [&](std::size_t b, std::size_t g) -> const DiskEstimate& { return series[b * grids.size() + g]; };
    for (const auto& e : series) {
      c.require(!e.empty && e.c_hat > -1.0 && e.c_hat < 0.0,
                std::string(type) + " c_hat " + fmt(e.c_hat) + " outside (-1,0)");
    }
    for (std::size_t b = 0; b < bounds.size(); ++b) {
      for (std::size_t g = 0; g < grids.size(); ++g) {
        if (b + 1 < bounds.size())
          c.require(at(b + 1, g).c_hat <= at(b, g).c_hat, std::string(type) + " increases with weight_bound");
        if (g + 1 < grids.size())
          c.require(at(b, g + 1).c_hat <= at(b, g).c_hat, std::string(type) + " increases under grid refinement");
      }
    }
    const DiskEstimate& last = series.back();
    const double secs = seconds_since(t0);
    c.require(secs < 600.0, std::string(type) + " runtime " + fmt(secs) + " s");
    std::string trail;
    for (std::size_t b = 0; b < bounds.size(); ++b) trail += (b ? " -> " : "") + fmt(at(b, grids.size() - 1).c_hat);
    c.note(std::string(type) + ": c_hat " + trail + " at lambda " + last.attaining.lambda.str() + ", z = " +
           fmt(last.attaining.z.real()) + (last.attaining.z.imag() < 0 ? "" : "+") + fmt(last.attaining.z.imag()) + "i");
  }
  return c.done();
}

// 3 ---------------------------------------------------------------------------
Outcome haar_orthogonality() {
  Check c;
  struct Case {
    const char* type;
    int bound;
    int n;
    double tol;
  };
  for (const Case& k : {Case{"A1", 20, 2048, 1e-6}, Case{"A2", 10, 256, 1e-4}}) {
    const RootSystem rs = RootSystem::build(k.type);
    IrrepCache cache;
    double worst = 0.0;
    int count = 0;
    for (const Weight& w : enumerate_adjoint_dominant_weights(rs, k.bound)) {
      if (w.is_zero()) continue;
      const double v = std::abs(haar_character_integral(rs, *cache.get(rs, w), k.n));
      worst = std::max(worst, v);
      ++count;
      c.require(v <= k.tol, std::string(k.type) + " " + w.str() + " |integral| = " + fmt(v));
    }
    c.note(std::string(k.type) + ": " + std::to_string(count) + " irreps, max " + fmt(worst));
  }
  return c.done();
}

// 4 ---------------------------------------------------------------------------
Outcome orbit_sum_vanishing() {
  Check c;
  const CompactAlgebra a1 = CompactAlgebra::build(RootSystem::build("A1"));
  const AlgebraVector x = AlgebraVector::Unit(3, 0), y = AlgebraVector::Unit(3, 1);
  std::vector<AdjointMatrix> triple;
  for (int k = 0; k < 3; ++k) triple.push_back(a1.group_exp((2 * kPi * k / 3.0) / std::sqrt(2.0) * y));
  const double norm = a1.killing_norm(orbit_sum(x, triple));
  const int rank = orbit_sum_rank(a1, x, triple);
  c.require(norm <= 1e-10, "A1 triple norm " + fmt(norm));
  c.require(rank == 3, "A1 triple rank " + std::to_string(rank));
  c.note("A1 triple |sum| = " + fmt(norm) + ", rank 3");

  const CompactAlgebra a2 = CompactAlgebra::build(RootSystem::build("A2"));
  int ok = 0, max_n = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng = make_rng(seed);
    const AlgebraVector xa = a2.random_unit(rng);
    try {
      const VanishingTuple v = find_vanishing_submersive_tuple(a2, xa, rng);
      max_n = std::max(max_n, v.n);
      if (v.n <= 16 && v.rank == 8 && v.residual <= 1e-10) ++ok;
    } catch (const Error&) {
    }
  }
  c.require(ok == 20, "A2 succeeded on " + std::to_string(ok) + "/20");
  c.note("A2 " + std::to_string(ok) + "/20 runs, max n = " + std::to_string(max_n));
  return c.done();
}

// 5 ---------------------------------------------------------------------------
Outcome lattice_and_partial_sums() {
  Check c;
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> pick_n(1, 6), pick_d(1, 6);
  std::uniform_real_distribution<double> coord(1e-3, 1.0);
  std::normal_distribution<double> gauss;
  int walk_viol = 0, sum_viol = 0;
  double walk_ratio = 0.0, sum_ratio = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const int n = pick_n(rng);
    std::vector<double> a(static_cast<std::size_t>(n));
    for (double& v : a) v = coord(rng);
    const LatticeWalk w = lattice_ray_walk(a, 10000);
    if (w.max_distance > std::sqrt(2.0 * n)) ++walk_viol;
    walk_ratio = std::max(walk_ratio, w.max_distance / std::sqrt(2.0 * n));
  }
  for (int i = 0; i < 1000; ++i) {
    const int n = pick_n(rng), d = pick_d(rng);
    std::vector<double> a(static_cast<std::size_t>(n));
    double total = 0.0;
    for (double& v : a) total += (v = coord(rng));
    for (double& v : a) v /= total;
    std::vector<Eigen::VectorXd> vs;
    Eigen::VectorXd mean = Eigen::VectorXd::Zero(d);
    for (int k = 0; k < n; ++k) {
      Eigen::VectorXd v(d);
      for (int j = 0; j < d; ++j) v(j) = gauss(rng);
      mean += a[static_cast<std::size_t>(k)] * v;
      vs.push_back(v);
    }
    double vmax = 0.0;
    for (auto& v : vs) vmax = std::max(vmax, (v -= mean).norm());
    const PartialSumSequence ps = bounded_partial_sum_sequence(vs, a, 10000);
    const double bound = n * std::sqrt(2.0 * n) * vmax;
    if (ps.max_partial_norm > bound) ++sum_viol;
    sum_ratio = std::max(sum_ratio, ps.max_partial_norm / bound);
  }
  c.require(walk_viol == 0, std::to_string(walk_viol) + " ray-distance violations");
  c.require(sum_viol == 0, std::to_string(sum_viol) + " partial-sum violations");
  c.note("max distance/sqrt(2n) = " + fmt(walk_ratio) + ", max partial/R = " + fmt(sum_ratio));
  return c.done();
}

// 6 ---------------------------------------------------------------------------
Outcome class_power_identity() {
  Check c;
  IdentityCheckOptions opts;
  const CompactAlgebra a1 = CompactAlgebra::build(RootSystem::build("A1"));
  Rng rng(6);
  const AlgebraVector axis = a1.random_unit(rng);
  int a1_ok = 0;
  for (int i = 1; i <= 20; ++i) {
    const double angle = 3.0 * i / 20.0;  // 0.15 .. 3.0 radians
    const ConjugacyClass cls = ConjugacyClass::from_rotation_angle(a1, axis, angle);
    const IdentityCheckReport r = class_power_identity_check(a1, cls, 2, derive_seed(6, static_cast<std::uint64_t>(i)), opts);
    if (r.reachable && r.interior) ++a1_ok;
  }
  c.require(a1_ok == 20, "A1 n=2 reachable+interior on " + std::to_string(a1_ok) + "/20");
  c.note("A1 20/20 classes at n=2");

  int events = 0;
  for (const char* type : {"A2", "B2"}) {
    const CompactAlgebra alg = CompactAlgebra::build(RootSystem::build(type));
    int bound = 0, classes = 0;
    for (int a = 0; a < 3; ++a) {
      Rng arng = make_rng(60, static_cast<std::uint64_t>(a));
      const AlgebraVector x = alg.random_unit(arng);
      for (double t : {0.2, 0.7, 1.4, 2.2}) {
        const ConjugacyClass cls(alg, x, t);
        ++classes;
        const GreedyTuple g = greedy_class_tuple(alg, cls, arng);
        if (g.stalled) ++events;
        const IdentityPowerSearch s = identity_power_search(alg, cls, 8, derive_seed(61, classes), opts);
        if (!s.found) {
          ++events;
          continue;
        }
        const IdentityCheckReport& r = s.reports.back();
        // The tangent space at the conjugated class elements must be the whole algebra.
        c.require(r.rank_at_best == alg.dim(), std::string(type) + " rank " + std::to_string(r.rank_at_best));
        bound = std::max(bound, s.n_bound);
      }
    }
    c.note(std::string(type) + ": " + std::to_string(classes) + " classes, reported bound n = " + std::to_string(bound));
  }
  c.require(events == 0, std::to_string(events) + " falsification events");
  return c.done();
}

// 7 ---------------------------------------------------------------------------
Outcome bch_scaling() {
  Check c;
  const std::vector<double> grid{1e-3, 2e-3, 4e-3, 8e-3, 1.6e-2, 3.2e-2};
  double lo = 10, hi = 0;
  for (const char* type : {"A1", "A2", "G2"}) {
    const CompactAlgebra alg = CompactAlgebra::build(RootSystem::build(type));
    Rng rng = make_rng(7, alg.dim());
    for (int trial = 0; trial < 5; ++trial) {
      for (int k : {2, 3, 4}) {
        std::vector<AlgebraVector> xs;
        for (int i = 0; i < k; ++i) xs.push_back(alg.random_unit(rng));
        const ScalingFit fit = bch_scaling_fit(alg, xs, grid);
        c.require(!fit.exact_zero && fit.exponent >= 1.95 && fit.exponent <= 2.05,
                  std::string(type) + " exponent " + fmt(fit.exponent));
        lo = std::min(lo, fit.exponent);
        hi = std::max(hi, fit.exponent);
      }
    }
    const AlgebraVector x = alg.random_unit(rng);
    const std::vector<AlgebraVector> commuting{x, -0.3 * x, 2.0 * x};
    const ScalingFit zero = bch_scaling_fit(alg, commuting, grid);
    c.require(zero.exact_zero, std::string(type) + " commuting remainder not zero");
    for (int n : {1, 2, 4}) {
      const ProductRadius mu = product_radius_mu(alg, n, 0.05, 1000, rng);
      // k = 1 attains the bound exactly, so allow rounding.
      c.require(mu.mu_hat <= mu.mu_bound * (1.0 + 1e-12), std::string(type) + " mu_hat " + fmt(mu.mu_hat) + " > " + fmt(mu.mu_bound));
    }
  }
  c.note("exponents in [" + fmt(lo) + ", " + fmt(hi) + "]");
  return c.done();
}

// 8 ---------------------------------------------------------------------------
Outcome arc_lemma() {
  Check c;
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<ArcConstants> consts;
  for (const ArcSpec& a : {ArcSpec{0.25, 0.75}, ArcSpec{0.45, 0.55}, ArcSpec{0.3, 0.7}})
    consts.push_back(arc_constants(a, 2));
  long pig_viol = 0, fallbacks = 0;
  std::int64_t max_q = 0;
  for (int arc = 0; arc < 100; ++arc) {
    const double lo = 0.01 + 0.49 * u(rng);
    const double hi = lo + (0.99 - lo) * u(rng);
    const ArcConstants k = arc_constants({lo, hi}, 2);
    max_q = std::max(max_q, k.q);
    consts.push_back(k);
    std::uniform_real_distribution<double> xs(lo, hi);
    for (int s = 0; s < 100000; ++s) {
      const double x = xs(rng);
      const PigeonholeResult r = pigeonhole_k(x, k);
      const double re = std::cos(2 * kPi * std::fmod(static_cast<double>(r.k) * x, 1.0));
      if (re > 1e-12 || r.k > 2 * k.p * k.q || r.k < 1) ++pig_viol;
      fallbacks += r.used_fallback;
    }
  }
  c.require(pig_viol == 0, std::to_string(pig_viol) + " pigeonhole violations");
  c.note("1e7 points, max q = " + std::to_string(max_q) + ", L=1 fallback on " + std::to_string(fallbacks));

  Rng urng(88);
  std::uniform_int_distribution<int> pn(1, 8), ptn(1, 6), pk(1, 8);
  double frob_err = 0.0;
  for (int s = 0; s < 2000; ++s) {
    const int n = pn(urng);
    const Eigen::MatrixXcd p = random_unitary(n, urng);
    const std::complex<double> w = std::polar(1.0, 2 * kPi * u(rng));
    const FrobeniusDeviation f = frobenius_deviation(p, w);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(p);
    double eig = 0.0;
    for (int i = 0; i < n; ++i) eig += std::norm(es.eigenvalues()(i) - w);
    frob_err = std::max({frob_err, std::abs(f.norm * f.norm - 2.0 * n * f.delta), std::abs(f.norm * f.norm - eig)});
  }
  c.require(frob_err <= 1e-12, "Frobenius identity error " + fmt(frob_err));
  int tele_fail = 0;
  for (int s = 0; s < 1000; ++s) {
    const int n = ptn(urng), k = pk(urng);
    std::vector<Eigen::MatrixXcd> ps;
    for (int i = 0; i < k; ++i) ps.push_back(random_unitary(n, urng));
    if (!telescoping_check(ps, std::polar(1.0, 2 * kPi * u(rng))).holds) ++tele_fail;
  }
  c.require(tele_fail == 0, std::to_string(tele_fail) + " telescoping failures");

  struct Scan {
    const char* type;
    int bound;
    int grid;
  };
  std::size_t in_arc = 0;
  double min_margin = 1.0;
  for (const Scan& s : {Scan{"A1", 20, 1000}, Scan{"A2", 10, 120}, Scan{"G2", 10, 120}}) {
    const RootSystem rs = RootSystem::build(s.type);
    IrrepCache cache;
    std::vector<DeltaBoundAccumulator> acc;
    for (const auto& k : consts) acc.emplace_back(k);
    std::vector<Weight> ws;
    for (const Weight& w : enumerate_adjoint_dominant_weights(rs, s.bound))
      if (!w.is_zero()) ws.push_back(w);
    for_each_grid_value(rs, cache, ws, s.grid, [&](const IrrepTable&, std::size_t, std::complex<double> z) {
      for (auto& a : acc) a.add(z);
    });
    for (const auto& a : acc) {
      const DeltaBoundReport r = a.report();
      c.require(r.passed(), std::string(s.type) + " delta bound violated " + std::to_string(r.violations) + " times");
      in_arc += r.in_arc;
      if (!r.vacuous) min_margin = std::min(min_margin, r.margin);
    }
  }
  c.note("delta checks on " + std::to_string(in_arc) + " in-arc values, min margin " + fmt(min_margin));

  int final_viol = 0;
  for (int k = 1; k <= 100; ++k)
    for (int i = 1; i < 1000; ++i)
      if (!(final_inequality_check(k, i / 1000.0).c_one_minus_c < 4.0 / (kPi * kPi))) ++final_viol;
  c.require(final_viol == 0, std::to_string(final_viol) + " final-inequality violations");
  return c.done();
}

// 9 ---------------------------------------------------------------------------
Outcome determinism() {
  Check c;
  const fs::path a = scratch("c9a"), b = scratch("c9b");
  std::ostringstream out, err;
  const int ca = cli::run("verify-all", {{"seed", 2024}, {"output_dir", a.string()}}, out, err);
  const int cb = cli::run("verify-all", {{"seed", 2024}, {"output_dir", b.string()}}, out, err);
  c.require(ca == cli::kExitOk && cb == cli::kExitOk, "verify-all exit codes " + std::to_string(ca) + ", " + std::to_string(cb) + " " + err.str());
  if (ca != cli::kExitOk || cb != cli::kExitOk) return c.done();
  std::set<std::string> files_a, files_b;
  for (const auto& e : fs::recursive_directory_iterator(a))
    if (e.is_regular_file()) files_a.insert(fs::relative(e.path(), a).string());
  for (const auto& e : fs::recursive_directory_iterator(b))
    if (e.is_regular_file()) files_b.insert(fs::relative(e.path(), b).string());
  c.require(files_a == files_b && !files_a.empty(), "artifact sets differ");
  int differing = 0;
  for (const auto& f : files_a) {
    if (files_b.count(f) && slurp(a / f) != slurp(b / f)) {
      ++differing;
      c.require(false, f + " differs");
    }
  }
  c.note(std::to_string(files_a.size()) + " artifacts byte-identical");
  return c.done();
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"1 SO(3) disk constant", so3_disk_constant},
      {"2 PSU(3) and G2 disk constants", rank_two_disk_constants},
      {"3 Haar orthogonality", haar_orthogonality},
      {"4 orbit-sum vanishing and submersivity", orbit_sum_vanishing},
      {"5 lattice-walk and partial-sum bounds", lattice_and_partial_sums},
      {"6 class-power identity", class_power_identity},
      {"7 BCH remainder scaling", bch_scaling},
      {"8 arc lemma machinery", arc_lemma},
      {"9 determinism", determinism},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = seconds_since(t0);
    std::printf("%s  [%s] %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str(), secs);
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
