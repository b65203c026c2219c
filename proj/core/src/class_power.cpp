#include "lielab/class_power.hpp"

#include <algorithm>
#include <cmath>
#include <nlohmann/json.hpp>
#include <numeric>

#include "lielab/errors.hpp"
#include "lielab/matrix_functions.hpp"
#include "lielab/parallel.hpp"

namespace lielab {

namespace {

int numerical_rank(const Eigen::MatrixXd& m, double rel_tol = 1e-9) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) <= 1e-300) return 0;
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > rel_tol * s(0)) ++r;
  }
  return r;
}

std::vector<AdjointMatrix> conjugates(std::span<const AdjointMatrix> gs, const ConjugacyClass& cls) {
  std::vector<AdjointMatrix> out;
  out.reserve(gs.size());
  for (const auto& g : gs) out.push_back(cls.conjugate(g));
  return out;
}

AdjointMatrix product(const std::vector<AdjointMatrix>& ms, int dim) {
  AdjointMatrix p = AdjointMatrix::Identity(dim, dim);
  for (const auto& m : ms) p = (p * m).eval();
  return p;
}

}  // namespace

ConjugacyClass::ConjugacyClass(const CompactAlgebra& alg, const AlgebraVector& axis, double t) : t_(t) {
  if (!(t > 0.0)) throw PreconditionError("ConjugacyClass: t must be positive");
  const double norm = axis.norm();
  if (norm == 0.0 || axis.size() != alg.dim()) throw PreconditionError("ConjugacyClass: axis must be a nonzero algebra vector");
  axis_ = axis / norm;
  rotation_angle_ = t * antisymmetric_spectral_radius(alg.ad(axis_));
  representative_ = alg.group_exp(t * axis_);
}

ConjugacyClass ConjugacyClass::from_rotation_angle(const CompactAlgebra& alg, const AlgebraVector& axis, double angle) {
  const double rho = antisymmetric_spectral_radius(alg.ad(axis / axis.norm()));
  if (rho == 0.0) throw PreconditionError("ConjugacyClass: axis is central");
  return ConjugacyClass(alg, axis, angle / rho);
}

AdjointMatrix word_map(std::span<const AdjointMatrix> gs, const ConjugacyClass& cls) {
  const auto dim = cls.representative().rows();
  AdjointMatrix p = AdjointMatrix::Identity(dim, dim);
  for (const auto& g : gs) p = (p * cls.conjugate(g)).eval();
  return p;
}

AdjointMatrix trailing_inverse_word(std::span<const AdjointMatrix> gs, const ConjugacyClass& cls) {
  AdjointMatrix p = word_map(gs, cls);
  for (std::size_t i = 0; i < gs.size(); ++i) p = (p * cls.representative().transpose()).eval();
  return p;
}

Eigen::MatrixXd tangent_space_matrix(std::span<const AdjointMatrix> xs) {
  if (xs.empty()) return {};
  const auto d = xs.front().rows();
  Eigen::MatrixXd out(d, d * static_cast<Eigen::Index>(xs.size()));
  AdjointMatrix prefix = AdjointMatrix::Identity(d, d);
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(d, d);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    out.middleCols(static_cast<Eigen::Index>(i) * d, d) = prefix * (id - xs[i]);
    prefix = (prefix * xs[i]).eval();
  }
  return out;
}

int tangent_rank_L_n(std::span<const AdjointMatrix> xs) { return numerical_rank(tangent_space_matrix(xs)); }

GreedyTuple greedy_class_tuple(const CompactAlgebra& alg, const ConjugacyClass& cls, Rng& rng, int cap,
                               int candidates_per_step) {
  if (cap <= 0) cap = alg.dim();
  GreedyTuple out;
  int rank = 0;
  while (rank < alg.dim() && static_cast<int>(out.elements.size()) < cap) {
    bool grown = false;
    for (int c = 0; c < candidates_per_step; ++c) {
      ++out.candidates_tried;
      std::vector<AdjointMatrix> trial;
      trial.reserve(out.elements.size() + 1);
      trial.push_back(cls.conjugate(random_group_element(alg, rng)));
      trial.insert(trial.end(), out.elements.begin(), out.elements.end());
      const int r = tangent_rank_L_n(trial);
      if (r > rank) {
        out.elements = std::move(trial);
        rank = r;
        out.rank_history.push_back(r);
        grown = true;
        break;
      }
    }
    if (!grown) break;
  }
  out.stalled = rank < alg.dim();
  return out;
}

WordRecord solve_word_from(const CompactAlgebra& alg, const ConjugacyClass& cls, std::vector<AdjointMatrix> start,
                           const AdjointMatrix& target, const WordSolveOptions& opts) {
  const int d = alg.dim();
  const auto n = static_cast<Eigen::Index>(start.size());
  if (n < 1) throw PreconditionError("solve_word_from: n must be >= 1");
  WordRecord rec;
  rec.conjugators = std::move(start);
  std::vector<AdjointMatrix> cs = conjugates(rec.conjugators, cls);
  AdjointMatrix w = product(cs, d);
  double f = 0.5 * (w - target).squaredNorm();
  const auto& basis = alg.ad_basis();

  for (; rec.iterations < opts.max_iterations && std::sqrt(2 * f) > 1e-3 * opts.tol; ++rec.iterations) {
    // Column (i, k): P_{<i} [ad e_k, C_i] P_{>i}, flattened.
    std::vector<AdjointMatrix> suffix(static_cast<std::size_t>(n) + 1, AdjointMatrix::Identity(d, d));
    for (Eigen::Index i = n - 1; i >= 0; --i)
      suffix[static_cast<std::size_t>(i)] = cs[static_cast<std::size_t>(i)] * suffix[static_cast<std::size_t>(i) + 1];
    Eigen::MatrixXd jac(d * d, d * n);
    AdjointMatrix prefix = AdjointMatrix::Identity(d, d);
    for (Eigen::Index i = 0; i < n; ++i) {
      const AdjointMatrix& c = cs[static_cast<std::size_t>(i)];
      const AdjointMatrix& suf = suffix[static_cast<std::size_t>(i) + 1];
      for (int k = 0; k < d; ++k) {
        const Eigen::MatrixXd col = prefix * (basis[static_cast<std::size_t>(k)] * c - c * basis[static_cast<std::size_t>(k)]) * suf;
        jac.col(i * d + k) = Eigen::Map<const Eigen::VectorXd>(col.data(), d * d);
      }
      prefix = (prefix * c).eval();
    }
    const Eigen::MatrixXd diff = w - target;
    const Eigen::Map<const Eigen::VectorXd> r(diff.data(), d * d);
    Eigen::MatrixXd jtj = jac.transpose() * jac;
    const double mu = 1e-10 * std::max(1.0, jtj.trace() / static_cast<double>(jtj.rows()));
    jtj.diagonal().array() += mu;
    const Eigen::VectorXd xi = jtj.ldlt().solve(-(jac.transpose() * r));
    const double slope = r.dot(jac * xi);
    if (!(slope < 0.0)) break;
    double step = 1.0;
    bool accepted = false;
    for (int k = 0; k < 30; ++k, step *= 0.5) {
      std::vector<AdjointMatrix> trial(rec.conjugators.size());
      for (Eigen::Index i = 0; i < n; ++i) {
        trial[static_cast<std::size_t>(i)] =
            alg.group_exp(step * xi.segment(i * d, d)) * rec.conjugators[static_cast<std::size_t>(i)];
      }
      std::vector<AdjointMatrix> tcs = conjugates(trial, cls);
      const AdjointMatrix tw = product(tcs, d);
      const double ft = 0.5 * (tw - target).squaredNorm();
      if (ft <= f + 1e-4 * step * slope) {
        rec.conjugators = std::move(trial);
        cs = std::move(tcs);
        w = tw;
        f = ft;
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
  }
  rec.product = w;
  rec.residual = (w - target).norm();
  rec.success = rec.residual <= opts.tol;
  rec.rank = tangent_rank_L_n(cs);
  return rec;
}

WordRecord solve_word_to_target(const CompactAlgebra& alg, const ConjugacyClass& cls, int n,
                                const AdjointMatrix& target, std::uint64_t seed, const WordSolveOptions& opts) {
  if (n < 1) throw PreconditionError("solve_word_to_target: n must be >= 1");
  const auto starts = static_cast<std::size_t>(std::max(1, opts.starts));
  std::vector<WordRecord> records(starts);
  parallel_for(starts, [&](std::size_t k) {
    const std::uint64_t s = derive_seed(seed, k);
    Rng rng(s);
    std::vector<AdjointMatrix> start;
    for (int i = 0; i < n; ++i) start.push_back(random_group_element(alg, rng));
    records[k] = solve_word_from(alg, cls, std::move(start), target, opts);
    records[k].seed = s;
  });
  std::size_t best = 0;
  for (std::size_t k = 1; k < starts; ++k) {
    if (records[k].residual < records[best].residual) best = k;
  }
  return std::move(records[best]);
}

IdentityCheckReport class_power_identity_check(const CompactAlgebra& alg, const ConjugacyClass& cls, int n,
                                               std::uint64_t seed, const IdentityCheckOptions& opts) {
  IdentityCheckReport rep;
  rep.type = alg.type_label();
  rep.t = cls.t();
  rep.rotation_angle = cls.rotation_angle();
  rep.n = n;
  rep.seed = seed;
  const int d = alg.dim();
  const AdjointMatrix id = AdjointMatrix::Identity(d, d);
  for (int k = 0; k < opts.solve.starts; ++k) rep.seeds.push_back(derive_seed(seed, static_cast<std::uint64_t>(k)));
  const WordRecord best = solve_word_to_target(alg, cls, n, id, seed, opts.solve);
  rep.min_residual = best.residual;
  rep.rank_at_best = best.rank;
  rep.reachable = best.success;
  if (!rep.reachable) return rep;

  rep.interior_targets_total = 6 * d;
  std::vector<char> hit(static_cast<std::size_t>(rep.interior_targets_total), 0);
  parallel_for(hit.size(), [&](std::size_t j) {
    Rng rng = make_rng(seed, 1'000'000 + j);
    const AdjointMatrix target = alg.group_exp(opts.epsilon * alg.random_unit(rng));
    WordRecord rec = solve_word_from(alg, cls, best.conjugators, target, opts.solve);
    for (int r = 0; !rec.success && r < opts.interior_restarts; ++r) {
      std::vector<AdjointMatrix> start;
      for (int i = 0; i < n; ++i) start.push_back(random_group_element(alg, rng));
      rec = solve_word_from(alg, cls, std::move(start), target, opts.solve);
    }
    hit[j] = rec.success ? 1 : 0;
  });
  rep.interior_targets_hit = static_cast<int>(std::count(hit.begin(), hit.end(), 1));
  rep.interior = rep.interior_targets_hit == rep.interior_targets_total;
  return rep;
}

IdentityPowerSearch identity_power_search(const CompactAlgebra& alg, const ConjugacyClass& cls, int n_max,
                                          std::uint64_t seed, const IdentityCheckOptions& opts) {
  IdentityPowerSearch out;
  for (int n = 2; n <= n_max; ++n) {
    out.reports.push_back(class_power_identity_check(alg, cls, n, seed, opts));
    const IdentityCheckReport& r = out.reports.back();
    if (r.reachable && r.interior && r.rank_at_best == alg.dim()) {
      out.found = true;
      out.n_bound = n;
      break;
    }
  }
  return out;
}

AlgebraVector bch_remainder(const CompactAlgebra& alg, double t, std::span<const AlgebraVector> xs) {
  const int d = alg.dim();
  AlgebraVector sum = AlgebraVector::Zero(d);
  for (const auto& x : xs) sum += x;
  if (xs.size() <= 1) return AlgebraVector::Zero(d);
  AdjointMatrix p = AdjointMatrix::Identity(d, d);
  for (const auto& x : xs) p = (p * alg.group_exp(t * x)).eval();
  return alg.group_log(p) - t * sum;
}

ScalingFit bch_scaling_fit(const CompactAlgebra& alg, std::span<const AlgebraVector> xs,
                           std::span<const double> t_grid) {
  if (t_grid.size() < 2) throw PreconditionError("bch_scaling_fit: need at least two grid points");
  ScalingFit fit;
  fit.t_grid.assign(t_grid.begin(), t_grid.end());
  double max_norm = 0.0;
  for (double t : t_grid) {
    if (!(t > 0.0)) throw PreconditionError("bch_scaling_fit: grid values must be positive");
    const double r = bch_remainder(alg, t, xs).norm();
    fit.norms.push_back(r);
    fit.constant = std::max(fit.constant, r / (t * t));
    max_norm = std::max(max_norm, r);
  }
  if (max_norm <= 1e-12) {
    fit.exact_zero = true;
    return fit;
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    if (fit.norms[i] <= 0.0) continue;
    const double lx = std::log(t_grid[i]);
    const double ly = std::log(fit.norms[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++m;
  }
  const double denom = m * sxx - sx * sx;
  if (m < 2 || std::abs(denom) < 1e-300) throw PreconditionError("bch_scaling_fit: degenerate grid");
  fit.exponent = (m * sxy - sx * sy) / denom;
  return fit;
}

ProductRadius product_radius_mu(const CompactAlgebra& alg, int n, double delta, int samples, Rng& rng) {
  if (n < 1 || !(delta > 0.0) || samples < 1) throw PreconditionError("product_radius_mu: need n >= 1, delta > 0");
  ProductRadius out;
  out.n = n;
  out.delta = delta;
  out.samples = samples;
  out.m.assign(static_cast<std::size_t>(n), 0.0);
  std::uniform_int_distribution<int> pick_k(1, n);
  std::uniform_real_distribution<double> pick_t(0.0, delta);
  for (int s = 0; s < samples; ++s) {
    const int k = pick_k(rng);
    double t = 0.0;
    while (t == 0.0) t = pick_t(rng);
    std::vector<AlgebraVector> xs;
    for (int i = 0; i < k; ++i) xs.push_back(alg.random_unit(rng));
    AlgebraVector r;
    try {
      r = bch_remainder(alg, t, xs);
    } catch (const LogRadiusError&) {
      throw LogRadiusError("product_radius_mu: logarithm failed at delta = " + std::to_string(delta) +
                           "; use a smaller delta");
    }
    AlgebraVector sum = AlgebraVector::Zero(alg.dim());
    for (const auto& x : xs) sum += x;
    out.mu_hat = std::max(out.mu_hat, (t * sum + r).norm() / t);
    out.m[static_cast<std::size_t>(k) - 1] = std::max(out.m[static_cast<std::size_t>(k) - 1], r.norm() / (t * t));
  }
  for (int k = 1; k <= n; ++k) out.mu_bound = std::max(out.mu_bound, k + delta * out.m[static_cast<std::size_t>(k) - 1]);
  return out;
}

nlohmann::json to_json(const IdentityCheckReport& r) {
  return {{"type", r.type},
          {"t", r.t},
          {"rotation_angle", r.rotation_angle},
          {"n", r.n},
          {"reachable", r.reachable},
          {"interior", r.interior},
          {"min_residual", r.min_residual},
          {"rank_at_best", r.rank_at_best},
          {"interior_targets_hit", r.interior_targets_hit},
          {"interior_targets_total", r.interior_targets_total},
          {"seed", r.seed},
          {"seeds", r.seeds}};
}

nlohmann::json to_json(const GreedyTuple& g) {
  return {{"n", g.elements.size()},
          {"rank_history", g.rank_history},
          {"stalled", g.stalled},
          {"candidates_tried", g.candidates_tried}};
}

nlohmann::json to_json(const IdentityPowerSearch& search) {
  nlohmann::json reports = nlohmann::json::array();
  for (const auto& r : search.reports) reports.push_back(to_json(r));
  return {{"found", search.found}, {"n_bound", search.n_bound}, {"reports", reports}};
}

nlohmann::json to_json(const ScalingFit& fit) {
  nlohmann::json j{{"exact_zero", fit.exact_zero}, {"constant", fit.constant}, {"t", fit.t_grid}, {"norms", fit.norms}};
  j["exponent"] = fit.exact_zero ? nlohmann::json(nullptr) : nlohmann::json(fit.exponent);
  return j;
}

nlohmann::json to_json(const ProductRadius& mu) {
  return {{"n", mu.n},         {"delta", mu.delta}, {"samples", mu.samples},
          {"mu_hat", mu.mu_hat}, {"mu_bound", mu.mu_bound}, {"m", mu.m}};
}

}  // namespace lielab
