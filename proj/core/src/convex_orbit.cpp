#include "lielab/convex_orbit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <nlohmann/json.hpp>
#include <numeric>

#include "lielab/errors.hpp"
#include "lielab/linear_program.hpp"

namespace lielab {

namespace {

int numerical_rank(const Eigen::MatrixXd& m, double rel_tol = 1e-9) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  int r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > rel_tol * s(0)) ++r;
  }
  return r;
}

Eigen::VectorXd separator_lp(const Eigen::MatrixXd& w) {
  // maximize sum z with z = W^T (y+ - y-), z + s = 1, all variables >= 0.
  const Eigen::Index d = w.rows();
  const Eigen::Index n = w.cols();
  const Eigen::Index cols = 2 * d + 2 * n;  // y+, y-, z, s
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(2 * n, cols);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(2 * n);
  Eigen::VectorXd c = Eigen::VectorXd::Zero(cols);
  for (Eigen::Index i = 0; i < n; ++i) {
    a.row(i).segment(0, d) = w.col(i).transpose();
    a.row(i).segment(d, d) = -w.col(i).transpose();
    a(i, 2 * d + i) = -1.0;
    a(n + i, 2 * d + i) = 1.0;
    a(n + i, 2 * d + n + i) = 1.0;
    b(n + i) = 1.0;
    c(2 * d + i) = 1.0;
  }
  const LpSolution sol = maximize_standard_form(a, b, c);
  if (sol.status != LpSolution::Status::Optimal) return Eigen::VectorXd::Zero(d);
  return sol.x.segment(0, d) - sol.x.segment(d, d);
}

// Largest-remainder apportionment of n among weights a (sum 1).
std::vector<int> apportion(const std::vector<double>& a, int n) {
  std::vector<int> out(a.size());
  std::vector<std::pair<double, std::size_t>> rem;
  int used = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double share = a[i] * n;
    out[i] = static_cast<int>(std::floor(share));
    used += out[i];
    rem.emplace_back(share - out[i], i);
  }
  std::stable_sort(rem.begin(), rem.end(), [](const auto& l, const auto& r) { return l.first > r.first; });
  for (std::size_t k = 0; used < n && k < rem.size(); ++k, ++used) ++out[rem[k].second];
  return out;
}

}  // namespace

const char* to_string(HullVerdict::Kind kind) {
  switch (kind) {
    case HullVerdict::Kind::Certificate:
      return "certificate";
    case HullVerdict::Kind::Separator:
      return "separator";
    case HullVerdict::Kind::Degenerate:
      return "degenerate";
  }
  return "?";
}

HullVerdict zero_in_hull_interior(const std::vector<Eigen::VectorXd>& vs, double margin_tol) {
  if (vs.empty()) throw PreconditionError("zero_in_hull_interior: empty input");
  const Eigen::Index d = vs.front().size();
  const Eigen::Index n = static_cast<Eigen::Index>(vs.size());
  double scale = 0.0;
  for (const auto& v : vs) {
    if (v.size() != d) throw PreconditionError("zero_in_hull_interior: mixed dimensions");
    scale = std::max(scale, v.norm());
  }
  HullVerdict out;
  if (scale == 0.0) return out;

  Eigen::MatrixXd w(d, n);
  for (Eigen::Index i = 0; i < n; ++i) w.col(i) = vs[static_cast<std::size_t>(i)] / scale;
  out.span_rank = numerical_rank(w);

  // Margin problem: a = s 1 + u, maximize s.
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(d + 1, n + 1);
  a.block(0, 0, d, 1) = w.rowwise().sum();
  a.block(0, 1, d, n) = w;
  a(d, 0) = static_cast<double>(n);
  a.block(d, 1, 1, n).setOnes();
  Eigen::VectorXd b = Eigen::VectorXd::Zero(d + 1);
  b(d) = 1.0;
  Eigen::VectorXd c = Eigen::VectorXd::Zero(n + 1);
  c(0) = 1.0;
  const LpSolution sol = maximize_standard_form(a, b, c);
  if (sol.status == LpSolution::Status::Optimal) out.lp_margin = sol.x(0);

  if (out.lp_margin >= margin_tol && out.span_rank == d) {
    HullCertificate cert;
    cert.coefficients.resize(vs.size());
    double total = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      cert.coefficients[static_cast<std::size_t>(i)] = sol.x(0) + sol.x(i + 1);
      total += cert.coefficients[static_cast<std::size_t>(i)];
    }
    for (double& ai : cert.coefficients) ai /= total;
    cert.margin = *std::min_element(cert.coefficients.begin(), cert.coefficients.end());
    Eigen::VectorXd sum = Eigen::VectorXd::Zero(d);
    for (Eigen::Index i = 0; i < n; ++i) sum += cert.coefficients[static_cast<std::size_t>(i)] * vs[static_cast<std::size_t>(i)];
    cert.residual = sum.norm();
    out.kind = HullVerdict::Kind::Certificate;
    out.certificate = std::move(cert);
    return out;
  }

  Eigen::VectorXd sep;
  if (out.span_rank < d) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(w, Eigen::ComputeFullU);
    sep = svd.matrixU().col(d - 1);
  } else {
    sep = separator_lp(w);
  }
  if (sep.norm() == 0.0) {
    // Numerically marginal; fall back to the direction of least support.
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(w, Eigen::ComputeFullU);
    sep = svd.matrixU().col(d - 1);
    if ((w.transpose() * sep).minCoeff() < (w.transpose() * (-sep)).minCoeff()) sep = -sep;
  }
  out.kind = HullVerdict::Kind::Separator;
  out.separator = sep.normalized();
  return out;
}

AlgebraVector orbit_sum(const AlgebraVector& x, std::span<const AdjointMatrix> gs) {
  AlgebraVector s = AlgebraVector::Zero(x.size());
  for (const auto& g : gs) s += g * x;
  return s;
}

int orbit_sum_rank(const CompactAlgebra& alg, const AlgebraVector& x, std::span<const AdjointMatrix> gs) {
  const int d = alg.dim();
  Eigen::MatrixXd m(d, d * static_cast<Eigen::Index>(gs.size()));
  for (std::size_t i = 0; i < gs.size(); ++i) m.middleCols(static_cast<Eigen::Index>(i) * d, d) = alg.ad(gs[i] * x);
  return numerical_rank(m);
}

SpanningConfiguration sample_spanning_configuration(const CompactAlgebra& alg, const AlgebraVector& x, Rng& rng,
                                                    int max_tries) {
  if (x.norm() == 0.0) throw PreconditionError("sample_spanning_configuration: X = 0 has a trivial orbit");
  constexpr int kTriesPerSize = 4;
  int n = alg.dim() + 1;
  for (int attempt = 1; attempt <= max_tries; ++attempt) {
    std::vector<AdjointMatrix> gs;
    std::vector<Eigen::VectorXd> vs;
    for (int i = 0; i < n; ++i) {
      gs.push_back(random_group_element(alg, rng));
      vs.push_back(gs.back() * x);
    }
    HullVerdict verdict = zero_in_hull_interior(vs);
    if (verdict.kind == HullVerdict::Kind::Certificate) {
      return {std::move(gs), std::move(*verdict.certificate), attempt};
    }
    if (attempt % kTriesPerSize == 0) n *= 2;
  }
  throw ConvergenceError("sample_spanning_configuration: no certificate within max_tries");
}

Fraction simplest_fraction_between(double lo, double hi) {
  if (!(lo >= 0.0) || !(hi > lo)) throw PreconditionError("simplest_fraction_between: need 0 <= lo < hi");
  const double fl = std::floor(lo);
  if (fl + 1.0 < hi) return {static_cast<std::int64_t>(fl) + 1, 1};
  if (fl > 1e15) throw CapacityError("simplest_fraction_between: integer part too large");
  // lo, hi lie in [fl, fl + 1]; recurse on the reciprocals of the fractional parts.
  const double lo_frac = lo - fl;
  const double hi_frac = hi - fl;
  const double rlo = 1.0 / hi_frac;
  const double rhi = lo_frac > 0.0 ? 1.0 / lo_frac : std::numeric_limits<double>::infinity();
  if (!std::isfinite(rlo) || rlo > 1e15) throw CapacityError("simplest_fraction_between: interval too narrow");
  const Fraction inner = simplest_fraction_between(rlo, rhi);
  // fl + q/p
  const Int128 p = static_cast<Int128>(fl) * inner.p + inner.q;
  if (p > std::numeric_limits<std::int64_t>::max()) throw CapacityError("simplest_fraction_between: overflow");
  return {static_cast<std::int64_t>(p), inner.p};
}

ReplicationPlan replication_plan(std::span<const double> a, double delta) {
  if (!(delta > 0.0)) throw PreconditionError("replication_plan: delta must be positive");
  if (a.empty()) throw PreconditionError("replication_plan: empty coefficient list");
  ReplicationPlan plan;
  Int128 qprod = 1;
  for (double ai : a) {
    if (!(ai > 0.0)) throw PreconditionError("replication_plan: coefficients must be positive");
    plan.fractions.push_back(simplest_fraction_between(std::max(0.0, ai - delta), ai + delta));
    qprod *= plan.fractions.back().q;
    if (qprod > std::numeric_limits<std::int64_t>::max()) throw CapacityError("replication_plan: denominator overflow");
  }
  plan.denominator_product = static_cast<std::int64_t>(qprod);
  Int128 n = 0;
  for (std::size_t i = 0; i < plan.fractions.size(); ++i) {
    Int128 term = plan.fractions[i].p;
    for (std::size_t j = 0; j < plan.fractions.size(); ++j) {
      if (j != i) term *= plan.fractions[j].q;
      if (term > std::numeric_limits<std::int64_t>::max()) throw CapacityError("replication_plan: count overflow");
    }
    plan.counts.push_back(static_cast<std::int64_t>(term));
    n += term;
    if (n > std::numeric_limits<std::int64_t>::max()) throw CapacityError("replication_plan: n overflow");
  }
  plan.n = static_cast<std::int64_t>(n);
  return plan;
}

double distance_to_ray(const LatticePoint& x, std::span<const double> a) {
  double xa = 0.0;
  double aa = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    xa += static_cast<double>(x[i]) * a[i];
    aa += a[i] * a[i];
  }
  const double t = std::max(0.0, xa / aa);
  double d2 = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double diff = static_cast<double>(x[i]) - t * a[i];
    d2 += diff * diff;
  }
  return std::sqrt(d2);
}

LatticeWalk lattice_ray_walk(std::span<const double> a, std::size_t steps) {
  if (a.empty()) throw PreconditionError("lattice_ray_walk: empty direction");
  for (double ai : a) {
    if (!(ai > 0.0) || !std::isfinite(ai)) throw PreconditionError("lattice_ray_walk: coordinates must be positive");
  }
  if (steps == 0) throw PreconditionError("lattice_ray_walk: steps must be >= 1");
  const std::size_t n = a.size();
  LatticeWalk walk;
  walk.bound = std::sqrt(2.0 * static_cast<double>(n));
  walk.points.reserve(steps);
  walk.step_coordinate.reserve(steps);
  LatticePoint x(n, 0);
  // Each event t = m / a_j raises floor(t a_j) by one. Events sharing a time are
  // taken in coordinate order, which is the lexicographic interpolation.
  auto event_time = [&](std::size_t j) { return static_cast<double>(x[j] + 1) / a[j]; };
  while (walk.points.size() < steps) {
    std::size_t best = 0;
    double best_t = event_time(0);
    for (std::size_t j = 1; j < n; ++j) {
      const double t = event_time(j);
      if (t < best_t) {
        best_t = t;
        best = j;
      }
    }
    ++x[best];
    walk.points.push_back(x);
    walk.step_coordinate.push_back(static_cast<int>(best));
    walk.max_distance = std::max(walk.max_distance, distance_to_ray(x, a));
    bool more_at_same_time = false;
    for (std::size_t j = 0; j < n; ++j) {
      if (event_time(j) == best_t) more_at_same_time = true;
    }
    if (!more_at_same_time) walk.floor_points.push_back(walk.points.size() - 1);
  }
  return walk;
}

PartialSumSequence bounded_partial_sum_sequence(const std::vector<Eigen::VectorXd>& vs, std::span<const double> a,
                                                std::size_t length) {
  if (vs.empty() || vs.size() != a.size()) throw PreconditionError("bounded_partial_sum_sequence: size mismatch");
  const Eigen::Index d = vs.front().size();
  double vmax = 0.0;
  double weight = 0.0;
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(d);
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (!(a[i] > 0.0)) throw PreconditionError("bounded_partial_sum_sequence: a_i must be positive");
    vmax = std::max(vmax, vs[i].norm());
    weight += a[i];
    sum += a[i] * vs[i];
  }
  if (sum.norm() > 1e-9 * std::max(1.0, weight * vmax)) {
    throw PreconditionError("bounded_partial_sum_sequence: sum a_i v_i is not zero");
  }
  const double n = static_cast<double>(vs.size());
  PartialSumSequence out;
  out.bound = n * std::sqrt(2.0 * n) * vmax;
  out.degenerate = vmax == 0.0;
  const LatticeWalk walk = lattice_ray_walk(a, length);
  out.indices = walk.step_coordinate;
  Eigen::VectorXd partial = Eigen::VectorXd::Zero(d);
  for (int idx : out.indices) {
    partial += vs[static_cast<std::size_t>(idx)];
    out.max_partial_norm = std::max(out.max_partial_norm, partial.norm());
  }
  return out;
}

RefineResult refine_vanishing_tuple(const CompactAlgebra& alg, const AlgebraVector& x,
                                    std::vector<AdjointMatrix> start, const RefineOptions& opts) {
  const int d = alg.dim();
  const auto n = static_cast<Eigen::Index>(start.size());
  RefineResult res;
  res.elements = std::move(start);
  auto residual_of = [&](const std::vector<AdjointMatrix>& gs) { return orbit_sum(x, gs); };
  AlgebraVector r = residual_of(res.elements);
  double f = 0.5 * r.squaredNorm();
  const double stop = std::max(1e-15, opts.tol * 1e-3);
  for (; res.iterations < opts.max_iterations && std::sqrt(2 * f) > stop; ++res.iterations) {
    Eigen::MatrixXd jac(d, d * n);
    for (Eigen::Index i = 0; i < n; ++i) jac.middleCols(i * d, d) = -alg.ad(res.elements[static_cast<std::size_t>(i)] * x);
    Eigen::MatrixXd jjt = jac * jac.transpose();
    const double mu = 1e-12 * std::max(1.0, jjt.trace() / d);
    jjt.diagonal().array() += mu;
    const Eigen::VectorXd y = jjt.ldlt().solve(r);
    const Eigen::VectorXd xi = -jac.transpose() * y;
    const double slope = r.dot(jac * xi);
    if (!(slope < 0.0)) break;
    double step = 1.0;
    bool accepted = false;
    for (int k = 0; k < 40; ++k, step *= 0.5) {
      std::vector<AdjointMatrix> trial(res.elements.size());
      for (Eigen::Index i = 0; i < n; ++i) {
        trial[static_cast<std::size_t>(i)] =
            alg.group_exp(step * xi.segment(i * d, d)) * res.elements[static_cast<std::size_t>(i)];
      }
      const AlgebraVector rt = residual_of(trial);
      const double ft = 0.5 * rt.squaredNorm();
      if (ft <= f + 1e-4 * step * slope) {
        res.elements = std::move(trial);
        r = rt;
        f = ft;
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
  }
  res.residual = r.norm();
  return res;
}

VanishingTuple find_vanishing_submersive_tuple(const CompactAlgebra& alg, const AlgebraVector& x, Rng& rng,
                                               const VanishingOptions& opts) {
  if (x.norm() == 0.0) throw PreconditionError("find_vanishing_submersive_tuple: X = 0");
  const SpanningConfiguration seed = sample_spanning_configuration(alg, x, rng);
  VanishingTuple out;
  for (int n = 2; n <= opts.n_max; ++n) {
    for (int attempt = 0; attempt < opts.attempts_per_n; ++attempt) {
      ++out.attempts;
      std::vector<AdjointMatrix> start;
      if (attempt == 0) {
        const std::vector<int> counts = apportion(seed.certificate.coefficients, n);
        for (std::size_t i = 0; i < counts.size(); ++i) {
          for (int k = 0; k < counts[i]; ++k) {
            start.push_back(alg.group_exp(0.05 * alg.random_unit(rng)) * seed.elements[i]);
          }
        }
      } else {
        for (int k = 0; k < n; ++k) start.push_back(random_group_element(alg, rng));
      }
      RefineResult refined = refine_vanishing_tuple(alg, x, std::move(start), opts.refine);
      if (refined.residual > opts.refine.tol) continue;
      const int rank = orbit_sum_rank(alg, x, refined.elements);
      if (rank != alg.dim()) continue;
      out.n = n;
      out.elements = std::move(refined.elements);
      out.residual = refined.residual;
      out.rank = rank;
      return out;
    }
  }
  throw ConvergenceError("find_vanishing_submersive_tuple: refinement stagnated up to n_max; reseed");
}

nlohmann::json to_json(const HullCertificate& cert) {
  return {{"coefficients", cert.coefficients}, {"margin", cert.margin}, {"residual", cert.residual}};
}

nlohmann::json to_json(const ReplicationPlan& plan) {
  nlohmann::json fr = nlohmann::json::array();
  for (const auto& f : plan.fractions) fr.push_back({f.p, f.q});
  return {{"fractions", fr}, {"counts", plan.counts}, {"n", plan.n}};
}

}  // namespace lielab
