#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <nlohmann/json_fwd.hpp>
#include <optional>
#include <span>
#include <vector>

#include "lielab/adjoint.hpp"
#include "lielab/random.hpp"

namespace lielab {

struct HullCertificate {
  std::vector<double> coefficients;  // a_i > 0, sum 1
  double margin = 0.0;               // min a_i
  double residual = 0.0;             // |sum a_i v_i|
};

struct HullVerdict {
  enum class Kind {
    Certificate,  // zero is interior; `certificate` holds the coefficients
    Separator,    // every v_i lies in the closed half-space separator(v) >= 0
    Degenerate,   // all inputs vanish
  };
  Kind kind = Kind::Degenerate;
  std::optional<HullCertificate> certificate;
  std::optional<Eigen::VectorXd> separator;  // unit vector
  int span_rank = 0;
  double lp_margin = 0.0;  // optimum of the margin problem on the rescaled input (0 when infeasible)
};

const char* to_string(HullVerdict::Kind kind);

/// Decides whether 0 lies in the interior of conv{v_i}.
///
/// Interior means a strictly positive convex combination vanishes and the
/// v_i span the ambient space. The test is invariant under v_i -> lambda v_i.
HullVerdict zero_in_hull_interior(const std::vector<Eigen::VectorXd>& vs, double margin_tol = 1e-9);

AlgebraVector orbit_sum(const AlgebraVector& x, std::span<const AdjointMatrix> gs);

/// Rank of d(orbit sum) at the tuple; equals dim iff the map is submersive there.
int orbit_sum_rank(const CompactAlgebra& alg, const AlgebraVector& x, std::span<const AdjointMatrix> gs);

struct SpanningConfiguration {
  std::vector<AdjointMatrix> elements;
  HullCertificate certificate;
  int tries = 0;
};

/// Random tuple whose orbit vectors contain 0 in the interior of their hull.
/// n starts at dim + 1 and doubles after every failed try.
SpanningConfiguration sample_spanning_configuration(const CompactAlgebra& alg, const AlgebraVector& x, Rng& rng,
                                                    int max_tries = 12);

struct Fraction {
  std::int64_t p = 0;
  std::int64_t q = 1;
  double value() const { return static_cast<double>(p) / static_cast<double>(q); }
};

/// Fraction with the smallest denominator strictly inside (lo, hi); 0 <= lo < hi.
Fraction simplest_fraction_between(double lo, double hi);

struct ReplicationPlan {
  std::vector<Fraction> fractions;
  std::vector<std::int64_t> counts;  // p_i * prod_{j != i} q_j
  std::int64_t n = 0;
  std::int64_t denominator_product = 1;
};

ReplicationPlan replication_plan(std::span<const double> a, double delta);

/// (c_1 x counts[0], c_2 x counts[1], ...).
template <class T>
std::vector<T> replicate(const ReplicationPlan& plan, std::span<const T> items) {
  std::vector<T> out;
  for (std::size_t i = 0; i < items.size() && i < plan.counts.size(); ++i) {
    for (std::int64_t k = 0; k < plan.counts[i]; ++k) out.push_back(items[i]);
  }
  return out;
}

using LatticePoint = std::vector<std::int64_t>;

struct LatticeWalk {
  std::vector<LatticePoint> points;        // x_1, x_2, ...
  std::vector<int> step_coordinate;        // x_{i} - x_{i-1} = e_{step_coordinate[i]} (x_0 = 0)
  std::vector<std::size_t> floor_points;   // indices of the points of the form floor(t a)
  double max_distance = 0.0;
  double bound = 0.0;                      // sqrt(2n)
};

double distance_to_ray(const LatticePoint& x, std::span<const double> a);

/// Unit-step lattice walk shadowing the ray R_{>=0} a.
LatticeWalk lattice_ray_walk(std::span<const double> a, std::size_t steps);

struct PartialSumSequence {
  std::vector<int> indices;
  double max_partial_norm = 0.0;
  double bound = 0.0;  // n sqrt(2n) max |v_j|
  bool degenerate = false;
};

PartialSumSequence bounded_partial_sum_sequence(const std::vector<Eigen::VectorXd>& vs, std::span<const double> a,
                                                std::size_t length);

struct RefineOptions {
  double tol = 1e-10;
  int max_iterations = 200;
};

struct RefineResult {
  std::vector<AdjointMatrix> elements;
  double residual = 0.0;
  int iterations = 0;
};

/// Gauss-Newton on (g_1..g_n) -> sum Ad(g_i) X with left exponential retraction.
RefineResult refine_vanishing_tuple(const CompactAlgebra& alg, const AlgebraVector& x,
                                    std::vector<AdjointMatrix> start, const RefineOptions& opts = {});

struct VanishingTuple {
  int n = 0;
  std::vector<AdjointMatrix> elements;
  double residual = 0.0;
  int rank = 0;
  int attempts = 0;
};

struct VanishingOptions {
  int n_max = 16;
  int attempts_per_n = 4;
  RefineOptions refine;
};

/// Smallest n (found by search) with sum Ad(g_i) X = 0 and full rank.
VanishingTuple find_vanishing_submersive_tuple(const CompactAlgebra& alg, const AlgebraVector& x, Rng& rng,
                                               const VanishingOptions& opts = {});

nlohmann::json to_json(const HullCertificate& cert);
nlohmann::json to_json(const ReplicationPlan& plan);

}  // namespace lielab
