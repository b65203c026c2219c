#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <nlohmann/json_fwd.hpp>
#include <span>
#include <string>
#include <vector>

#include "lielab/adjoint.hpp"
#include "lielab/random.hpp"

namespace lielab {

/// The conjugacy class of exp(t X) in the adjoint group, X a unit vector.
class ConjugacyClass {
 public:
  /// Normalizes `axis`; throws PreconditionError if it vanishes or t <= 0.
  ConjugacyClass(const CompactAlgebra& alg, const AlgebraVector& axis, double t);
  /// The class whose representative rotates by `angle` (see rotation_angle).
  static ConjugacyClass from_rotation_angle(const CompactAlgebra& alg, const AlgebraVector& axis, double angle);

  const AlgebraVector& axis() const { return axis_; }
  double t() const { return t_; }
  /// exp(t ad X).
  const AdjointMatrix& representative() const { return representative_; }
  /// t times the spectral radius of ad X: the largest rotation angle of Ad(exp tX).
  double rotation_angle() const { return rotation_angle_; }
  /// h exp(t ad X) h^T.
  AdjointMatrix conjugate(const AdjointMatrix& h) const { return h * representative_ * h.transpose(); }

 private:
  AlgebraVector axis_;
  double t_;
  double rotation_angle_;
  AdjointMatrix representative_;
};

/// prod_i g_i exp(t ad X) g_i^{-1}; the identity for an empty tuple.
AdjointMatrix word_map(std::span<const AdjointMatrix> gs, const ConjugacyClass& cls);

/// word_map(g) * exp(t ad X)^{-n}: the map whose differential at the identity
/// tuple has image L_n(x, ..., x).
AdjointMatrix trailing_inverse_word(std::span<const AdjointMatrix> gs, const ConjugacyClass& cls);

/// [(1 - Ad x_1) | Ad(x_1)(1 - Ad x_2) | Ad(x_1 x_2)(1 - Ad x_3) | ...].
Eigen::MatrixXd tangent_space_matrix(std::span<const AdjointMatrix> xs);
int tangent_rank_L_n(std::span<const AdjointMatrix> xs);

struct GreedyTuple {
  std::vector<AdjointMatrix> elements;  // class elements x_1..x_n
  std::vector<int> rank_history;        // rank after each prepend
  bool stalled = false;                 // rank stopped below dim: a falsification event
  int candidates_tried = 0;
};

GreedyTuple greedy_class_tuple(const CompactAlgebra& alg, const ConjugacyClass& cls, Rng& rng, int cap = 0,
                               int candidates_per_step = 64);

struct WordRecord {
  std::vector<AdjointMatrix> conjugators;
  AdjointMatrix product;
  double residual = 0.0;  // |product - target|_F
  int rank = 0;           // tangent_rank_L_n of the conjugated class elements
  int iterations = 0;
  bool success = false;
  std::uint64_t seed = 0;
};

struct WordSolveOptions {
  double tol = 1e-8;
  int max_iterations = 100;
  int starts = 32;
};

/// Gauss-Newton on the conjugators, starting from `start`.
WordRecord solve_word_from(const CompactAlgebra& alg, const ConjugacyClass& cls, std::vector<AdjointMatrix> start,
                           const AdjointMatrix& target, const WordSolveOptions& opts = {});

/// Multi-start version; start k uses seed derive_seed(seed, k). Returns the best
/// start (smallest residual, lowest index on ties).
WordRecord solve_word_to_target(const CompactAlgebra& alg, const ConjugacyClass& cls, int n,
                                const AdjointMatrix& target, std::uint64_t seed, const WordSolveOptions& opts = {});

struct IdentityCheckReport {
  std::string type;
  double t = 0.0;
  double rotation_angle = 0.0;
  int n = 0;
  bool reachable = false;
  bool interior = false;
  double min_residual = 0.0;
  int rank_at_best = 0;
  int interior_targets_hit = 0;
  int interior_targets_total = 0;
  std::uint64_t seed = 0;
  std::vector<std::uint64_t> seeds;
};

struct IdentityCheckOptions {
  WordSolveOptions solve;
  double epsilon = 1e-3;
  int interior_restarts = 4;
};

/// Is the identity an interior point of C^n? Reachability by multi-start solve,
/// interiority by solving to 6 dim targets exp(eps B) around the identity.
IdentityCheckReport class_power_identity_check(const CompactAlgebra& alg, const ConjugacyClass& cls, int n,
                                               std::uint64_t seed, const IdentityCheckOptions& opts = {});

struct IdentityPowerSearch {
  bool found = false;
  int n_bound = 0;                              // smallest n passing, 0 if none
  std::vector<IdentityCheckReport> reports;     // one per n tried, in order
};

/// Runs class_power_identity_check for n = 2, 3, ..., n_max and stops at the
/// first n that is reachable, interior and has a full-rank differential.
IdentityPowerSearch identity_power_search(const CompactAlgebra& alg, const ConjugacyClass& cls, int n_max,
                                          std::uint64_t seed, const IdentityCheckOptions& opts = {});

/// log(prod_i exp(t X_i)) - t sum_i X_i.
AlgebraVector bch_remainder(const CompactAlgebra& alg, double t, std::span<const AlgebraVector> xs);

struct ScalingFit {
  bool exact_zero = false;
  double exponent = 0.0;
  double constant = 0.0;  // max |r| / t^2 over the grid
  std::vector<double> t_grid;
  std::vector<double> norms;
};

ScalingFit bch_scaling_fit(const CompactAlgebra& alg, std::span<const AlgebraVector> xs,
                           std::span<const double> t_grid);

struct ProductRadius {
  double mu_hat = 0.0;
  double mu_bound = 0.0;  // max_k (k + delta m_k)
  std::vector<double> m;  // m[k-1]: max |r_k| / t^2 over the samples with k factors
  int n = 0;
  double delta = 0.0;
  int samples = 0;
};

/// Samples k <= n, t < delta and unit X_i; throws LogRadiusError if delta is too large.
ProductRadius product_radius_mu(const CompactAlgebra& alg, int n, double delta, int samples, Rng& rng);

nlohmann::json to_json(const IdentityCheckReport& report);
nlohmann::json to_json(const GreedyTuple& tuple);
nlohmann::json to_json(const IdentityPowerSearch& search);
nlohmann::json to_json(const ScalingFit& fit);
nlohmann::json to_json(const ProductRadius& mu);

}  // namespace lielab
