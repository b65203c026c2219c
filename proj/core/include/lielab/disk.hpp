#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <functional>
#include <nlohmann/json_fwd.hpp>
#include <ostream>
#include <string>
#include <vector>

#include "lielab/character.hpp"
#include "lielab/random.hpp"
#include "lielab/root_system.hpp"

namespace lielab {

/// h(z) = (|z|^2 - Re z) / (Re z - 1): the largest c with z in the disk Theta_c.
/// Throws PreconditionError when Re z >= 1.
double disk_requirement(std::complex<double> z);

/// Theta_c: the disk tangent to the unit circle at 1 and to the line Re z = c.
struct DiskParam {
  double c = 0.0;

  double center() const { return 0.5 * (1.0 + c); }
  double radius() const { return 0.5 * (1.0 - c); }
  /// Metric test |z - center| <= radius (+ tol).
  bool contains(std::complex<double> z, double tol = 0.0) const { return std::abs(z - center()) <= radius() + tol; }
};

/// The proof works with the disk of radius 1 - c' centered at c'; both describe
/// the same family with c = 2 c' - 1.
inline double statement_c_from_proof_c(double c_proof) { return 2.0 * c_proof - 1.0; }
inline double proof_c_from_statement_c(double c_statement) { return 0.5 * (c_statement + 1.0); }

struct DiskEstimate {
  std::string type;
  int weight_bound = 0;
  int grid = 0;
  double c_hat = 1.0;
  CharacterSample attaining;
  Eigen::VectorXd attaining_root_values;
  std::size_t samples = 0;
  std::size_t irreps = 0;
  bool empty = true;  // no admissible sample (e.g. trivial irrep only)
};

/// Visits the normalized character value at every point of the uniform
/// root-value grid, irreps in the given order, grid points in flat order.
/// Grids are computed in parallel; visits happen on the calling thread.
using GridVisitor = std::function<void(const IrrepTable& table, std::size_t flat, std::complex<double> z)>;
void for_each_grid_value(const RootSystem& rs, IrrepCache& cache, const std::vector<Weight>& weights, int grid,
                         const GridVisitor& visit);

/// min h(z) over the given irreps and grid points, excluding z = 1.
DiskEstimate empirical_disk_constant(const RootSystem& rs, IrrepCache& cache, const std::vector<Weight>& weights,
                                     int grid);
/// Over all nontrivial root-lattice irreps of level <= weight_bound.
DiskEstimate empirical_disk_constant(const RootSystem& rs, IrrepCache& cache, int weight_bound, int grid);

/// Estimates for every (bound, grid) pair, bounds outer. With increasing bounds
/// and grids that refine each other the c_hat series is nonincreasing.
std::vector<DiskEstimate> disk_constant_series(const RootSystem& rs, IrrepCache& cache,
                                               const std::vector<int>& weight_bounds, const std::vector<int>& grids);

/// A closed arc {exp(2 pi i x) : lo <= x <= hi} with 0 < lo <= hi < 1.
struct ArcSpec {
  double lo = 0.25;
  double hi = 0.75;
  bool contains(double x) const;
};

struct ArcConstants {
  ArcSpec arc;
  std::int64_t class_power_bound = 0;  // B
  double m = 0.0;
  std::int64_t q = 0;
  double delta = 0.0;
  std::int64_t p = 0;
  double epsilon = 0.0;        // 1 / (2 p q)^2
  std::int64_t sharp_k = 0;    // max over a grid of the arc of the smallest k with Re w^k <= 0
  double sharp_epsilon = 0.0;  // 1 / sharp_k^2
};

ArcConstants arc_constants(const ArcSpec& arc, std::int64_t class_power_bound);

struct PigeonholeResult {
  std::int64_t k = 0;            // constructive
  std::int64_t brute_force = 0;  // smallest k >= 1 with Re w^k <= 0
  std::int64_t first_multiple = 0;  // k0 <= q with |k0 x| <= 1/q
  std::int64_t multiplier = 0;      // L <= p with |L k0 x| <= 1/p
  bool used_fallback = false;       // the scan after L failed; L = 1 used
};

/// Smallest k >= 1 with cos(2 pi k x) <= 0.
std::int64_t brute_force_k(double x);
PigeonholeResult pigeonhole_k(double x, const ArcConstants& consts);

struct FrobeniusDeviation {
  double norm = 0.0;   // |P - w I|_F
  double delta = 0.0;  // 1 - Re(conj(w) tr P) / n
};

FrobeniusDeviation frobenius_deviation(const Eigen::MatrixXcd& p, std::complex<double> omega);

struct TelescopingCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

TelescopingCheck telescoping_check(const std::vector<Eigen::MatrixXcd>& ps, std::complex<double> omega);

/// Haar-random unitary from the QR factorization of a complex Gaussian matrix.
Eigen::MatrixXcd random_unitary(int n, Rng& rng);

struct DeltaBoundReport {
  std::size_t in_arc = 0;
  double min_delta = 1.0;
  double epsilon = 0.0;
  double margin = 0.0;  // min_delta - epsilon
  std::size_t violations = 0;
  bool vacuous = true;
  bool passed() const { return violations == 0; }
};

/// Streaming form of delta_lower_bound_check.
class DeltaBoundAccumulator {
 public:
  explicit DeltaBoundAccumulator(const ArcConstants& consts);
  void add(std::complex<double> z);
  DeltaBoundReport report() const;

 private:
  ArcConstants consts_;
  DeltaBoundReport rep_;
};

DeltaBoundReport delta_lower_bound_check(const std::vector<CharacterSample>& samples, const ArcConstants& consts);

struct FinalInequality {
  double lhs = 0.0;  // 1 - 1/k^2
  double rhs = 0.0;  // 1 - c (1 - c) (pi / 2k)^2
  double c_one_minus_c = 0.0;
  double bound = 0.0;  // 4 / pi^2
  bool contradiction = false;
};

FinalInequality final_inequality_check(int k, double c);

void write_disk_csv(std::ostream& os, const std::string& type_label, const std::vector<CharacterSample>& samples);

/// Scatter of z values with the unit circle and Theta_c.
std::string disk_svg(const std::vector<std::complex<double>>& zs, double c_hat, int size = 480);

nlohmann::json to_json(const DiskEstimate& est);
nlohmann::json to_json(const ArcConstants& consts);
nlohmann::json to_json(const DeltaBoundReport& rep);

}  // namespace lielab
