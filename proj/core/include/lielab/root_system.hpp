#pragma once

#include <Eigen/Dense>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <nlohmann/json_fwd.hpp>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lielab/integer_matrix.hpp"

namespace lielab {

/// A weight in fundamental-weight coordinates (Dynkin labels).
struct Weight {
  std::vector<int> coeffs;

  Weight() = default;
  explicit Weight(std::vector<int> c) : coeffs(std::move(c)) {}
  Weight(std::initializer_list<int> c) : coeffs(c) {}

  std::size_t rank() const { return coeffs.size(); }
  bool is_dominant() const;
  bool is_zero() const;
  int operator[](std::size_t i) const { return coeffs[i]; }

  Weight operator+(const Weight& other) const;
  Weight operator-(const Weight& other) const;

  auto operator<=>(const Weight&) const = default;
  bool operator==(const Weight&) const = default;

  /// "(a,b,...)" form used in CSV and JSON output.
  std::string str() const;
};

struct WeightHash {
  std::size_t operator()(const Weight& w) const noexcept;
};

enum class Family { A, B, C, D, G };

struct TypeLabel {
  Family family = Family::A;
  int rank = 1;

  /// Accepts "A1", "A2", "B2", "C2", "G2" and the classical series
  /// A_n (n >= 1), B_n (n >= 2), C_n (n >= 2), D_n (n >= 4) up to rank 8.
  static TypeLabel parse(std::string_view label);
  std::string str() const;
  bool operator==(const TypeLabel&) const = default;
};

/// An element of the Weyl group. `matrix` acts on the Euclidean realization,
/// `weight_action` acts on Dynkin labels; both are column-vector conventions.
struct WeylElement {
  Eigen::MatrixXd matrix;
  Eigen::MatrixXi weight_action;
  std::vector<int> word;
  int sign = 1;
};

/// Combinatorial skeleton of a simple Lie algebra.
///
/// Conventions: Bourbaki numbering of simple roots, Cartan entries
/// A(i,j) = <alpha_i, alpha_j^vee> = 2(alpha_i, alpha_j)/(alpha_j, alpha_j),
/// long roots have squared length 2. The Euclidean realization is the
/// Cholesky factor of the Gram matrix of simple roots, so vectors live in R^rank.
class RootSystem {
 public:
  static RootSystem build(std::string_view type_label);
  static RootSystem build(const TypeLabel& type);

  const TypeLabel& type() const { return type_; }
  std::string label() const { return type_.str(); }
  int rank() const { return type_.rank; }

  const IntMatrix& cartan_matrix() const { return cartan_; }
  /// Rows are simple roots in the Euclidean realization.
  const Eigen::MatrixXd& simple_roots() const { return simple_roots_; }
  /// Rows are positive roots in the Euclidean realization, ordered by height.
  const Eigen::MatrixXd& positive_roots() const { return positive_roots_; }
  /// Positive roots as integer coefficient vectors over the simple roots.
  const std::vector<IntVector>& positive_roots_simple() const { return positive_roots_simple_; }
  /// Positive coroots as integer coefficient vectors over the simple coroots.
  const std::vector<IntVector>& positive_coroots_simple() const { return positive_coroots_simple_; }
  /// Rows are fundamental weights in the Euclidean realization.
  const Eigen::MatrixXd& fundamental_weights() const { return fundamental_weights_; }
  const Eigen::VectorXd& weyl_vector() const { return weyl_vector_; }
  /// Squared lengths of simple roots (2 for long roots).
  const std::vector<double>& simple_root_squared_lengths() const { return squared_lengths_; }

  std::size_t num_positive_roots() const { return positive_roots_simple_.size(); }
  /// rank + 2 * (number of positive roots).
  int algebra_dimension() const;
  int dual_coxeter_number() const;
  /// Closed-form Weyl group order for the type.
  std::size_t weyl_group_order() const;

  /// Dynkin labels of the simple root alpha_i (row i of the Cartan matrix).
  Weight simple_root_weight(int i) const;
  /// Dynkin labels of an integer combination of simple roots.
  Weight weight_from_simple_coords(const IntVector& coords) const;
  /// Simple-root coordinates of a root-lattice weight; nullopt otherwise.
  std::optional<IntVector> simple_coords(const Weight& w) const;

  Eigen::VectorXd to_euclidean(const Weight& w) const;
  /// Scaled symmetric form: (mu, nu) * form_scale() is an exact integer.
  std::int64_t scaled_inner_product(const Weight& mu, const Weight& nu) const;
  std::int64_t form_scale() const { return form_scale_; }

  /// Simple reflection s_i on Dynkin labels.
  Weight reflect(const Weight& w, int i) const;
  /// Dominant representative of the Weyl orbit of w.
  Weight dominant_representative(Weight w) const;
  /// The Weyl orbit of w (sorted).
  std::vector<Weight> weyl_orbit(const Weight& w) const;

  /// Sum of Dynkin labels; the level used to bound weight enumerations.
  int level(const Weight& w) const;

 private:
  RootSystem() = default;

  TypeLabel type_;
  IntMatrix cartan_;
  IntMatrix cartan_t_adjugate_;
  std::int64_t cartan_det_ = 1;
  std::vector<int> length_ratio_;  // squared length of alpha_i over the shortest
  std::vector<double> squared_lengths_;
  Eigen::MatrixXd simple_roots_;
  Eigen::MatrixXd positive_roots_;
  std::vector<IntVector> positive_roots_simple_;
  std::vector<IntVector> positive_coroots_simple_;
  Eigen::MatrixXd fundamental_weights_;
  Eigen::VectorXd weyl_vector_;
  IntMatrix scaled_form_;  // (omega_i, omega_j) * form_scale_
  std::int64_t form_scale_ = 1;
};

/// Enumerates W by closure of the simple reflections. Throws CapacityError if
/// the closure grows beyond `cap` elements.
std::vector<WeylElement> generate_weyl_group(const RootSystem& rs, std::size_t cap = 50000);

bool is_in_root_lattice(const RootSystem& rs, const Weight& lambda);

/// Dominant root-lattice weights with level <= bound, in lexicographic order.
std::vector<Weight> enumerate_adjoint_dominant_weights(const RootSystem& rs, int bound);

nlohmann::json to_json(const RootSystem& rs);

}  // namespace lielab
