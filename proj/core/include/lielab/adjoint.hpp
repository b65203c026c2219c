#pragma once

#include <Eigen/Dense>
#include <nlohmann/json_fwd.hpp>
#include <string>
#include <vector>

#include "lielab/random.hpp"
#include "lielab/root_system.hpp"

namespace lielab {

/// Coordinates of an element of the compact Lie algebra in its orthonormal basis.
using AlgebraVector = Eigen::VectorXd;
/// Ad(g) written in the orthonormal basis of the algebra; an element of SO(dim).
using AdjointMatrix = Eigen::MatrixXd;

/// Compact real form of a simple Lie algebra with explicit structure constants.
///
/// The basis is orthonormal for <X, Y> = -kappa(X, Y) / (2 h^vee), where kappa is
/// the Killing form and h^vee the dual Coxeter number. Under this
/// normalization long roots, and hence long coroots, have squared length 2.
/// The "unit sphere" of the algebra always refers to this inner product.
class CompactAlgebra {
 public:
  static CompactAlgebra build(const RootSystem& rs);

  const std::string& type_label() const { return type_label_; }
  int dim() const { return dim_; }
  int rank() const { return rank_; }

  /// c_{ijk} with [e_i, e_j] = sum_k c_{ijk} e_k.
  double structure_constant(int i, int j, int k) const { return ad_basis_[i](k, j); }
  /// ad(e_i) as dim x dim matrices; each is antisymmetric.
  const std::vector<Eigen::MatrixXd>& ad_basis() const { return ad_basis_; }

  Eigen::MatrixXd ad(const AlgebraVector& x) const;
  AlgebraVector bracket(const AlgebraVector& x, const AlgebraVector& y) const;
  double killing_form(const AlgebraVector& x, const AlgebraVector& y) const;
  Eigen::MatrixXd killing_gram() const;
  /// kappa(X, Y) = -killing_scale() * <X, Y>.
  double killing_scale() const { return killing_scale_; }
  double inner(const AlgebraVector& x, const AlgebraVector& y) const { return x.dot(y); }
  double killing_norm(const AlgebraVector& x) const { return x.norm(); }

  /// exp(ad X).
  AdjointMatrix group_exp(const AlgebraVector& x) const;
  /// Inverse of group_exp on the principal branch (spectral radius of ad X < pi).
  /// Throws LogRadiusError outside that region.
  AlgebraVector group_log(const AdjointMatrix& m) const;
  AlgebraVector adjoint_action(const AdjointMatrix& g, const AlgebraVector& x) const { return g * x; }

  /// Largest componentwise violation of the Jacobi identity.
  double jacobi_residual() const;

  /// Basis matrices in the defining matrix realization (anti-Hermitian).
  const std::vector<Eigen::MatrixXcd>& realization() const { return realization_; }
  AlgebraVector from_matrix(const Eigen::MatrixXcd& m) const;
  Eigen::MatrixXcd to_matrix(const AlgebraVector& x) const;

  AlgebraVector random_unit(Rng& rng) const;

 private:
  CompactAlgebra() = default;

  std::string type_label_;
  int dim_ = 0;
  int rank_ = 0;
  double killing_scale_ = 1.0;
  double realization_scale_ = 1.0;
  std::vector<Eigen::MatrixXd> ad_basis_;
  std::vector<Eigen::MatrixXcd> realization_;
};

/// Approximately Haar-distributed group element: a product of exponentials of
/// Gaussian algebra elements.
AdjointMatrix random_group_element(const CompactAlgebra& alg, Rng& rng);

/// Orthogonality and unit determinant, each to `tol`.
bool is_adjoint_matrix(const AdjointMatrix& m, double tol = 1e-9);

nlohmann::json to_json(const CompactAlgebra& alg);

}  // namespace lielab
