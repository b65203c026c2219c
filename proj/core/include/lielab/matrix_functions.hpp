#pragma once

#include <Eigen/Dense>

namespace lielab {

/// Matrix exponential by scaling and squaring with the degree-13 Pade
/// approximant (Higham 2005). Backward error below unit roundoff.
Eigen::MatrixXd matrix_exp(const Eigen::MatrixXd& a);

/// Principal logarithm of a real orthogonal matrix via the complex Schur form.
/// Throws LogRadiusError if an eigenvalue lies within `branch_tol` of the
/// negative real axis, and PreconditionError if `m` is not orthogonal.
Eigen::MatrixXd orthogonal_log(const Eigen::MatrixXd& m, double branch_tol = 1e-7);

/// Largest |Im lambda| over eigenvalues of a real antisymmetric matrix.
double antisymmetric_spectral_radius(const Eigen::MatrixXd& a);

}  // namespace lielab
