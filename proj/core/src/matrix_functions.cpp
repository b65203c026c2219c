#include "lielab/matrix_functions.hpp"

#include <Eigen/Eigenvalues>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>

#include "lielab/errors.hpp"

namespace lielab {

Eigen::MatrixXd matrix_exp(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols()) throw PreconditionError("matrix_exp: matrix is not square");
  const Eigen::Index n = a.rows();
  if (n == 0) return a;
  static constexpr std::array<double, 14> b = {64764752532480000.0,
                                               32382376266240000.0,
                                               7771770303897600.0,
                                               1187353796428800.0,
                                               129060195264000.0,
                                               10559470521600.0,
                                               670442572800.0,
                                               33522128640.0,
                                               1323241920.0,
                                               40840800.0,
                                               960960.0,
                                               16380.0,
                                               182.0,
                                               1.0};
  constexpr double theta13 = 5.371920351148152;

  const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
  int s = 0;
  if (norm1 > theta13) s = std::max(0, static_cast<int>(std::ceil(std::log2(norm1 / theta13))));
  const Eigen::MatrixXd as = a / std::ldexp(1.0, s);

  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
  const Eigen::MatrixXd a2 = as * as;
  const Eigen::MatrixXd a4 = a2 * a2;
  const Eigen::MatrixXd a6 = a4 * a2;
  const Eigen::MatrixXd u =
      as * (a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id);
  const Eigen::MatrixXd v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;
  Eigen::MatrixXd r = (v - u).partialPivLu().solve(v + u);
  for (int k = 0; k < s; ++k) r = (r * r).eval();
  return r;
}

Eigen::MatrixXd orthogonal_log(const Eigen::MatrixXd& m, double branch_tol) {
  const Eigen::Index n = m.rows();
  if (m.cols() != n) throw PreconditionError("orthogonal_log: matrix is not square");
  const double orth_err = (m.transpose() * m - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff();
  if (orth_err > 1e-8) throw PreconditionError("orthogonal_log: matrix is not orthogonal");

  // A normal matrix has a diagonal Schur form up to rounding.
  Eigen::ComplexSchur<Eigen::MatrixXcd> schur(m.cast<std::complex<double>>());
  const Eigen::MatrixXcd& t = schur.matrixT();
  const Eigen::MatrixXcd& q = schur.matrixU();
  Eigen::VectorXcd logs(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const std::complex<double> lambda = t(i, i);
    const double angle = std::arg(lambda);
    if (std::numbers::pi - std::abs(angle) < branch_tol)
      throw LogRadiusError("orthogonal_log: eigenvalue near -1 (angle " + std::to_string(angle) +
                           "); input lies outside the principal branch");
    logs(i) = {std::log(std::abs(lambda)), angle};
  }
  Eigen::MatrixXcd l = q * logs.asDiagonal() * q.adjoint();
  Eigen::MatrixXd out = l.real();
  return 0.5 * (out - out.transpose());
}

double antisymmetric_spectral_radius(const Eigen::MatrixXd& a) {
  if (a.size() == 0) return 0.0;
  // eigenvalues of A^T A = -A^2 are |Im lambda|^2.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a.transpose() * a, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

}  // namespace lielab
