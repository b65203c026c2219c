#pragma once

#include <Eigen/Dense>

namespace lielab {

struct LpSolution {
  enum class Status { Optimal, Infeasible, Unbounded, IterationLimit };
  Status status = Status::Infeasible;
  Eigen::VectorXd x;
  double objective = 0.0;
};

/// maximize c^T x subject to A x = b, x >= 0.
///
/// Dense two-phase tableau simplex with Bland's rule. Intended for the small
/// feasibility problems of the hull certificates (a few hundred columns).
LpSolution maximize_standard_form(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, const Eigen::VectorXd& c,
                                  double tol = 1e-11);

}  // namespace lielab
