#include "lielab/linear_program.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "lielab/errors.hpp"

namespace lielab {

namespace {

class Tableau {
 public:
  Tableau(Eigen::Index rows, Eigen::Index cols) : t_(Eigen::MatrixXd::Zero(rows + 1, cols + 1)), basis_(rows, -1) {}

  Eigen::MatrixXd& data() { return t_; }
  std::vector<Eigen::Index>& basis() { return basis_; }
  Eigen::Index rows() const { return t_.rows() - 1; }
  Eigen::Index rhs() const { return t_.cols() - 1; }

  void pivot(Eigen::Index r, Eigen::Index c) {
    t_.row(r) /= t_(r, c);
    for (Eigen::Index i = 0; i < t_.rows(); ++i) {
      if (i == r) continue;
      const double f = t_(i, c);
      if (f != 0.0) t_.row(i) -= f * t_.row(r);
    }
    basis_[static_cast<std::size_t>(r)] = c;
  }

  /// Runs simplex iterations on the objective row; entering columns limited to [0, allowed).
  LpSolution::Status optimize(Eigen::Index allowed, double tol) {
    const Eigen::Index obj = rows();
    for (int iter = 0; iter < 100000; ++iter) {
      Eigen::Index enter = -1;
      for (Eigen::Index j = 0; j < allowed; ++j) {
        if (t_(obj, j) < -tol) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return LpSolution::Status::Optimal;
      Eigen::Index leave = -1;
      double best = std::numeric_limits<double>::infinity();
      for (Eigen::Index i = 0; i < obj; ++i) {
        const double a = t_(i, enter);
        if (a <= tol) continue;
        const double ratio = t_(i, rhs()) / a;
        if (ratio < best - 1e-15 ||
            (std::abs(ratio - best) <= 1e-15 && leave >= 0 &&
             basis_[static_cast<std::size_t>(i)] < basis_[static_cast<std::size_t>(leave)])) {
          best = ratio;
          leave = i;
        }
      }
      if (leave < 0) return LpSolution::Status::Unbounded;
      pivot(leave, enter);
    }
    return LpSolution::Status::IterationLimit;
  }

 private:
  Eigen::MatrixXd t_;
  std::vector<Eigen::Index> basis_;
};

}  // namespace

LpSolution maximize_standard_form(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, const Eigen::VectorXd& c,
                                  double tol) {
  const Eigen::Index m = a.rows();
  const Eigen::Index n = a.cols();
  if (b.size() != m || c.size() != n) throw PreconditionError("maximize_standard_form: dimension mismatch");

  Tableau tab(m, n + m);
  Eigen::MatrixXd& t = tab.data();
  for (Eigen::Index i = 0; i < m; ++i) {
    const double sign = b(i) < 0 ? -1.0 : 1.0;
    t.row(i).head(n) = sign * a.row(i);
    t(i, n + i) = 1.0;
    t(i, tab.rhs()) = sign * b(i);
    tab.basis()[static_cast<std::size_t>(i)] = n + i;
  }

  // Phase 1: maximize -sum(artificials).
  for (Eigen::Index i = 0; i < m; ++i) t.row(m) -= t.row(i);
  for (Eigen::Index i = 0; i < m; ++i) t(m, n + i) = 0.0;
  LpSolution out;
  auto status = tab.optimize(n + m, tol);
  if (status == LpSolution::Status::IterationLimit) {
    out.status = status;
    return out;
  }
  const double scale = std::max(1.0, b.cwiseAbs().maxCoeff());
  if (t(m, tab.rhs()) < -1e-9 * scale) {
    out.status = LpSolution::Status::Infeasible;
    return out;
  }
  // Drive artificials out of the basis where possible.
  for (Eigen::Index i = 0; i < m; ++i) {
    if (tab.basis()[static_cast<std::size_t>(i)] < n) continue;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (std::abs(t(i, j)) > 1e-9) {
        tab.pivot(i, j);
        break;
      }
    }
  }

  // Phase 2.
  t.row(m).setZero();
  t.row(m).head(n) = -c.transpose();
  for (Eigen::Index i = 0; i < m; ++i) {
    const Eigen::Index bj = tab.basis()[static_cast<std::size_t>(i)];
    if (bj < n && t(m, bj) != 0.0) t.row(m) -= t(m, bj) * t.row(i);
  }
  status = tab.optimize(n, tol);
  out.status = status;
  if (status != LpSolution::Status::Optimal) return out;
  out.x = Eigen::VectorXd::Zero(n);
  for (Eigen::Index i = 0; i < m; ++i) {
    const Eigen::Index bj = tab.basis()[static_cast<std::size_t>(i)];
    if (bj < n) out.x(bj) = std::max(0.0, t(i, tab.rhs()));
  }
  out.objective = c.dot(out.x);
  return out;
}

}  // namespace lielab
