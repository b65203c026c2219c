#include "lielab/adjoint.hpp"

#include <Eigen/SVD>
#include <array>
#include <cmath>
#include <complex>
#include <nlohmann/json.hpp>

#include "lielab/errors.hpp"
#include "lielab/matrix_functions.hpp"

namespace lielab {

namespace {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;

const Complex kI{0.0, 1.0};

double frobenius_inner(const CMatrix& a, const CMatrix& b) { return (a.adjoint() * b).trace().real(); }

/// Modified Gram-Schmidt under the real Frobenius inner product; drops
/// candidates that are dependent on earlier ones.
std::vector<CMatrix> orthonormalize(const std::vector<CMatrix>& candidates) {
  std::vector<CMatrix> out;
  for (CMatrix v : candidates) {
    for (const CMatrix& u : out) v -= frobenius_inner(u, v) * u;
    const double norm = std::sqrt(frobenius_inner(v, v));
    if (norm > 1e-10) out.push_back(v / norm);
  }
  return out;
}

CMatrix unit(int n, int k, int l) {
  CMatrix m = CMatrix::Zero(n, n);
  m(k, l) = 1.0;
  return m;
}

std::vector<CMatrix> special_unitary_basis(int n) {
  std::vector<CMatrix> c;
  for (int k = 0; k < n; ++k) {
    for (int l = k + 1; l < n; ++l) {
      c.push_back(unit(n, k, l) - unit(n, l, k));
      c.push_back(kI * (unit(n, k, l) + unit(n, l, k)));
    }
  }
  for (int k = 0; k + 1 < n; ++k) c.push_back(kI * (unit(n, k, k) - unit(n, k + 1, k + 1)));
  return orthonormalize(c);
}

std::vector<CMatrix> unitary_basis(int n) {
  auto c = special_unitary_basis(n);
  c.push_back(kI * CMatrix::Identity(n, n));
  return orthonormalize(c);
}

std::vector<CMatrix> orthogonal_basis(int n) {
  std::vector<CMatrix> c;
  for (int k = 0; k < n; ++k)
    for (int l = k + 1; l < n; ++l) c.push_back(unit(n, k, l) - unit(n, l, k));
  return orthonormalize(c);
}

/// Subspace of span(candidates) annihilated by a real-linear constraint map.
template <typename Constraint>
std::vector<CMatrix> kernel_subspace(const std::vector<CMatrix>& candidates, Constraint constraint) {
  const auto k = static_cast<Eigen::Index>(candidates.size());
  Eigen::VectorXd first = constraint(candidates.front());
  Eigen::MatrixXd c(first.size(), k);
  for (Eigen::Index j = 0; j < k; ++j) c.col(j) = constraint(candidates[static_cast<std::size_t>(j)]);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(c, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double tol = 1e-10 * std::max(1.0, sv.size() ? sv(0) : 1.0);
  std::vector<CMatrix> out;
  for (Eigen::Index j = 0; j < k; ++j) {
    const double s = j < sv.size() ? sv(j) : 0.0;
    if (s > tol) continue;
    CMatrix m = CMatrix::Zero(candidates.front().rows(), candidates.front().cols());
    for (Eigen::Index i = 0; i < k; ++i) m += svd.matrixV()(i, j) * candidates[static_cast<std::size_t>(i)];
    out.push_back(m);
  }
  return orthonormalize(out);
}

std::vector<CMatrix> compact_symplectic_basis(int n) {
  const int size = 2 * n;
  CMatrix j = CMatrix::Zero(size, size);
  j.topRightCorner(n, n) = CMatrix::Identity(n, n);
  j.bottomLeftCorner(n, n) = -CMatrix::Identity(n, n);
  auto constraint = [&](const CMatrix& x) {
    CMatrix r = x.transpose() * j + j * x;
    Eigen::VectorXd v(2 * r.size());
    for (Eigen::Index i = 0; i < r.size(); ++i) {
      v(2 * i) = r(i).real();
      v(2 * i + 1) = r(i).imag();
    }
    return v;
  };
  return kernel_subspace(unitary_basis(size), constraint);
}

/// Derivations of the octonions inside so(7): the stabilizer of the
/// associative 3-form e^123 + e^145 + e^167 + e^246 - e^257 - e^347 - e^356.
std::vector<CMatrix> g2_basis() {
  std::array<std::array<std::array<double, 7>, 7>, 7> phi{};
  const int triples[7][3] = {{1, 2, 3}, {1, 4, 5}, {1, 6, 7}, {2, 4, 6}, {2, 5, 7}, {3, 4, 7}, {3, 5, 6}};
  const double signs[7] = {1, 1, 1, 1, -1, -1, -1};
  for (int t = 0; t < 7; ++t) {
    const int a = triples[t][0] - 1, b = triples[t][1] - 1, c = triples[t][2] - 1;
    const double s = signs[t];
    phi[a][b][c] = s;
    phi[b][c][a] = s;
    phi[c][a][b] = s;
    phi[b][a][c] = -s;
    phi[a][c][b] = -s;
    phi[c][b][a] = -s;
  }
  auto constraint = [&](const CMatrix& xm) {
    Eigen::MatrixXd d = xm.real();
    Eigen::VectorXd v(35);
    int idx = 0;
    for (int a = 0; a < 7; ++a)
      for (int b = a + 1; b < 7; ++b)
        for (int c = b + 1; c < 7; ++c) {
          double acc = 0.0;
          for (int e = 0; e < 7; ++e) acc += d(e, a) * phi[e][b][c] + d(e, b) * phi[a][e][c] + d(e, c) * phi[a][b][e];
          v(idx++) = acc;
        }
    return v;
  };
  return kernel_subspace(orthogonal_basis(7), constraint);
}

std::vector<CMatrix> realization_for(const TypeLabel& t) {
  switch (t.family) {
    case Family::A: return special_unitary_basis(t.rank + 1);
    case Family::B: return orthogonal_basis(2 * t.rank + 1);
    case Family::C: return compact_symplectic_basis(t.rank);
    case Family::D: return orthogonal_basis(2 * t.rank);
    case Family::G: return g2_basis();
  }
  throw UnsupportedTypeError("no matrix realization for " + t.str());
}

}  // namespace

CompactAlgebra CompactAlgebra::build(const RootSystem& rs) {
  CompactAlgebra alg;
  alg.type_label_ = rs.label();
  alg.rank_ = rs.rank();
  std::vector<CMatrix> basis = realization_for(rs.type());
  const int dim = static_cast<int>(basis.size());
  if (dim != rs.algebra_dimension())
    throw Error("compact form of " + rs.label() + " has dimension " + std::to_string(dim) + ", expected " +
                std::to_string(rs.algebra_dimension()));
  alg.dim_ = dim;

  // Structure constants in the trace-orthonormal basis.
  std::vector<Eigen::MatrixXd> ad(dim, Eigen::MatrixXd::Zero(dim, dim));
  for (int i = 0; i < dim; ++i) {
    for (int j = i + 1; j < dim; ++j) {
      const CMatrix br = basis[i] * basis[j] - basis[j] * basis[i];
      for (int k = 0; k < dim; ++k) {
        double c = frobenius_inner(basis[k], br);
        if (std::abs(c) < 1e-14) c = 0.0;
        ad[i](k, j) = c;
        ad[j](k, i) = -c;
      }
    }
  }

  // The Killing form is a negative multiple of the trace form on a simple algebra.
  const double s = -(ad[0] * ad[0]).trace();
  const double killing_scale = 2.0 * rs.dual_coxeter_number();
  const double scale = std::sqrt(killing_scale / s);
  for (auto& m : ad) m *= scale;
  for (auto& m : basis) m *= scale;

  alg.killing_scale_ = killing_scale;
  alg.realization_scale_ = scale;
  alg.ad_basis_ = std::move(ad);
  alg.realization_ = std::move(basis);

  const Eigen::MatrixXd gram = alg.killing_gram();
  const double dev = (gram + killing_scale * Eigen::MatrixXd::Identity(dim, dim)).cwiseAbs().maxCoeff();
  if (dev > 1e-9 * killing_scale) throw Error("compact form: Killing form is not proportional to the trace form");
  return alg;
}

Eigen::MatrixXd CompactAlgebra::ad(const AlgebraVector& x) const {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim_, dim_);
  for (int i = 0; i < dim_; ++i)
    if (x(i) != 0.0) m += x(i) * ad_basis_[i];
  return m;
}

AlgebraVector CompactAlgebra::bracket(const AlgebraVector& x, const AlgebraVector& y) const { return ad(x) * y; }

double CompactAlgebra::killing_form(const AlgebraVector& x, const AlgebraVector& y) const {
  return (ad(x) * ad(y)).trace();
}

Eigen::MatrixXd CompactAlgebra::killing_gram() const {
  Eigen::MatrixXd g(dim_, dim_);
  for (int i = 0; i < dim_; ++i)
    for (int j = i; j < dim_; ++j) g(i, j) = g(j, i) = (ad_basis_[i] * ad_basis_[j]).trace();
  return g;
}

AdjointMatrix CompactAlgebra::group_exp(const AlgebraVector& x) const { return matrix_exp(ad(x)); }

AlgebraVector CompactAlgebra::group_log(const AdjointMatrix& m) const {
  const Eigen::MatrixXd l = orthogonal_log(m);
  AlgebraVector x(dim_);
  // ||ad e_i||_F^2 = -kappa(e_i, e_i) = killing_scale.
  for (int i = 0; i < dim_; ++i) x(i) = (l.cwiseProduct(ad_basis_[i])).sum() / killing_scale_;
  const double residual = (ad(x) - l).norm();
  if (residual > 1e-7 * std::max(1.0, l.norm()))
    throw PreconditionError("group_log: logarithm is not in ad(g); input is not an adjoint group element");
  return x;
}

double CompactAlgebra::jacobi_residual() const {
  double worst = 0.0;
  for (int i = 0; i < dim_; ++i) {
    for (int j = i + 1; j < dim_; ++j) {
      Eigen::MatrixXd lhs = ad_basis_[i] * ad_basis_[j] - ad_basis_[j] * ad_basis_[i];
      for (int k = 0; k < dim_; ++k) {
        const double c = structure_constant(i, j, k);
        if (c != 0.0) lhs -= c * ad_basis_[k];
      }
      worst = std::max(worst, lhs.cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

AlgebraVector CompactAlgebra::from_matrix(const Eigen::MatrixXcd& m) const {
  AlgebraVector x(dim_);
  const double norm2 = realization_scale_ * realization_scale_;
  for (int i = 0; i < dim_; ++i) x(i) = frobenius_inner(realization_[i], m) / norm2;
  return x;
}

Eigen::MatrixXcd CompactAlgebra::to_matrix(const AlgebraVector& x) const {
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(realization_.front().rows(), realization_.front().cols());
  for (int i = 0; i < dim_; ++i) m += x(i) * realization_[i];
  return m;
}

AlgebraVector CompactAlgebra::random_unit(Rng& rng) const {
  std::normal_distribution<double> gauss;
  AlgebraVector x(dim_);
  do {
    for (int i = 0; i < dim_; ++i) x(i) = gauss(rng);
  } while (x.norm() < 1e-8);
  return x / x.norm();
}

AdjointMatrix random_group_element(const CompactAlgebra& alg, Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.5);
  AdjointMatrix g = AdjointMatrix::Identity(alg.dim(), alg.dim());
  for (int factor = 0; factor < 2; ++factor) {
    AlgebraVector x(alg.dim());
    for (int i = 0; i < alg.dim(); ++i) x(i) = gauss(rng);
    g = (g * alg.group_exp(x)).eval();
  }
  return g;
}

bool is_adjoint_matrix(const AdjointMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  const double orth = (m.transpose() * m - Eigen::MatrixXd::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff();
  return orth <= tol && std::abs(m.determinant() - 1.0) <= tol;
}

nlohmann::json to_json(const CompactAlgebra& alg) {
  nlohmann::json constants = nlohmann::json::array();
  for (int i = 0; i < alg.dim(); ++i)
    for (int j = i + 1; j < alg.dim(); ++j)
      for (int k = 0; k < alg.dim(); ++k) {
        const double c = alg.structure_constant(i, j, k);
        if (c != 0.0) constants.push_back({i, j, k, c});
      }
  return {{"schema", 1},
          {"type", alg.type_label()},
          {"dim", alg.dim()},
          {"killing_scale", alg.killing_scale()},
          {"structure_constants", constants}};
}

}  // namespace lielab
