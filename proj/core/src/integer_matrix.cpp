#include "lielab/integer_matrix.hpp"

#include <cstdlib>
#include <utility>

#include "lielab/errors.hpp"

namespace lielab {

std::int64_t integer_determinant(const IntMatrix& input) {
  const std::size_t n = input.size();
  if (n == 0) return 1;
  std::vector<std::vector<Int128>> a(n, std::vector<Int128>(n));
  for (std::size_t i = 0; i < n; ++i) {
    if (input[i].size() != n) throw PreconditionError("integer_determinant: matrix is not square");
    for (std::size_t j = 0; j < n; ++j) a[i][j] = input[i][j];
  }
  int sign = 1;
  Int128 prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && a[swap_row][k] == 0) ++swap_row;
      if (swap_row == n) return 0;
      std::swap(a[k], a[swap_row]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
      }
    }
    prev = a[k][k];
  }
  return static_cast<std::int64_t>(sign * a[n - 1][n - 1]);
}

IntMatrix transpose(const IntMatrix& m) {
  if (m.empty()) return {};
  IntMatrix t(m[0].size(), IntVector(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[i].size(); ++j) t[j][i] = m[i][j];
  return t;
}

IntMatrix integer_adjugate(const IntMatrix& m) {
  const std::size_t n = m.size();
  IntMatrix adj(n, IntVector(n, 0));
  if (n == 1) {
    adj[0][0] = 1;
    return adj;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      IntMatrix minor;
      minor.reserve(n - 1);
      for (std::size_t r = 0; r < n; ++r) {
        if (r == i) continue;
        IntVector row;
        row.reserve(n - 1);
        for (std::size_t c = 0; c < n; ++c)
          if (c != j) row.push_back(m[r][c]);
        minor.push_back(std::move(row));
      }
      const std::int64_t cofactor = ((i + j) % 2 == 0 ? 1 : -1) * integer_determinant(minor);
      adj[j][i] = cofactor;
    }
  }
  return adj;
}

std::optional<IntVector> solve_integer_system(const IntMatrix& m, const IntVector& b) {
  const std::size_t n = m.size();
  if (b.size() != n) throw PreconditionError("solve_integer_system: dimension mismatch");
  const std::int64_t det = integer_determinant(m);
  if (det == 0) return std::nullopt;
  const IntMatrix adj = integer_adjugate(m);
  IntVector x(n);
  for (std::size_t i = 0; i < n; ++i) {
    Int128 acc = 0;
    for (std::size_t j = 0; j < n; ++j) acc += static_cast<Int128>(adj[i][j]) * b[j];
    if (acc % det != 0) return std::nullopt;
    x[i] = static_cast<std::int64_t>(acc / det);
  }
  return x;
}

}  // namespace lielab
