#pragma once

// Exact integer linear algebra for the small Cartan-type matrices used by the
// root system code. Everything here is fraction-free.

#include <cstdint>
#include <optional>
#include <vector>

namespace lielab {

/// 128-bit intermediate for overflow-free products of 64-bit entries.
__extension__ typedef __int128 Int128;

using IntMatrix = std::vector<std::vector<std::int64_t>>;
using IntVector = std::vector<std::int64_t>;

/// Determinant by Bareiss elimination. Exact for entries that keep
/// intermediate minors within 64 bits (always true for rank <= 8 Cartan data).
std::int64_t integer_determinant(const IntMatrix& m);

/// Adjugate matrix, so that m * adj(m) = det(m) * I.
IntMatrix integer_adjugate(const IntMatrix& m);

IntMatrix transpose(const IntMatrix& m);

/// Solves m x = b over the integers. Returns nullopt when m is singular or the
/// unique rational solution has a non-integral component.
std::optional<IntVector> solve_integer_system(const IntMatrix& m, const IntVector& b);

}  // namespace lielab
