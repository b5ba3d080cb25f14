#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "freering/rational.hpp"

namespace freering {

/// Sparse row: (column, value) pairs with strictly increasing columns.
using SparseRow = std::vector<std::pair<std::size_t, Rational>>;

struct LinearSolution {
  std::vector<Rational> values;
  /// Number of free columns; zero means the solution is unique.
  std::size_t nullity = 0;
};

/// Exact Gaussian elimination over Q for A x = b with `columns` unknowns.
/// Returns std::nullopt when the system is inconsistent; otherwise one
/// solution with every free variable set to zero.
std::optional<LinearSolution> solve_linear(const std::vector<SparseRow>& rows,
                                           const std::vector<Rational>& rhs,
                                           std::size_t columns);

}  // namespace freering
