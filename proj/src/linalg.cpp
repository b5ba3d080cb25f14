#include "freering/linalg.hpp"

#include <map>

namespace freering {

namespace {

// row - factor * pivot, both sorted by column.
SparseRow axpy(const SparseRow& row, const Rational& factor, const SparseRow& pivot) {
  SparseRow out;
  out.reserve(row.size() + pivot.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < row.size() || j < pivot.size()) {
    if (j == pivot.size() || (i < row.size() && row[i].first < pivot[j].first)) {
      out.push_back(row[i++]);
    } else if (i == row.size() || pivot[j].first < row[i].first) {
      out.emplace_back(pivot[j].first, -factor * pivot[j].second);
      ++j;
    } else {
      Rational v = row[i].second - factor * pivot[j].second;
      if (v != 0) out.emplace_back(row[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

struct Pivot {
  SparseRow row;  // leading entry is 1
  Rational rhs;
};

}  // namespace

std::optional<LinearSolution> solve_linear(const std::vector<SparseRow>& rows,
                                           const std::vector<Rational>& rhs,
                                           std::size_t columns) {
  std::map<std::size_t, Pivot> pivots;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    SparseRow row;
    for (const auto& e : rows[r]) {
      if (e.second != 0) row.push_back(e);
    }
    Rational b = rhs[r];
    while (!row.empty()) {
      auto it = pivots.find(row.front().first);
      if (it == pivots.end()) {
        const Rational lead = row.front().second;
        for (auto& e : row) e.second /= lead;
        b /= lead;
        const std::size_t col = row.front().first;
        pivots.emplace(col, Pivot{std::move(row), std::move(b)});
        row.clear();
        b = 0;
        break;
      }
      const Rational factor = row.front().second;
      row = axpy(row, factor, it->second.row);
      b -= factor * it->second.rhs;
    }
    if (row.empty() && b != 0) return std::nullopt;
  }

  LinearSolution sol;
  sol.values.assign(columns, Rational(0));
  sol.nullity = columns - pivots.size();
  for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
    Rational v = it->second.rhs;
    const auto& row = it->second.row;
    for (std::size_t k = 1; k < row.size(); ++k) v -= row[k].second * sol.values[row[k].first];
    sol.values[it->first] = v;
  }
  return sol;
}

}  // namespace freering
