#include "cantorwave/sparse_nullspace.hpp"

#include <stdexcept>

namespace cantorwave {

namespace {

// row -= factor * pivot, dropping cancelled entries.
void axpy(SparseRow& row, const Rational& factor, const SparseRow& pivot) {
  for (const auto& [c, v] : pivot) {
    auto [it, inserted] = row.try_emplace(c, -factor * v);
    if (!inserted) {
      it->second -= factor * v;
      if (sgn(it->second) == 0) row.erase(it);
    }
  }
}

// Echelon form: pivot column -> normalized row whose leading entry is 1 at that column.
std::map<std::size_t, SparseRow> echelon(const std::vector<SparseRow>& rows, std::size_t num_cols) {
  std::map<std::size_t, SparseRow> pivots;
  for (const auto& input : rows) {
    SparseRow row;
    for (const auto& [c, v] : input) {
      if (c >= num_cols) throw std::out_of_range("sparse_nullspace: column index out of range");
      if (sgn(v) != 0) row.emplace(c, v);
    }
    // Eliminate leading entries that hit existing pivots; leading column only grows.
    while (!row.empty()) {
      auto lead = row.begin();
      auto p = pivots.find(lead->first);
      if (p == pivots.end()) break;
      const Rational factor = lead->second;
      axpy(row, factor, p->second);
    }
    if (row.empty()) continue;
    const Rational lead = row.begin()->second;
    for (auto& [c, v] : row) v /= lead;
    pivots.emplace(row.begin()->first, std::move(row));
  }
  return pivots;
}

}  // namespace

std::size_t sparse_rank(const std::vector<SparseRow>& rows, std::size_t num_cols) {
  return echelon(rows, num_cols).size();
}

std::vector<std::vector<Rational>> sparse_nullspace(const std::vector<SparseRow>& rows,
                                                    std::size_t num_cols) {
  auto pivots = echelon(rows, num_cols);

  // Back-substitute from the last pivot so every pivot row is free of other pivot columns.
  for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
    SparseRow& row = it->second;
    for (;;) {
      bool changed = false;
      for (auto e = std::next(row.begin()); e != row.end(); ++e) {
        auto p = pivots.find(e->first);
        if (p == pivots.end()) continue;
        const Rational factor = e->second;
        axpy(row, factor, p->second);
        changed = true;
        break;
      }
      if (!changed) break;
    }
  }

  std::vector<std::vector<Rational>> basis;
  for (std::size_t free = 0; free < num_cols; ++free) {
    if (pivots.count(free)) continue;
    std::vector<Rational> v(num_cols, Rational(0));
    v[free] = 1;
    for (const auto& [pc, row] : pivots) {
      auto e = row.find(free);
      if (e != row.end()) v[pc] = -e->second;
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace cantorwave
