#pragma once

#include <map>
#include <vector>

#include "cantorwave/rational.hpp"

namespace cantorwave {

/// Sparse row over exact rationals: column -> nonzero value.
using SparseRow = std::map<std::size_t, Rational>;

/// Exact nullspace of the matrix whose rows are given, with num_cols columns.
/// Rows are reduced incrementally into echelon form, then back-substituted to
/// reduced row echelon form; the returned basis has one vector per free
/// column (that entry is 1, other free entries 0). Result is deterministic.
std::vector<std::vector<Rational>> sparse_nullspace(const std::vector<SparseRow>& rows,
                                                    std::size_t num_cols);

/// Rank of the same system.
std::size_t sparse_rank(const std::vector<SparseRow>& rows, std::size_t num_cols);

}  // namespace cantorwave
