#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "diffield/mpoly.hpp"

namespace diffield {

/// Sparse vector as (index, value) pairs sorted by index, no zeros.
using SparseVec = std::vector<std::pair<std::size_t, Rat>>;

struct LinearSolution {
  bool consistent = true;
  /// Particular solution with every free unknown set to zero.
  SparseVec particular;
  /// Kernel basis, one vector per free column in increasing column order.
  /// Each vector has a 1 at its free column and zeros at the other free columns.
  std::vector<SparseVec> kernel;
  std::vector<std::size_t> pivots;
};

/// Exact Gauss-Jordan elimination over Q.
///
/// Unknowns are columns 0..ncols-1. When `augmented` is set, column `ncols`
/// holds the right-hand side of each row. Rows are consumed in the given
/// order, and the reduced row echelon form is unique, so the result does not
/// depend on the order of rows.
LinearSolution solve_sparse(std::size_t ncols, std::vector<SparseVec> rows, bool augmented);

/// Rank of a dense matrix over Q.
std::size_t rank(std::vector<std::vector<Rat>> rows);

}  // namespace diffield
