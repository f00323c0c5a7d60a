#include "diffield/linsolve.hpp"

#include <algorithm>
#include <optional>

namespace diffield {

namespace {

// row - factor * pivot, both sorted by column.
SparseVec axpy(const SparseVec& row, const Rat& factor, const SparseVec& pivot) {
  SparseVec out;
  out.reserve(row.size() + pivot.size());
  std::size_t i = 0, j = 0;
  while (i < row.size() || j < pivot.size()) {
    if (j == pivot.size() || (i < row.size() && row[i].first < pivot[j].first)) {
      out.push_back(row[i++]);
    } else if (i == row.size() || pivot[j].first < row[i].first) {
      out.emplace_back(pivot[j].first, -factor * pivot[j].second);
      ++j;
    } else {
      Rat v = row[i].second - factor * pivot[j].second;
      if (v != 0) out.emplace_back(row[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

LinearSolution solve_sparse(std::size_t ncols, std::vector<SparseVec> rows, bool augmented) {
  const std::size_t width = ncols + (augmented ? 1 : 0);
  std::vector<std::optional<SparseVec>> pivot(width);

  for (auto& r : rows) {
    SparseVec row = std::move(r);
    while (!row.empty()) {
      const std::size_t c = row.front().first;
      if (pivot[c]) {
        Rat f = row.front().second;
        row = axpy(row, f, *pivot[c]);
        continue;
      }
      if (row.front().second != 1) {
        Rat inv = Rat(1) / row.front().second;
        for (auto& e : row) e.second *= inv;
      }
      pivot[c] = std::move(row);
      break;
    }
  }

  LinearSolution sol;
  if (augmented && pivot[ncols]) {
    sol.consistent = false;
    return sol;
  }

  // Back substitution to reduced row echelon form.
  for (std::size_t c = ncols; c-- > 0;) {
    if (!pivot[c]) continue;
    SparseVec& row = *pivot[c];
    std::size_t i = 1;
    while (i < row.size()) {
      const std::size_t col = row[i].first;
      if (col < ncols && pivot[col]) {
        Rat f = row[i].second;
        row = axpy(row, f, *pivot[col]);
      } else {
        ++i;
      }
    }
  }

  std::vector<std::size_t> free_index(ncols, ncols);
  std::size_t nfree = 0;
  for (std::size_t c = 0; c < ncols; ++c) {
    if (pivot[c]) {
      sol.pivots.push_back(c);
    } else {
      free_index[c] = nfree++;
    }
  }
  sol.kernel.resize(nfree);
  for (std::size_t c = 0; c < ncols; ++c) {
    if (!pivot[c]) sol.kernel[free_index[c]].emplace_back(c, Rat(1));
  }
  for (std::size_t c : sol.pivots) {
    for (const auto& [col, val] : *pivot[c]) {
      if (col == c) continue;
      if (col == ncols) {
        sol.particular.emplace_back(c, val);
      } else {
        sol.kernel[free_index[col]].emplace_back(c, -val);
      }
    }
  }
  for (auto& k : sol.kernel)
    std::sort(k.begin(), k.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return sol;
}

std::size_t rank(std::vector<std::vector<Rat>> rows) {
  if (rows.empty()) return 0;
  const std::size_t ncols = rows.front().size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[r]);
    for (std::size_t i = r + 1; i < rows.size(); ++i) {
      if (rows[i][c] == 0) continue;
      Rat f = rows[i][c] / rows[r][c];
      for (std::size_t j = c; j < ncols; ++j) rows[i][j] -= f * rows[r][j];
    }
    ++r;
  }
  return r;
}

}  // namespace diffield
