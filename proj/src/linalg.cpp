#include "linalg.hpp"

#include <stdexcept>

namespace hznf::lin {

std::pair<Matrix, std::vector<int>> rref(const Matrix& m) {
  Matrix r = m;
  std::vector<int> pivots;
  int row = 0;
  for (int col = 0; col < r.cols && row < r.rows; ++col) {
    int p = -1;
    for (int i = row; i < r.rows; ++i) {
      if (r.at(i, col) != 0) {
        p = i;
        break;
      }
    }
    if (p < 0) continue;
    if (p != row)
      for (int c = 0; c < r.cols; ++c) std::swap(r.at(p, c), r.at(row, c));
    const Rat inv = 1 / r.at(row, col);
    for (int c = col; c < r.cols; ++c) r.at(row, c) *= inv;
    for (int i = 0; i < r.rows; ++i) {
      if (i == row || r.at(i, col) == 0) continue;
      const Rat f = r.at(i, col);
      for (int c = col; c < r.cols; ++c) r.at(i, c) -= f * r.at(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return {r, pivots};
}

int rank(const Matrix& m) { return static_cast<int>(rref(m).second.size()); }

Matrix nullspace(const Matrix& m) {
  auto [r, pivots] = rref(m);
  std::vector<bool> is_pivot(m.cols, false);
  for (int c : pivots) is_pivot[c] = true;
  std::vector<int> free_cols;
  for (int c = 0; c < m.cols; ++c)
    if (!is_pivot[c]) free_cols.push_back(c);

  Matrix basis(m.cols, static_cast<int>(free_cols.size()));
  for (std::size_t j = 0; j < free_cols.size(); ++j) {
    const int fc = free_cols[j];
    basis.at(fc, static_cast<int>(j)) = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i)
      basis.at(pivots[i], static_cast<int>(j)) = -r.at(static_cast<int>(i), fc);
  }
  return basis;
}

std::optional<Vec> solve_in_image(const Matrix& m, const Vec& b) {
  if (static_cast<int>(b.size()) != m.rows)
    throw std::invalid_argument("solve_in_image: dimension mismatch");
  Matrix aug(m.rows, m.cols + 1);
  for (int i = 0; i < m.rows; ++i) {
    for (int j = 0; j < m.cols; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, m.cols) = b[i];
  }
  auto [r, pivots] = rref(aug);
  for (int c : pivots)
    if (c == m.cols) return std::nullopt;  // inconsistent
  Vec x(m.cols, Rat(0));
  for (std::size_t i = 0; i < pivots.size(); ++i)
    x[pivots[i]] = r.at(static_cast<int>(i), m.cols);
  return x;
}

std::optional<Matrix> inverse(const Matrix& m) {
  if (m.rows != m.cols) return std::nullopt;
  Matrix aug(m.rows, 2 * m.cols);
  for (int i = 0; i < m.rows; ++i) {
    for (int j = 0; j < m.cols; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, m.cols + i) = 1;
  }
  auto [r, pivots] = rref(aug);
  if (static_cast<int>(pivots.size()) != m.rows) return std::nullopt;
  for (int i = 0; i < m.rows; ++i)
    if (pivots[i] != i) return std::nullopt;
  Matrix inv(m.rows, m.cols);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) inv.at(i, j) = r.at(i, m.cols + j);
  return inv;
}

std::vector<int> select_complement(const std::vector<SparseVec>& image_cols, int dim) {
  Eliminator e(dim);
  for (const auto& c : image_cols) e.add_column(c);
  std::vector<int> kept;
  for (int i = 0; i < dim; ++i) {
    SparseVec unit;
    unit[i] = 1;
    if (e.add_column(unit)) kept.push_back(i);
  }
  return kept;
}

// --------------------------------------------------------------------------
// Eliminator
// --------------------------------------------------------------------------

void Eliminator::reduce(SparseVec& x, SparseVec& combo) const {
  // scan ascending rows; eliminating at a pivot row only introduces entries
  // at larger rows, so one forward pass clears everything
  auto it = x.begin();
  while (it != x.end()) {
    auto hit = by_row_.find(it->first);
    if (hit == by_row_.end()) {
      ++it;
      continue;
    }
    const Pivot& p = pivots_[hit->second];
    const Rat f = it->second;
    for (const auto& [row, val] : p.col) {
      auto e = x.find(row);
      if (e == x.end()) {
        x.emplace(row, -f * val);
      } else {
        e->second -= f * val;
        if (e->second == 0) x.erase(e);
      }
    }
    for (const auto& [j, val] : p.combo) {
      auto e = combo.find(j);
      if (e == combo.end()) {
        combo.emplace(j, -f * val);
      } else {
        e->second -= f * val;
        if (e->second == 0) combo.erase(e);
      }
    }
    it = x.upper_bound(hit->first);
  }
}

bool Eliminator::add_column(const SparseVec& col, SparseVec* combo_out) {
  const int j = ncols_++;
  col_is_pivot_.push_back(false);
  SparseVec x = col;
  SparseVec combo;
  combo[j] = 1;
  reduce(x, combo);
  if (x.empty()) {
    if (combo_out) {
      // col = sum_{i<j} (-combo[i]) col_i  given combo[j] == 1 and combo.x == 0
      combo.erase(j);
      for (auto& [i, v] : combo) v = -v;
      *combo_out = std::move(combo);
    }
    return false;
  }
  const int lead = x.begin()->first;
  const Rat inv = 1 / x.begin()->second;
  for (auto& [row, v] : x) v *= inv;
  for (auto& [i, v] : combo) v *= inv;
  by_row_.emplace(lead, static_cast<int>(pivots_.size()));
  order_.push_back(static_cast<int>(pivots_.size()));
  pivots_.push_back(Pivot{lead, std::move(x), std::move(combo)});
  col_is_pivot_[j] = true;
  return true;
}

bool Eliminator::solve(const SparseVec& b, SparseVec* solution) const {
  SparseVec x = b;
  SparseVec negsol;  // combination accumulated with flipped sign by reduce()
  reduce(x, negsol);
  if (!x.empty()) return false;
  if (solution) {
    solution->clear();
    for (const auto& [j, v] : negsol)
      if (v != 0) (*solution)[j] = -v;
  }
  return true;
}

bool Eliminator::is_pivot_column(int j) const {
  return j >= 0 && j < ncols_ && col_is_pivot_[j];
}

}  // namespace hznf::lin
