// Exact rational linear algebra.  Two layers:
//   * Matrix: small dense matrices with reduced row echelon form, nullspace,
//     and a deterministic solver (free variables pinned to zero).
//   * Eliminator: a left-looking sparse eliminator with combination tracking,
//     used by the engine where columns are sparse generator actions.  It
//     yields the same pivot-column set and the same pinned solution as the
//     dense path, just faster.
#pragma once

#include "rational.hpp"

#include <map>
#include <optional>
#include <vector>

namespace hznf::lin {

using Vec = std::vector<Rat>;
using SparseVec = std::map<int, Rat>;  // row index -> value

struct Matrix {
  int rows = 0, cols = 0;
  std::vector<Rat> a;  // row-major

  Matrix() = default;
  Matrix(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, Rat(0)) {}

  Rat& at(int r, int c) { return a[static_cast<std::size_t>(r) * cols + c]; }
  const Rat& at(int r, int c) const { return a[static_cast<std::size_t>(r) * cols + c]; }

  bool operator==(const Matrix& o) const = default;
};

// reduced row echelon form with exact unit pivots; returns pivot columns in order
std::pair<Matrix, std::vector<int>> rref(const Matrix& m);

int rank(const Matrix& m);

// basis of {x : Mx = 0}, one column per basis vector (classic free-variable basis)
Matrix nullspace(const Matrix& m);

// some x with Mx = b if b lies in the column space, else nullopt; free
// variables (non-pivot columns of M) are pinned to zero
std::optional<Vec> solve_in_image(const Matrix& m, const Vec& b);

// q x q inverse; nullopt when singular
std::optional<Matrix> inverse(const Matrix& m);

// Greedy style-driven complement selection: iterate coordinates 0..dim-1 (the
// caller orders its monomial basis by the style priority) and keep an index
// iff its unit vector is independent of image + already-kept.
std::vector<int> select_complement(const std::vector<SparseVec>& image_cols, int dim);

// ---------------------------------------------------------------------------
// sparse left-looking eliminator
// ---------------------------------------------------------------------------

class Eliminator {
 public:
  explicit Eliminator(int nrows) : nrows_(nrows) {}

  int rows() const { return nrows_; }
  int rank() const { return static_cast<int>(order_.size()); }
  int columns_seen() const { return ncols_; }

  // Feeds the next column.  Returns true if it was independent of everything
  // seen so far (it becomes a pivot).  When dependent and combo != nullptr,
  // *combo receives coefficients over previously fed columns expressing this
  // column, i.e. col = sum combo[j] * col_j.
  bool add_column(const SparseVec& col, SparseVec* combo = nullptr);

  // Expresses b over the pivot columns fed so far.  Returns false when b is
  // not in their span.  On success *solution holds coefficients indexed by
  // column number (only pivot columns appear), matching the dense
  // solve_in_image convention of zero free variables.
  bool solve(const SparseVec& b, SparseVec* solution) const;

  bool is_pivot_column(int j) const;

 private:
  struct Pivot {
    int lead_row;
    SparseVec col;    // reduced column, unit leading entry
    SparseVec combo;  // reduced column as combination of original columns
  };
  // reduce x (and track the combination) against all existing pivots
  void reduce(SparseVec& x, SparseVec& combo) const;

  int nrows_;
  int ncols_ = 0;
  std::vector<Pivot> pivots_;
  std::map<int, int> by_row_;       // lead row -> pivot index
  std::vector<int> order_;          // pivot indices in feed order
  std::vector<bool> col_is_pivot_;
};

}  // namespace hznf::lin
