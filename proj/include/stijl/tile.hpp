#pragma once

#include <algorithm>
#include <cstdint>
#include <ostream>

namespace stijl {

using Count = std::int64_t;

// Inclusive rectangle (row_lo, row_hi) x (col_lo, col_hi), 1-based.
struct Tile {
  int row_lo = 1;
  int row_hi = 1;
  int col_lo = 1;
  int col_hi = 1;

  int n_rows() const { return row_hi - row_lo + 1; }
  int n_cols() const { return col_hi - col_lo + 1; }
  Count area() const { return Count{n_rows()} * n_cols(); }

  bool valid() const { return 1 <= row_lo && row_lo <= row_hi && 1 <= col_lo && col_lo <= col_hi; }

  bool contains(int row, int col) const {
    return row_lo <= row && row <= row_hi && col_lo <= col && col <= col_hi;
  }

  // True when `other` is completely covered by this tile.
  bool covers(const Tile& other) const {
    return row_lo <= other.row_lo && other.row_hi <= row_hi && col_lo <= other.col_lo &&
           other.col_hi <= col_hi;
  }

  bool intersects(const Tile& other) const {
    return row_lo <= other.row_hi && other.row_lo <= row_hi && col_lo <= other.col_hi &&
           other.col_lo <= col_hi;
  }

  Tile transposed() const { return {col_lo, col_hi, row_lo, row_hi}; }

  friend bool operator==(const Tile&, const Tile&) = default;
};

// Jaccard similarity of the cell sets of two tiles.
inline double jaccard(const Tile& x, const Tile& y) {
  const int rl = std::max(x.row_lo, y.row_lo), rh = std::min(x.row_hi, y.row_hi);
  const int cl = std::max(x.col_lo, y.col_lo), ch = std::min(x.col_hi, y.col_hi);
  const Count inter = (rl <= rh && cl <= ch) ? Count{rh - rl + 1} * (ch - cl + 1) : 0;
  return static_cast<double>(inter) / static_cast<double>(x.area() + y.area() - inter);
}

inline std::ostream& operator<<(std::ostream& os, const Tile& t) {
  return os << '(' << t.row_lo << ',' << t.row_hi << ")x(" << t.col_lo << ',' << t.col_hi << ')';
}

}  // namespace stijl
