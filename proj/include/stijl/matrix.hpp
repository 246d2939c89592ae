#pragma once

#include <cstdint>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stijl/tile.hpp"

namespace stijl {

// Immutable N x M 0/1 matrix with a fixed row and column order. Carries an
// (N+1) x (M+1) table of cumulative 1-counts so that any rectangle can be
// counted with four lookups. Coordinates are 1-based.
class BinaryMatrix {
 public:
  BinaryMatrix() = default;

  // `cells` is row-major, n_rows * n_cols entries, each 0 or 1.
  BinaryMatrix(int n_rows, int n_cols, std::vector<std::uint8_t> cells);

  static BinaryMatrix zeros(int n_rows, int n_cols);

  int n_rows() const { return n_rows_; }
  int n_cols() const { return n_cols_; }
  Count n_cells() const { return Count{n_rows_} * n_cols_; }

  bool at(int row, int col) const {
    return cells_[static_cast<std::size_t>(row - 1) * n_cols_ + (col - 1)] != 0;
  }

  // Row-major 0/1 values.
  std::span<const std::uint8_t> cells() const { return cells_; }

  Tile full_tile() const { return {1, n_rows_, 1, n_cols_}; }

  Count total_ones() const { return prefix(n_rows_, n_cols_); }

  // Number of 1s in `t`. Throws BoundsError when `t` is not inside the matrix.
  Count rect_ones(const Tile& t) const;

  BinaryMatrix transposed() const;

  // Canonical dense text: one line of '0'/'1' per row, newline-terminated.
  std::string to_dense() const;

  friend bool operator==(const BinaryMatrix& a, const BinaryMatrix& b) {
    return a.n_rows_ == b.n_rows_ && a.n_cols_ == b.n_cols_ && a.cells_ == b.cells_;
  }

 private:
  Count prefix(int i, int j) const {
    return prefix_[static_cast<std::size_t>(i) * (n_cols_ + 1) + j];
  }
  void build_prefix();

  int n_rows_ = 0;
  int n_cols_ = 0;
  std::vector<std::uint8_t> cells_;
  std::vector<Count> prefix_;
};

// Dense format: each non-empty line is a string over {0,1}, all lines of equal
// length. Throws FormatError naming the offending line.
BinaryMatrix parse_dense(std::istream& in);
BinaryMatrix parse_dense(std::string_view text);

// Sparse (transaction) format: line r lists the 1-based column indices of the
// 1s in row r; an empty line is an empty row. When `n_cols` is absent the
// width is the largest index seen.
BinaryMatrix parse_sparse(std::istream& in, std::optional<int> n_cols = std::nullopt);
BinaryMatrix parse_sparse(std::string_view text, std::optional<int> n_cols = std::nullopt);

}  // namespace stijl
