#include "stijl/matrix.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "stijl/error.hpp"

namespace stijl {

BinaryMatrix::BinaryMatrix(int n_rows, int n_cols, std::vector<std::uint8_t> cells)
    : n_rows_(n_rows), n_cols_(n_cols), cells_(std::move(cells)) {
  if (n_rows < 1 || n_cols < 1) throw FormatError("matrix must have at least one row and column");
  if (cells_.size() != static_cast<std::size_t>(n_rows) * static_cast<std::size_t>(n_cols)) {
    throw FormatError("cell count does not match dimensions");
  }
  for (auto& c : cells_) {
    if (c > 1) throw FormatError("cell value other than 0 or 1");
  }
  build_prefix();
}

BinaryMatrix BinaryMatrix::zeros(int n_rows, int n_cols) {
  return BinaryMatrix(n_rows, n_cols,
                      std::vector<std::uint8_t>(static_cast<std::size_t>(n_rows) * n_cols, 0));
}

void BinaryMatrix::build_prefix() {
  const std::size_t w = static_cast<std::size_t>(n_cols_) + 1;
  prefix_.assign((static_cast<std::size_t>(n_rows_) + 1) * w, 0);
  for (int i = 1; i <= n_rows_; ++i) {
    Count row_sum = 0;
    for (int j = 1; j <= n_cols_; ++j) {
      row_sum += at(i, j);
      prefix_[i * w + j] = prefix_[(i - 1) * w + j] + row_sum;
    }
  }
}

Count BinaryMatrix::rect_ones(const Tile& t) const {
  if (!t.valid() || t.row_hi > n_rows_ || t.col_hi > n_cols_) {
    std::ostringstream os;
    os << "tile " << t << " outside " << n_rows_ << "x" << n_cols_ << " matrix";
    throw BoundsError(os.str());
  }
  return prefix(t.row_hi, t.col_hi) - prefix(t.row_lo - 1, t.col_hi) -
         prefix(t.row_hi, t.col_lo - 1) + prefix(t.row_lo - 1, t.col_lo - 1);
}

BinaryMatrix BinaryMatrix::transposed() const {
  std::vector<std::uint8_t> out(cells_.size());
  for (int i = 0; i < n_rows_; ++i) {
    for (int j = 0; j < n_cols_; ++j) {
      out[static_cast<std::size_t>(j) * n_rows_ + i] = cells_[static_cast<std::size_t>(i) * n_cols_ + j];
    }
  }
  return BinaryMatrix(n_cols_, n_rows_, std::move(out));
}

std::string BinaryMatrix::to_dense() const {
  std::string s;
  s.reserve(static_cast<std::size_t>(n_rows_) * (n_cols_ + 1));
  for (int i = 1; i <= n_rows_; ++i) {
    for (int j = 1; j <= n_cols_; ++j) s.push_back(at(i, j) ? '1' : '0');
    s.push_back('\n');
  }
  return s;
}

namespace {

void strip_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

}  // namespace

BinaryMatrix parse_dense(std::istream& in) {
  std::vector<std::uint8_t> cells;
  int n_rows = 0;
  std::size_t width = 0;
  std::size_t line_no = 0;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    strip_cr(line);
    if (line.empty()) continue;
    if (n_rows == 0) {
      width = line.size();
    } else if (line.size() != width) {
      throw FormatError("expected " + std::to_string(width) + " columns, found " +
                            std::to_string(line.size()),
                        line_no);
    }
    for (char ch : line) {
      if (ch != '0' && ch != '1') {
        throw FormatError(std::string("illegal character '") + ch + "'", line_no);
      }
      cells.push_back(ch == '1');
    }
    ++n_rows;
  }
  if (n_rows == 0) throw FormatError("empty input", line_no + 1);
  return BinaryMatrix(n_rows, static_cast<int>(width), std::move(cells));
}

BinaryMatrix parse_dense(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_dense(in);
}

BinaryMatrix parse_sparse(std::istream& in, std::optional<int> n_cols) {
  std::vector<std::vector<int>> rows;
  int max_index = 0;
  std::size_t line_no = 0;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    strip_cr(line);
    auto& row = rows.emplace_back();
    std::istringstream tokens(line);
    std::string tok;
    while (tokens >> tok) {
      int value = 0;
      auto [end, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
      if (ec != std::errc{} || end != tok.data() + tok.size()) {
        throw FormatError("non-integer token '" + tok + "'", line_no);
      }
      if (value < 1) throw FormatError("column index " + tok + " below 1", line_no);
      if (n_cols && value > *n_cols) {
        throw FormatError("column index " + tok + " exceeds " + std::to_string(*n_cols), line_no);
      }
      row.push_back(value);
      max_index = std::max(max_index, value);
    }
  }
  if (rows.empty()) throw FormatError("empty input", 1);
  const int width = n_cols ? *n_cols : max_index;
  if (width < 1) throw FormatError("no columns: no indices and no explicit width");

  std::vector<std::uint8_t> cells(rows.size() * static_cast<std::size_t>(width), 0);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (int c : rows[r]) cells[r * width + (c - 1)] = 1;
  }
  return BinaryMatrix(static_cast<int>(rows.size()), width, std::move(cells));
}

BinaryMatrix parse_sparse(std::string_view text, std::optional<int> n_cols) {
  std::istringstream in{std::string(text)};
  return parse_sparse(in, n_cols);
}

}  // namespace stijl
