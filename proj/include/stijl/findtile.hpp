#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "stijl/encoding.hpp"
#include "stijl/scan.hpp"
#include "stijl/tile.hpp"
#include "stijl/tiletree.hpp"

namespace stijl {

class BinaryMatrix;

// Overlap: a new child may intersect its earlier siblings (claiming decides
// who encodes the shared cells). Disjoint: it may not.
enum class Mode { overlap, disjoint };

// Dense: the subtile has a higher 1-frequency than its parent's cells.
enum class Polarity { dense, sparse };

std::string_view to_string(Mode m);
std::string_view to_string(Polarity p);
Mode parse_mode(std::string_view s);

struct SubtileSearchResult {
  std::optional<Tile> tile;
  // Change in total encoded length if `tile` were appended. When no tile is
  // returned this is the best change seen (>= -min_gain), or +inf if no
  // candidate qualified at all.
  Bits delta = std::numeric_limits<Bits>::infinity();
  Polarity polarity = Polarity::dense;
  CountPair claimed;  // counts the tile would encode
};

struct FindTileOptions {
  Mode mode = Mode::overlap;
  Bits min_gain = kDefaultMinGain;
  int threads = 1;
};

// Best subtile of node `x`: enumerates column windows over the shorter side
// of x, maintains the per-row counts of unclaimed cells incrementally, and
// runs a dense and a sparse scan per window. Returns a tile only if it
// shortens the total encoded length by more than `min_gain`. The result does
// not depend on `threads`.
SubtileSearchResult find_tile(const BinaryMatrix& d, const TileTree& t, NodeId x,
                              const FindTileOptions& opts = {});

// Per-row counts of unclaimed 1s and 0s of `mask` over columns c..d_col,
// one entry per row of the mask's region.
CountVectors column_window_counts(const ClaimMask& mask, const BinaryMatrix& d, int c, int d_col);

// Incremental form of column_window_counts: reset() to an empty window at
// column c, then extend() adds the next column in O(rows).
class ColumnWindow {
 public:
  ColumnWindow(const ClaimMask& mask, const BinaryMatrix& d);

  void reset(int c);
  void extend();

  int col_lo() const { return col_lo_; }
  int col_hi() const { return col_hi_; }
  CountVectors counts() const;

 private:
  const ClaimMask& mask_;
  const BinaryMatrix& d_;
  int col_lo_ = 0;
  int col_hi_ = 0;
  std::vector<Count> p_, n_;
};

// Maximal row intervals of `x` whose rows avoid every sibling whose column
// span meets [c, d_col]. Rows are absolute (1-based).
std::vector<Interval> disjoint_row_segments(const Tile& x, std::span<const Tile> siblings, int c,
                                            int d_col);

}  // namespace stijl
