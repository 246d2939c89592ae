#pragma once

#include <cstdint>
#include <istream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "stijl/encoding.hpp"
#include "stijl/tile.hpp"

namespace stijl {

class BinaryMatrix;

// Stable node handle, assigned at insertion. The root is always 0. Post-order
// positions shift on every insertion and are never stored.
using NodeId = std::int32_t;
inline constexpr NodeId kNoNode = -1;

// Ordered tree of tiles. Every child is a subtile of its parent; the root
// covers the whole matrix. Each node caches the 1/0 counts of the cells it
// encodes, where cells go to the first tile in post-order that contains them.
class TileTree {
 public:
  TileTree() = default;

  // Root-only tree over `d`.
  explicit TileTree(const BinaryMatrix& d);

  // Root-only tree with explicit root counts.
  TileTree(int n_rows, int n_cols, CountPair root_counts);

  int n_rows() const { return n_rows_; }
  int n_cols() const { return n_cols_; }
  std::size_t size() const { return nodes_.size(); }

  static constexpr NodeId root() { return 0; }

  const Tile& tile(NodeId id) const { return node(id).tile; }
  NodeId parent(NodeId id) const { return node(id).parent; }
  std::span<const NodeId> children(NodeId id) const { return node(id).children; }
  CountPair counts(NodeId id) const { return node(id).counts; }

  // Children before parents; siblings in insertion order, each sibling's
  // subtree before the next sibling. Position k holds the node with id k+1.
  std::vector<NodeId> post_order() const;

  // 1-based post-order position of `id`.
  int post_order_id(NodeId id) const;

  struct Insertion {
    NodeId node = kNoNode;
    CountPair claimed;  // counts of the cells the new tile encodes
  };

  // Appends `y` as the last child of `x`. The new tile claims the cells of x
  // that lie inside y; x's cached counts drop by the same amount and no other
  // node changes. Throws ContainmentError if y is not a subtile of x.
  Insertion add_child(NodeId x, const Tile& y, const BinaryMatrix& d);

  // Appends with caller-provided counts. Does not touch the parent's counts.
  NodeId attach(NodeId x, const Tile& y, CountPair counts);

  void set_counts(NodeId id, CountPair c) { node(id).counts = c; }

  // Trees are equal when their post-order sequences agree on tiles, parent
  // positions and counts; node handles may differ.
  friend bool operator==(const TileTree& a, const TileTree& b);

 private:
  struct Node {
    Tile tile;
    NodeId parent = kNoNode;
    std::vector<NodeId> children;
    CountPair counts;
  };

  const Node& node(NodeId id) const;
  Node& node(NodeId id);

  int n_rows_ = 0;
  int n_cols_ = 0;
  std::vector<Node> nodes_;
};

// Cells of a tile not claimed by any tile earlier in post-order.
struct ClaimMask {
  Tile region;
  std::vector<std::uint8_t> free;  // row-major over `region`, 1 = unclaimed

  bool unclaimed(int row, int col) const {
    return free[static_cast<std::size_t>(row - region.row_lo) * region.n_cols() +
                (col - region.col_lo)] != 0;
  }
  Count popcount() const;
};

// Mask of cells(x; t), built by replaying the claims of every tile that
// precedes x in post-order. O(area(x) * |t|) worst case.
ClaimMask claim_mask(const TileTree& t, NodeId x);

// Counts over cells(x; t), from scratch.
CountPair cells_counts(const TileTree& t, const BinaryMatrix& d, NodeId x);

// From-scratch counts for every node, indexed by NodeId.
std::vector<CountPair> recount_cells(const TileTree& t, const BinaryMatrix& d);

// Throws if containment, root coverage or the cell partition is violated.
void validate(const TileTree& t);

// Checks validate() plus cached counts against recount_cells().
bool counts_consistent(const TileTree& t, const BinaryMatrix& d);

// Text format:
//   stijl-tree v1 <n_rows> <n_cols>
//   <id> <parent_id> <a> <b> <c> <d> <ones> <zeroes>     one line per tile
// Lines are in post-order, ids are post-order positions, the root is last
// with parent_id 0.
std::string serialize(const TileTree& t);
TileTree deserialize(std::istream& in);
TileTree deserialize(std::string_view text);

}  // namespace stijl
