#include "stijl/tiletree.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "stijl/error.hpp"
#include "stijl/matrix.hpp"

namespace stijl {

TileTree::TileTree(const BinaryMatrix& d)
    : TileTree(d.n_rows(), d.n_cols(), {d.total_ones(), d.n_cells() - d.total_ones()}) {}

TileTree::TileTree(int n_rows, int n_cols, CountPair root_counts)
    : n_rows_(n_rows), n_cols_(n_cols) {
  if (n_rows < 1 || n_cols < 1) throw std::invalid_argument("empty tile tree dimensions");
  nodes_.push_back({Tile{1, n_rows, 1, n_cols}, kNoNode, {}, root_counts});
}

const TileTree::Node& TileTree::node(NodeId id) const {
  if (id < 0 || static_cast<std::size_t>(id) >= nodes_.size()) {
    throw BoundsError("no tile tree node " + std::to_string(id));
  }
  return nodes_[id];
}

TileTree::Node& TileTree::node(NodeId id) {
  return const_cast<Node&>(std::as_const(*this).node(id));
}

std::vector<NodeId> TileTree::post_order() const {
  std::vector<NodeId> order;
  order.reserve(nodes_.size());
  // (node, index of next child to visit)
  std::vector<std::pair<NodeId, std::size_t>> stack{{root(), 0}};
  while (!stack.empty()) {
    auto& [id, next] = stack.back();
    const auto& kids = nodes_[id].children;
    if (next < kids.size()) {
      const NodeId child = kids[next++];
      stack.push_back({child, 0});
    } else {
      order.push_back(id);
      stack.pop_back();
    }
  }
  return order;
}

int TileTree::post_order_id(NodeId id) const {
  const auto order = post_order();
  const auto it = std::find(order.begin(), order.end(), id);
  if (it == order.end()) throw BoundsError("no tile tree node " + std::to_string(id));
  return static_cast<int>(it - order.begin()) + 1;
}

NodeId TileTree::attach(NodeId x, const Tile& y, CountPair counts) {
  const Tile parent_tile = node(x).tile;
  if (!y.valid() || !parent_tile.covers(y)) {
    std::ostringstream os;
    os << "tile " << y << " is not a subtile of " << parent_tile;
    throw ContainmentError(os.str());
  }
  const auto id = static_cast<NodeId>(nodes_.size());
  nodes_.push_back({y, x, {}, counts});
  nodes_[x].children.push_back(id);
  return id;
}

TileTree::Insertion TileTree::add_child(NodeId x, const Tile& y, const BinaryMatrix& d) {
  if (d.n_rows() != n_rows_ || d.n_cols() != n_cols_) {
    throw std::invalid_argument("tree and data dimensions differ");
  }
  if (!y.valid() || !node(x).tile.covers(y)) {
    std::ostringstream os;
    os << "tile " << y << " is not a subtile of " << node(x).tile;
    throw ContainmentError(os.str());
  }
  // cells(Y; T') = Y ∩ cells(X; T): the tiles preceding Y in the new
  // post-order are exactly those preceding X in the old one.
  const ClaimMask mask = claim_mask(*this, x);
  CountPair claimed;
  for (int i = y.row_lo; i <= y.row_hi; ++i) {
    for (int j = y.col_lo; j <= y.col_hi; ++j) {
      if (!mask.unclaimed(i, j)) continue;
      if (d.at(i, j)) {
        ++claimed.ones;
      } else {
        ++claimed.zeroes;
      }
    }
  }
  auto& px = nodes_[x].counts;
  if (claimed.ones > px.ones || claimed.zeroes > px.zeroes) {
    throw CountError("cached parent counts are inconsistent with the data");
  }
  px.ones -= claimed.ones;
  px.zeroes -= claimed.zeroes;
  const NodeId id = attach(x, y, claimed);
  return {id, claimed};
}

bool operator==(const TileTree& a, const TileTree& b) {
  if (a.n_rows_ != b.n_rows_ || a.n_cols_ != b.n_cols_ || a.size() != b.size()) return false;
  const auto oa = a.post_order();
  const auto ob = b.post_order();
  std::vector<int> pos_a(a.size()), pos_b(b.size());
  for (std::size_t k = 0; k < oa.size(); ++k) {
    pos_a[oa[k]] = static_cast<int>(k);
    pos_b[ob[k]] = static_cast<int>(k);
  }
  for (std::size_t k = 0; k < oa.size(); ++k) {
    const auto& na = a.nodes_[oa[k]];
    const auto& nb = b.nodes_[ob[k]];
    if (!(na.tile == nb.tile) || !(na.counts == nb.counts)) return false;
    const int pa = na.parent == kNoNode ? -1 : pos_a[na.parent];
    const int pb = nb.parent == kNoNode ? -1 : pos_b[nb.parent];
    if (pa != pb) return false;
  }
  return true;
}

Count ClaimMask::popcount() const {
  return std::accumulate(free.begin(), free.end(), Count{0});
}

ClaimMask claim_mask(const TileTree& t, NodeId x) {
  ClaimMask mask;
  mask.region = t.tile(x);
  const Tile& r = mask.region;
  mask.free.assign(static_cast<std::size_t>(r.area()), 1);
  const std::size_t w = static_cast<std::size_t>(r.n_cols());
  for (const NodeId q : t.post_order()) {
    if (q == x) break;
    const Tile& qt = t.tile(q);
    if (!qt.intersects(r)) continue;
    const int rl = std::max(qt.row_lo, r.row_lo), rh = std::min(qt.row_hi, r.row_hi);
    const int cl = std::max(qt.col_lo, r.col_lo), ch = std::min(qt.col_hi, r.col_hi);
    for (int i = rl; i <= rh; ++i) {
      auto* row = mask.free.data() + static_cast<std::size_t>(i - r.row_lo) * w;
      std::fill(row + (cl - r.col_lo), row + (ch - r.col_lo) + 1, std::uint8_t{0});
    }
  }
  return mask;
}

CountPair cells_counts(const TileTree& t, const BinaryMatrix& d, NodeId x) {
  const ClaimMask mask = claim_mask(t, x);
  const Tile& r = mask.region;
  CountPair c;
  for (int i = r.row_lo; i <= r.row_hi; ++i) {
    for (int j = r.col_lo; j <= r.col_hi; ++j) {
      if (!mask.unclaimed(i, j)) continue;
      if (d.at(i, j)) {
        ++c.ones;
      } else {
        ++c.zeroes;
      }
    }
  }
  return c;
}

std::vector<CountPair> recount_cells(const TileTree& t, const BinaryMatrix& d) {
  if (d.n_rows() != t.n_rows() || d.n_cols() != t.n_cols()) {
    throw std::invalid_argument("tree and data dimensions differ");
  }
  std::vector<CountPair> counts(t.size());
  std::vector<std::uint8_t> claimed(static_cast<std::size_t>(d.n_cells()), 0);
  const std::size_t w = static_cast<std::size_t>(d.n_cols());
  for (const NodeId q : t.post_order()) {
    const Tile& qt = t.tile(q);
    for (int i = qt.row_lo; i <= qt.row_hi; ++i) {
      for (int j = qt.col_lo; j <= qt.col_hi; ++j) {
        auto& cell = claimed[static_cast<std::size_t>(i - 1) * w + (j - 1)];
        if (cell) continue;
        cell = 1;
        if (d.at(i, j)) {
          ++counts[q].ones;
        } else {
          ++counts[q].zeroes;
        }
      }
    }
  }
  return counts;
}

void validate(const TileTree& t) {
  if (t.size() == 0) throw std::invalid_argument("empty tile tree");
  if (!(t.tile(TileTree::root()) == Tile{1, t.n_rows(), 1, t.n_cols()})) {
    throw ContainmentError("root tile does not cover the data");
  }
  Count cells = 0;
  for (NodeId id = 0; static_cast<std::size_t>(id) < t.size(); ++id) {
    const CountPair c = t.counts(id);
    if (c.ones < 0 || c.zeroes < 0) throw CountError("negative cell count");
    cells += c.total();
    const NodeId p = t.parent(id);
    if (p != kNoNode && !t.tile(p).covers(t.tile(id))) {
      std::ostringstream os;
      os << "tile " << t.tile(id) << " is not a subtile of its parent " << t.tile(p);
      throw ContainmentError(os.str());
    }
  }
  if (cells != Count{t.n_rows()} * t.n_cols()) {
    throw CountError("cell counts sum to " + std::to_string(cells) + ", expected " +
                     std::to_string(Count{t.n_rows()} * t.n_cols()));
  }
}

bool counts_consistent(const TileTree& t, const BinaryMatrix& d) {
  validate(t);
  const auto fresh = recount_cells(t, d);
  for (NodeId id = 0; static_cast<std::size_t>(id) < t.size(); ++id) {
    if (!(fresh[id] == t.counts(id))) return false;
  }
  return true;
}

std::string serialize(const TileTree& t) {
  const auto order = t.post_order();
  std::vector<int> pos(t.size());
  for (std::size_t k = 0; k < order.size(); ++k) pos[order[k]] = static_cast<int>(k) + 1;

  std::ostringstream os;
  os << "stijl-tree v1 " << t.n_rows() << ' ' << t.n_cols() << '\n';
  for (std::size_t k = 0; k < order.size(); ++k) {
    const NodeId id = order[k];
    const NodeId p = t.parent(id);
    const Tile& x = t.tile(id);
    const CountPair c = t.counts(id);
    os << k + 1 << ' ' << (p == kNoNode ? 0 : pos[p]) << ' ' << x.row_lo << ' ' << x.row_hi << ' '
       << x.col_lo << ' ' << x.col_hi << ' ' << c.ones << ' ' << c.zeroes << '\n';
  }
  return os.str();
}

TileTree deserialize(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.find_first_not_of(" \t") != std::string::npos) return true;
    }
    return false;
  };

  if (!next_line()) throw FormatError("missing header", 1);
  int n_rows = 0, n_cols = 0;
  {
    std::istringstream hs(line);
    std::string magic, version, extra;
    if (!(hs >> magic >> version >> n_rows >> n_cols) || magic != "stijl-tree" ||
        version != "v1" || (hs >> extra) || n_rows < 1 || n_cols < 1) {
      throw FormatError("expected header 'stijl-tree v1 <n_rows> <n_cols>'", line_no);
    }
  }

  struct Row {
    int id, parent;
    Tile tile;
    CountPair counts;
    std::size_t line_no;
  };
  std::vector<Row> rows;
  while (next_line()) {
    std::istringstream ls(line);
    Row r{};
    std::string extra;
    if (!(ls >> r.id >> r.parent >> r.tile.row_lo >> r.tile.row_hi >> r.tile.col_lo >>
          r.tile.col_hi >> r.counts.ones >> r.counts.zeroes) ||
        (ls >> extra)) {
      throw FormatError("expected 'id parent_id a b c d ones zeroes'", line_no);
    }
    r.line_no = line_no;
    if (r.id != static_cast<int>(rows.size()) + 1) {
      throw FormatError("ids must be consecutive post-order positions", line_no);
    }
    if (!r.tile.valid() || r.tile.row_hi > n_rows || r.tile.col_hi > n_cols) {
      throw FormatError("tile outside the data", line_no);
    }
    if (r.counts.ones < 0 || r.counts.zeroes < 0) throw FormatError("negative count", line_no);
    rows.push_back(r);
  }
  if (rows.empty()) throw FormatError("no tiles", line_no + 1);

  const int k = static_cast<int>(rows.size());
  const Row& root_row = rows.back();
  if (root_row.parent != 0) throw FormatError("last tile in post-order must be the root", root_row.line_no);
  if (!(root_row.tile == Tile{1, n_rows, 1, n_cols})) {
    throw FormatError("root tile must cover the data", root_row.line_no);
  }

  TileTree t(n_rows, n_cols, root_row.counts);
  std::vector<std::vector<int>> kids(k + 1);
  for (int i = 0; i + 1 < k; ++i) {
    const Row& r = rows[i];
    if (r.parent <= r.id || r.parent > k) {
      throw FormatError("parent must appear later in post-order", r.line_no);
    }
    kids[r.parent].push_back(r.id);
  }
  std::vector<NodeId> handle(k + 1, kNoNode);
  handle[k] = TileTree::root();
  // Parents always carry the larger id, so every tile reaches the root.
  // Attach in breadth order so every parent exists; siblings stay in id order.
  std::vector<int> queue{k};
  for (std::size_t q = 0; q < queue.size(); ++q) {
    const int pid = queue[q];
    for (int child : kids[pid]) {
      const Row& r = rows[child - 1];
      try {
        handle[child] = t.attach(handle[pid], r.tile, r.counts);
      } catch (const ContainmentError& e) {
        throw FormatError(e.what(), r.line_no);
      }
      queue.push_back(child);
    }
  }

  // The file order must be the tree's own post-order.
  const auto order = t.post_order();
  for (int i = 0; i < k; ++i) {
    if (order[i] != handle[i + 1]) {
      throw FormatError("tiles are not listed in post-order", rows[i].line_no);
    }
  }
  try {
    validate(t);
  } catch (const std::exception& e) {
    throw FormatError(e.what());
  }
  return t;
}

TileTree deserialize(std::string_view text) {
  std::istringstream in{std::string(text)};
  return deserialize(in);
}

}  // namespace stijl
