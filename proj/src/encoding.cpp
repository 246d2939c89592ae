#include "stijl/encoding.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "stijl/error.hpp"
#include "stijl/matrix.hpp"
#include "stijl/tiletree.hpp"

namespace stijl {

Bits scaled_entropy(Count p, Count n) {
  if (p <= 0 || n <= 0) return 0.0;
  const double dp = static_cast<double>(p);
  const double dn = static_cast<double>(n);
  const double total = dp + dn;
  const Bits h = -dp * std::log2(dp / total) - dn * std::log2(dn / total);
  return h > 0.0 ? h : 0.0;
}

Bits description_length_under(const Tile& parent) {
  return 2.0 + 5.0 * std::log2(static_cast<double>(parent.n_rows())) +
         5.0 * std::log2(static_cast<double>(parent.n_cols()));
}

Bits tile_description_length(const Tile& child, const Tile& parent) {
  if (!child.valid() || !parent.covers(child)) {
    std::ostringstream os;
    os << "tile " << child << " is not a subtile of " << parent;
    throw ContainmentError(os.str());
  }
  return description_length_under(parent);
}

Bits gain(CountPair x_counts, CountPair y_counts, const Tile& y, const Tile& x) {
  if (y_counts.ones < 0 || y_counts.zeroes < 0 || y_counts.ones > x_counts.ones ||
      y_counts.zeroes > x_counts.zeroes) {
    throw CountError("subtile counts (" + std::to_string(y_counts.ones) + "," +
                     std::to_string(y_counts.zeroes) + ") exceed parent counts (" +
                     std::to_string(x_counts.ones) + "," + std::to_string(x_counts.zeroes) + ")");
  }
  return split_cost(x_counts, y_counts) - scaled_entropy(x_counts) +
         tile_description_length(y, x);
}

Bits tree_total_length(const BinaryMatrix& d, const TileTree& t) {
  if (d.n_rows() != t.n_rows() || d.n_cols() != t.n_cols()) {
    throw std::invalid_argument("tree and data dimensions differ");
  }
  Bits total = 0.0;
  const auto order = t.post_order();
  const auto counts = recount_cells(t, d);
  for (std::size_t k = 0; k < order.size(); ++k) {
    const NodeId id = order[k];
    const NodeId parent = t.parent(id);
    total += parent == kNoNode ? root_length() : tile_description_length(t.tile(id), t.tile(parent));
    total += scaled_entropy(counts[id]);
  }
  return total;
}

Bits baseline_length(const BinaryMatrix& d) {
  return scaled_entropy(d.total_ones(), d.n_cells() - d.total_ones());
}

double relative_compression(Bits total, Bits baseline) {
  if (baseline <= 0.0) return 100.0;
  return 100.0 * total / baseline;
}

double relative_compression(const BinaryMatrix& d, const TileTree& t) {
  return relative_compression(tree_total_length(d, t), baseline_length(d));
}

}  // namespace stijl
