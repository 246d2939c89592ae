#pragma once

#include "stijl/tile.hpp"

namespace stijl {

class BinaryMatrix;
class TileTree;

// Encoded lengths are in bits (log base 2).
using Bits = double;

// Strict improvements must beat this margin to count; keeps the greedy loop
// finite under floating-point noise.
inline constexpr Bits kDefaultMinGain = 1e-9;

struct CountPair {
  Count ones = 0;
  Count zeroes = 0;

  Count total() const { return ones + zeroes; }
  friend bool operator==(const CountPair&, const CountPair&) = default;
};

// -p log(p/(p+n)) - n log(n/(p+n)), with 0 log 0 = 0 and H(0,0) = 0.
Bits scaled_entropy(Count p, Count n);
inline Bits scaled_entropy(CountPair c) { return scaled_entropy(c.ones, c.zeroes); }

// Bits to describe a non-root tile given its parent: two structure bits, four
// endpoints and the 1-count, all bounded by the parent's extent. Independent
// of the child's own extent. Throws ContainmentError if `child` is not a
// subtile of `parent`.
Bits tile_description_length(const Tile& child, const Tile& parent);

// Same as above without the containment check; the hot path uses this.
Bits description_length_under(const Tile& parent);

// The root carries no model cost: its dimensions and count are constant over
// all trees for the same data.
constexpr Bits root_length() { return 0.0; }

// Change in total encoded length from appending `y` as last child of `x`.
// `x_counts` are x's cell counts before insertion, `y_counts` those y claims.
// Throws CountError when y claims more than x has.
Bits gain(CountPair x_counts, CountPair y_counts, const Tile& y, const Tile& x);

// Cost of the two affected tiles after the split, without the model term.
inline Bits split_cost(CountPair x_counts, CountPair y_counts) {
  return scaled_entropy(y_counts) +
         scaled_entropy(x_counts.ones - y_counts.ones, x_counts.zeroes - y_counts.zeroes);
}

// Total encoded length of `d` under `t`, recomputed from scratch by replaying
// the first-come-first-serve cell claims. Throws std::invalid_argument on a
// dimension mismatch.
Bits tree_total_length(const BinaryMatrix& d, const TileTree& t);

// Encoded length under the root-only tree.
Bits baseline_length(const BinaryMatrix& d);

// 100 * L(D,T) / L(D,T0); 100 when the baseline is 0.
double relative_compression(const BinaryMatrix& d, const TileTree& t);
double relative_compression(Bits total, Bits baseline);

}  // namespace stijl
