#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "stijl/error.hpp"
#include "stijl/matrix.hpp"
#include "stijl/tiletree.hpp"

using namespace stijl;

namespace {

CountPair count_region(const BinaryMatrix& d, const Tile& t,
                       const std::vector<Tile>& excluded) {
  CountPair c;
  for (int i = t.row_lo; i <= t.row_hi; ++i) {
    for (int j = t.col_lo; j <= t.col_hi; ++j) {
      bool skip = false;
      for (const auto& e : excluded) skip = skip || e.contains(i, j);
      if (skip) continue;
      ++(d.at(i, j) ? c.ones : c.zeroes);
    }
  }
  return c;
}

}  // namespace

TEST_SUITE("tiletree") {
  TEST_CASE("post_order of simple trees") {
    const auto d = parse_dense("1010\n0101\n1100\n");
    TileTree t(d);
    CHECK(t.post_order() == std::vector<NodeId>{0});

    const NodeId a = t.add_child(0, {1, 3, 1, 4}, d).node;
    const NodeId b = t.add_child(a, {1, 2, 1, 3}, d).node;
    const NodeId c = t.add_child(b, {1, 1, 1, 1}, d).node;
    CHECK(t.post_order() == std::vector<NodeId>{c, b, a, 0});
    CHECK(t.post_order_id(c) == 1);
    CHECK(t.post_order_id(0) == 4);
  }

  TEST_CASE("toy tree post-order is 1..6") {
    std::mt19937_64 rng(3);
    const auto d = oracle::random_matrix(rng, 30, 40, 0.3);
    const auto toy = oracle::toy_tree(d);
    const auto order = toy.tree.post_order();
    REQUIRE(order.size() == 6);
    for (int k = 1; k <= 6; ++k) CHECK(order[k - 1] == toy.handle[k]);
  }

  TEST_CASE("cells are assigned first-come first-serve") {
    std::mt19937_64 rng(4);
    const auto d = oracle::random_matrix(rng, 30, 40, 0.4);
    const auto toy = oracle::toy_tree(d);
    const auto& t = toy.tree;
    const auto& h = toy.handle;
    // Tile 3 excludes tiles 1 and 2.
    CHECK(cells_counts(t, d, h[3]) == count_region(d, t.tile(h[3]), {t.tile(h[1]), t.tile(h[2])}));
    // Tile 5 loses its overlap with the earlier sibling 3 and its child 4.
    CHECK(cells_counts(t, d, h[5]) ==
          count_region(d, t.tile(h[5]), {t.tile(h[1]), t.tile(h[2]), t.tile(h[3]), t.tile(h[4])}));
    CHECK(counts_consistent(t, d));
    const auto slow = oracle::slow_counts(t, d);
    for (NodeId q = 0; q < 6; ++q) CHECK(t.counts(q) == slow[q]);
  }

  TEST_CASE("root-only counts and full covering child") {
    const auto d = parse_dense("110\n011\n");
    TileTree t(d);
    CHECK(cells_counts(t, d, 0) == CountPair{4, 2});
    const auto ins = t.add_child(0, d.full_tile(), d);
    CHECK(ins.claimed == CountPair{4, 2});
    CHECK(t.counts(0) == CountPair{0, 0});
    CHECK(cells_counts(t, d, 0) == CountPair{0, 0});
  }

  TEST_CASE("add_child excludes overlap with earlier siblings") {
    std::mt19937_64 rng(8);
    const auto d = oracle::random_matrix(rng, 10, 10, 0.5);
    TileTree t(d);
    const Tile s1{1, 6, 1, 6}, s2{4, 10, 4, 10};
    t.add_child(0, s1, d);
    const auto ins = t.add_child(0, s2, d);
    CHECK(ins.claimed == count_region(d, s2, {s1}));
    CHECK(ins.claimed.total() == s2.area() - 9);
    CHECK(counts_consistent(t, d));
  }

  TEST_CASE("add_child rejects a tile outside its parent") {
    const auto d = parse_dense("1111\n1111\n1111\n");
    TileTree t(d);
    const NodeId a = t.add_child(0, {1, 2, 1, 2}, d).node;
    CHECK_THROWS_AS(t.add_child(a, {1, 3, 1, 1}, d), ContainmentError);
    CHECK_THROWS_AS(t.add_child(0, {2, 1, 1, 1}, d), ContainmentError);
  }

  TEST_CASE("add_child only touches the parent and the new child") {
    std::mt19937_64 rng(15);
    for (int trial = 0; trial < 40; ++trial) {
      const auto d = oracle::random_matrix(rng, 14, 11, 0.4);
      auto t = oracle::random_tree(rng, d, 5);
      std::vector<CountPair> before;
      for (NodeId q = 0; static_cast<std::size_t>(q) < t.size(); ++q) before.push_back(t.counts(q));
      const NodeId x = std::uniform_int_distribution<NodeId>(0, static_cast<NodeId>(t.size()) - 1)(rng);
      const auto ins = t.add_child(x, oracle::random_subtile(rng, t.tile(x)), d);
      for (NodeId q = 0; static_cast<std::size_t>(q) < before.size(); ++q) {
        if (q == x) {
          CHECK(t.counts(q).ones == before[q].ones - ins.claimed.ones);
          CHECK(t.counts(q).zeroes == before[q].zeroes - ins.claimed.zeroes);
        } else {
          CHECK(t.counts(q) == before[q]);
        }
      }
      CHECK(counts_consistent(t, d));
    }
  }

  TEST_CASE("claims partition the matrix") {
    std::mt19937_64 rng(16);
    for (int trial = 0; trial < 30; ++trial) {
      const auto d = oracle::random_matrix(rng, 20, 17, 0.3);
      const auto t = oracle::random_tree(rng, d, 8);
      Count total = 0;
      for (NodeId q = 0; static_cast<std::size_t>(q) < t.size(); ++q) total += t.counts(q).total();
      CHECK(total == d.n_cells());
      const auto owners = oracle::cell_owners(t, d.n_rows(), d.n_cols());
      for (NodeId q : owners) CHECK(q != kNoNode);
      for (NodeId q = 0; static_cast<std::size_t>(q) < t.size(); ++q) {
        CHECK(claim_mask(t, q).popcount() == t.counts(q).total());
      }
    }
  }

  TEST_CASE("serialize format") {
    const auto d = parse_dense("10\n01\n");
    TileTree t(d);
    CHECK(serialize(t) == "stijl-tree v1 2 2\n1 0 1 2 1 2 2 2\n");
    t.add_child(0, {1, 1, 1, 2}, d);
    CHECK(serialize(t) == "stijl-tree v1 2 2\n1 2 1 1 1 2 1 1\n2 0 1 2 1 2 1 1\n");
    CHECK(deserialize(serialize(t)) == t);
  }

  TEST_CASE("toy tree serializes to six post-order lines and round-trips") {
    std::mt19937_64 rng(5);
    const auto d = oracle::random_matrix(rng, 30, 40, 0.3);
    const auto toy = oracle::toy_tree(d);
    const std::string text = serialize(toy.tree);
    CHECK(std::count(text.begin(), text.end(), '\n') == 7);
    const TileTree back = deserialize(text);
    CHECK(back == toy.tree);
    CHECK(serialize(back) == text);
    CHECK(counts_consistent(back, d));
  }

  TEST_CASE("random trees round-trip") {
    std::mt19937_64 rng(6);
    for (int trial = 0; trial < 100; ++trial) {
      const auto d = oracle::random_matrix(rng, 9, 13, 0.5);
      const auto t = oracle::random_tree(rng, d, trial % 9);
      const auto back = deserialize(serialize(t));
      REQUIRE(back == t);
    }
  }

  TEST_CASE("deserialize rejects malformed trees") {
    CHECK_THROWS_AS(deserialize(""), FormatError);
    CHECK_THROWS_AS(deserialize("stijl-tree v2 2 2\n1 0 1 2 1 2 2 2\n"), FormatError);
    CHECK_THROWS_AS(deserialize("stijl-tree v1 2 2\n"), FormatError);
    // Non-numeric field.
    CHECK_THROWS_AS(deserialize("stijl-tree v1 2 2\n1 0 1 2 1 x 2 2\n"), FormatError);
    // Root not last.
    CHECK_THROWS_AS(deserialize("stijl-tree v1 2 2\n1 0 1 2 1 2 1 1\n2 1 1 1 1 2 1 1\n"),
                    FormatError);
    // Root does not cover the data.
    CHECK_THROWS_AS(deserialize("stijl-tree v1 2 2\n1 0 1 1 1 2 2 2\n"), FormatError);
    // Child outside its parent.
    CHECK_THROWS_AS(deserialize("stijl-tree v1 3 3\n1 2 3 3 1 1 1 0\n2 3 1 2 1 3 2 4\n3 0 1 3 1 3 1 1\n"),
                    FormatError);
    // Counts do not partition the cells.
    CHECK_THROWS_AS(deserialize("stijl-tree v1 2 2\n1 0 1 2 1 2 2 1\n"), FormatError);
    // Ids out of sequence.
    CHECK_THROWS_AS(deserialize("stijl-tree v1 2 2\n2 0 1 2 1 2 2 2\n"), FormatError);
    // Not a post-order: the later child (id 2) is listed inside the first's subtree.
    CHECK_THROWS_AS(
        deserialize("stijl-tree v1 4 4\n1 3 1 1 1 1 1 0\n2 4 3 4 3 4 1 3\n3 4 1 2 1 2 1 2\n4 0 1 4 1 4 3 5\n"),
        FormatError);
  }
}
