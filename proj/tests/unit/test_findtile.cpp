#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "stijl/encoding.hpp"
#include "stijl/findtile.hpp"
#include "stijl/matrix.hpp"
#include "stijl/reference.hpp"

using namespace stijl;

namespace {

BinaryMatrix block_matrix(int n_rows, int n_cols, const Tile& block) {
  auto cells = std::vector<std::uint8_t>(static_cast<std::size_t>(n_rows) * n_cols, 0);
  for (int i = block.row_lo; i <= block.row_hi; ++i) {
    for (int j = block.col_lo; j <= block.col_hi; ++j) cells[static_cast<std::size_t>(i - 1) * n_cols + (j - 1)] = 1;
  }
  return BinaryMatrix(n_rows, n_cols, std::move(cells));
}

TileTree transposed_tree(const TileTree& t, const BinaryMatrix& dt) {
  TileTree out(dt);
  std::vector<NodeId> map(t.size(), kNoNode);
  map[0] = 0;
  // Replay insertions in handle order; handles are assigned at insertion.
  for (NodeId q = 1; static_cast<std::size_t>(q) < t.size(); ++q) {
    map[q] = out.add_child(map[t.parent(q)], t.tile(q).transposed(), dt).node;
  }
  return out;
}

}  // namespace

TEST_SUITE("findtile") {
  TEST_CASE("all-zero parent has no improving subtile") {
    const auto d = BinaryMatrix::zeros(12, 9);
    const TileTree t(d);
    CHECK_FALSE(find_tile(d, t, 0).tile);
    CHECK_FALSE(find_tile(d, t, 0, {Mode::disjoint}).tile);
    CHECK_FALSE(reference::naive_find_tile(d, t, 0, Mode::overlap).tile);
  }

  TEST_CASE("all-ones parent has no improving subtile") {
    const auto d = block_matrix(7, 11, {1, 7, 1, 11});
    const TileTree t(d);
    CHECK_FALSE(find_tile(d, t, 0).tile);
  }

  TEST_CASE("planted block is found exactly") {
    const Tile block{11, 20, 8, 17};
    const auto d = block_matrix(30, 30, block);
    const TileTree t(d);
    const auto r = find_tile(d, t, 0);
    REQUIRE(r.tile);
    CHECK(*r.tile == block);
    CHECK(r.polarity == Polarity::dense);
    CHECK(r.claimed == CountPair{100, 0});
    const auto n = reference::naive_find_tile(d, t, 0, Mode::overlap);
    REQUIRE(n.tile);
    CHECK(*n.tile == block);
    CHECK(r.delta == doctest::Approx(n.delta).epsilon(1e-12));
  }

  TEST_CASE("planted hole is found with sparse polarity") {
    auto cells = std::vector<std::uint8_t>(20 * 16, 1);
    for (int i = 5; i <= 12; ++i) {
      for (int j = 3; j <= 9; ++j) cells[static_cast<std::size_t>(i - 1) * 16 + (j - 1)] = 0;
    }
    const BinaryMatrix d(20, 16, cells);
    const TileTree t(d);
    const auto r = find_tile(d, t, 0);
    REQUIRE(r.tile);
    CHECK(*r.tile == Tile{5, 12, 3, 9});
    CHECK(r.polarity == Polarity::sparse);
  }

  TEST_CASE("delta equals the change in total length") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 60; ++trial) {
      const auto d = oracle::random_structured(rng, 14, 11);
      auto t = oracle::random_tree(rng, d, trial % 4);
      const NodeId x = std::uniform_int_distribution<NodeId>(0, static_cast<NodeId>(t.size()) - 1)(rng);
      const auto r = find_tile(d, t, x);
      if (!r.tile) continue;
      const double before = oracle::slow_total_length(t, d);
      const auto ins = t.add_child(x, *r.tile, d);
      CHECK(ins.claimed == r.claimed);
      CHECK(oracle::slow_total_length(t, d) - before == doctest::Approx(r.delta).epsilon(1e-9));
    }
  }

  TEST_CASE("matches the naive oracle in both modes") {
    std::mt19937_64 rng(32);
    for (int trial = 0; trial < 200; ++trial) {
      const int rows = std::uniform_int_distribution<int>(1, 15)(rng);
      const int cols = std::uniform_int_distribution<int>(1, 12)(rng);
      const auto d = trial % 2 ? oracle::random_contrast(rng, rows, cols)
                               : oracle::random_matrix(rng, rows, cols, 0.3);
      const auto t = oracle::random_tree(rng, d, trial % 5);
      const NodeId x = std::uniform_int_distribution<NodeId>(0, static_cast<NodeId>(t.size()) - 1)(rng);
      for (Mode mode : {Mode::overlap, Mode::disjoint}) {
        const auto fast = find_tile(d, t, x, {mode});
        const auto slow = reference::naive_find_tile(d, t, x, mode);
        REQUIRE(fast.tile.has_value() == slow.tile.has_value());
        if (slow.tile) REQUIRE(fast.delta == doctest::Approx(slow.delta).epsilon(1e-9));
      }
    }
  }

  TEST_CASE("disjoint candidates never meet a sibling") {
    std::mt19937_64 rng(33);
    for (int trial = 0; trial < 100; ++trial) {
      const auto d = oracle::random_structured(rng, 18, 14);
      const auto t = oracle::random_tree(rng, d, 3);
      const auto r = find_tile(d, t, 0, {Mode::disjoint});
      if (!r.tile) continue;
      for (NodeId c : t.children(0)) CHECK_FALSE(r.tile->intersects(t.tile(c)));
    }
  }

  TEST_CASE("overlap never does worse than disjoint") {
    std::mt19937_64 rng(34);
    int compared = 0;
    for (int trial = 0; trial < 2000 && compared < 100; ++trial) {
      const auto d = oracle::random_structured(rng, 16, 13);
      TileTree t(d);
      const auto first = find_tile(d, t, 0);
      if (!first.tile) continue;
      t.add_child(0, *first.tile, d);
      const auto ov = find_tile(d, t, 0, {Mode::overlap, -1e300});
      const auto dj = find_tile(d, t, 0, {Mode::disjoint, -1e300});
      CHECK(ov.delta <= dj.delta + 1e-9);
      ++compared;
    }
    CHECK(compared == 100);
  }

  TEST_CASE("transposed instance gives the same delta") {
    std::mt19937_64 rng(35);
    for (int trial = 0; trial < 80; ++trial) {
      const auto d = oracle::random_structured(rng, 13, 9);
      const auto t = oracle::random_tree(rng, d, trial % 4);
      const auto dt = d.transposed();
      const auto tt = transposed_tree(t, dt);
      for (NodeId x = 0; static_cast<std::size_t>(x) < t.size(); ++x) {
        for (Mode mode : {Mode::overlap, Mode::disjoint}) {
          const auto a = find_tile(d, t, x, {mode});
          const auto b = find_tile(dt, tt, x, {mode});
          REQUIRE(a.tile.has_value() == b.tile.has_value());
          if (a.tile) CHECK(a.delta == doctest::Approx(b.delta).epsilon(1e-9));
        }
      }
    }
  }

  TEST_CASE("thread count does not change the result") {
    std::mt19937_64 rng(36);
    for (int trial = 0; trial < 30; ++trial) {
      const auto d = oracle::random_structured(rng, 25, 20);
      const auto t = oracle::random_tree(rng, d, 2);
      const auto one = find_tile(d, t, 0, {Mode::overlap, kDefaultMinGain, 1});
      for (int threads : {2, 3, 7, 64}) {
        const auto many = find_tile(d, t, 0, {Mode::overlap, kDefaultMinGain, threads});
        REQUIRE(one.tile == many.tile);
        CHECK(one.delta == many.delta);
        CHECK(one.polarity == many.polarity);
      }
    }
  }

  TEST_CASE("min_gain gates acceptance") {
    const auto d = block_matrix(10, 10, {3, 6, 3, 6});
    const TileTree t(d);
    const auto r = find_tile(d, t, 0);
    REQUIRE(r.tile);
    const auto gated = find_tile(d, t, 0, {Mode::overlap, -r.delta + 1.0});
    CHECK_FALSE(gated.tile);
    CHECK(gated.delta == r.delta);
  }

  TEST_CASE("column window counts") {
    std::mt19937_64 rng(37);
    const auto d = oracle::random_matrix(rng, 9, 7, 0.5);
    TileTree t(d);
    SUBCASE("single column of an unclaimed parent") {
      const auto v = column_window_counts(claim_mask(t, 0), d, 3, 3);
      for (int i = 1; i <= 9; ++i) {
        CHECK(v.p()[i - 1] == (d.at(i, 3) ? 1 : 0));
        CHECK(v.n()[i - 1] == (d.at(i, 3) ? 0 : 1));
      }
    }
    SUBCASE("claimed column contributes nothing") {
      t.add_child(0, {1, 9, 4, 4}, d);
      const auto v = column_window_counts(claim_mask(t, 0), d, 4, 4);
      for (int i = 0; i < 9; ++i) {
        CHECK(v.p()[i] == 0);
        CHECK(v.n()[i] == 0);
      }
    }
  }

  TEST_CASE("column window counts match a recount") {
    std::mt19937_64 rng(38);
    for (int trial = 0; trial < 100; ++trial) {
      const auto d = oracle::random_matrix(rng, 11, 10, 0.4);
      const auto t = oracle::random_tree(rng, d, 4);
      const NodeId x = std::uniform_int_distribution<NodeId>(0, static_cast<NodeId>(t.size()) - 1)(rng);
      const Tile xt = t.tile(x);
      const auto owners = oracle::cell_owners(t, d.n_rows(), d.n_cols());
      const auto mask = claim_mask(t, x);
      ColumnWindow w(mask, d);
      const int c = std::uniform_int_distribution<int>(xt.col_lo, xt.col_hi)(rng);
      w.reset(c);
      for (int e = c; e <= xt.col_hi; ++e) {
        w.extend();
        const auto v = w.counts();
        for (int i = xt.row_lo; i <= xt.row_hi; ++i) {
          Count ones = 0, zeroes = 0;
          for (int j = c; j <= e; ++j) {
            if (owners[static_cast<std::size_t>(i - 1) * d.n_cols() + (j - 1)] != x) continue;
            ++(d.at(i, j) ? ones : zeroes);
          }
          REQUIRE(v.p()[i - xt.row_lo] == ones);
          REQUIRE(v.n()[i - xt.row_lo] == zeroes);
        }
        CHECK(column_window_counts(mask, d, c, e).p()[0] == v.p()[0]);
      }
    }
  }

  TEST_CASE("disjoint row segments") {
    const Tile x{3, 12, 1, 8};
    SUBCASE("no siblings") {
      const auto s = disjoint_row_segments(x, {}, 1, 8);
      REQUIRE(s.size() == 1);
      CHECK(s[0] == Interval{3, 12});
    }
    SUBCASE("a full-width sibling in the middle") {
      const std::vector<Tile> sib{{6, 8, 1, 8}};
      const auto s = disjoint_row_segments(x, sib, 2, 3);
      REQUIRE(s.size() == 2);
      CHECK(s[0] == Interval{3, 5});
      CHECK(s[1] == Interval{9, 12});
    }
    SUBCASE("a sibling outside the window is ignored") {
      const std::vector<Tile> sib{{6, 8, 5, 8}};
      const auto s = disjoint_row_segments(x, sib, 1, 4);
      REQUIRE(s.size() == 1);
    }
  }

  TEST_CASE("disjoint row segments match a per-row check") {
    std::mt19937_64 rng(39);
    for (int trial = 0; trial < 300; ++trial) {
      const Tile x{4, 4 + std::uniform_int_distribution<int>(0, 15)(rng), 2, 11};
      std::vector<Tile> sibs;
      const int k = std::uniform_int_distribution<int>(0, 4)(rng);
      for (int s = 0; s < k; ++s) sibs.push_back(oracle::random_subtile(rng, x));
      const int c = std::uniform_int_distribution<int>(2, 11)(rng);
      const int e = std::uniform_int_distribution<int>(c, 11)(rng);
      std::vector<bool> ok(static_cast<std::size_t>(x.row_hi + 1), false);
      for (int i = x.row_lo; i <= x.row_hi; ++i) {
        ok[i] = true;
        for (const Tile& s : sibs) {
          if (s.row_lo <= i && i <= s.row_hi && s.col_lo <= e && c <= s.col_hi) ok[i] = false;
        }
      }
      std::vector<bool> got(ok.size(), false);
      const auto segs = disjoint_row_segments(x, sibs, c, e);
      for (std::size_t k2 = 0; k2 < segs.size(); ++k2) {
        for (int i = segs[k2].lo; i <= segs[k2].hi; ++i) got[i] = true;
        // Maximal: neighbours outside the segment are blocked or out of range.
        if (segs[k2].lo > x.row_lo) CHECK_FALSE(ok[segs[k2].lo - 1]);
        if (segs[k2].hi < x.row_hi) CHECK_FALSE(ok[segs[k2].hi + 1]);
      }
      REQUIRE(got == ok);
    }
  }

  TEST_CASE("mode names") {
    CHECK(parse_mode("overlap") == Mode::overlap);
    CHECK(parse_mode("disjoint") == Mode::disjoint);
    CHECK_THROWS_AS(parse_mode("both"), std::invalid_argument);
    CHECK(to_string(Mode::disjoint) == "disjoint");
    CHECK(to_string(Polarity::sparse) == "sparse");
  }
}
