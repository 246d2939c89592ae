#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "stijl/error.hpp"
#include "stijl/reference.hpp"

using namespace stijl;
using namespace stijl::reference;

TEST_SUITE("reference") {
  TEST_CASE("naive scan examples") {
    auto r = naive_scan(CountVectors({1}, {0}), 1, 1);
    REQUIRE(r.interval);
    CHECK(*r.interval == Interval{1, 1});
    CHECK(r.cost == doctest::Approx(0.0));
    CHECK_FALSE(naive_scan(CountVectors({0, 0, 0}, {1, 2, 3}), 2, 6).interval);
    r = naive_scan(CountVectors({3, 0, 3}, {0, 3, 0}), 6, 3);
    REQUIRE(r.interval);
    CHECK(*r.interval == Interval{1, 1});
    CHECK(r.cost == doctest::Approx(6.0));
  }

  TEST_CASE("naive find tile on a planted block") {
    std::vector<std::uint8_t> cells(12 * 10, 0);
    for (int i = 3; i <= 7; ++i) {
      for (int j = 2; j <= 6; ++j) cells[(i - 1) * 10 + (j - 1)] = 1;
    }
    const BinaryMatrix d(12, 10, cells);
    const TileTree t(d);
    const auto r = naive_find_tile(d, t, 0, Mode::overlap);
    REQUIRE(r.tile);
    CHECK(*r.tile == Tile{3, 7, 2, 6});
    CHECK_FALSE(naive_find_tile(BinaryMatrix::zeros(5, 5), TileTree(BinaryMatrix::zeros(5, 5)), 0,
                                Mode::overlap)
                    .tile);
  }

  TEST_CASE("naive find tile delta is the change in total length") {
    std::mt19937_64 rng(61);
    for (int trial = 0; trial < 30; ++trial) {
      const auto d = oracle::random_structured(rng, 10, 8);
      auto t = oracle::random_tree(rng, d, 2);
      const auto r = naive_find_tile(d, t, 0, Mode::overlap);
      if (!r.tile) continue;
      const double before = oracle::slow_total_length(t, d);
      t.add_child(0, *r.tile, d);
      CHECK(oracle::slow_total_length(t, d) - before == doctest::Approx(r.delta).epsilon(1e-9));
    }
  }

  TEST_CASE("single-layer generators") {
    PlantedSpec s{20, 30, 5, {{{1, 20, 1, 30}, 0.0}}};
    CHECK(generate_planted(s).total_ones() == 0);
    s.layers[0].density = 1.0;
    CHECK(generate_planted(s).total_ones() == 600);
    s.layers.clear();
    CHECK(generate_planted(s).total_ones() == 0);
  }

  TEST_CASE("generator is deterministic") {
    const auto a = generate_planted(mondrian_spec(4));
    const auto b = generate_planted(mondrian_spec(4));
    const auto c = generate_planted(mondrian_spec(5));
    CHECK(a == b);
    CHECK_FALSE(a == c);
  }

  TEST_CASE("generator output for a fixed seed") {
    // mt19937_64 with seed 1: first outputs shifted to 53 bits, compared to 0.5.
    std::mt19937_64 rng(1);
    std::string expect;
    for (int k = 0; k < 8; ++k) expect += (static_cast<double>(rng() >> 11) * 0x1.0p-53 < 0.5) ? '1' : '0';
    const auto d = generate_planted({1, 8, 1, {{{1, 1, 1, 8}, 0.5}}});
    CHECK(d.to_dense() == expect + "\n");
  }

  TEST_CASE("mondrian layers have their planted densities") {
    const auto spec = mondrian_spec(6);
    const auto d = generate_planted(spec);
    // Cells owned by each layer: the last layer covering them.
    std::vector<Count> ones(spec.layers.size(), 0), cells(spec.layers.size(), 0);
    for (int i = 1; i <= spec.n_rows; ++i) {
      for (int j = 1; j <= spec.n_cols; ++j) {
        for (std::size_t k = spec.layers.size(); k-- > 0;) {
          if (spec.layers[k].rect.contains(i, j)) {
            ++cells[k];
            ones[k] += d.at(i, j);
            break;
          }
        }
      }
    }
    for (std::size_t k = 0; k < spec.layers.size(); ++k) {
      REQUIRE(cells[k] > 0);
      const double f = static_cast<double>(ones[k]) / static_cast<double>(cells[k]);
      CHECK(std::abs(f - spec.layers[k].density) <= 0.03);
    }
  }

  TEST_CASE("spec text round-trips") {
    const auto spec = mondrian_spec(9);
    const auto back = parse_planted_spec(format_planted_spec(spec));
    CHECK(back.n_rows == spec.n_rows);
    CHECK(back.n_cols == spec.n_cols);
    CHECK(back.seed == spec.seed);
    REQUIRE(back.layers.size() == spec.layers.size());
    for (std::size_t k = 0; k < spec.layers.size(); ++k) {
      CHECK(back.layers[k].rect == spec.layers[k].rect);
      CHECK(back.layers[k].density == spec.layers[k].density);
    }
    CHECK(generate_planted(back) == generate_planted(spec));
  }

  TEST_CASE("spec parse errors") {
    CHECK_THROWS_AS(parse_planted_spec(""), FormatError);
    CHECK_THROWS_AS(parse_planted_spec("rect 1 2 1 2 density 0.5\n"), FormatError);
    CHECK_THROWS_AS(parse_planted_spec("dims 4 4 seed\n"), FormatError);
    CHECK_THROWS_AS(parse_planted_spec("dims 4 4 seed 1\nrect 1 2 1 density 0.5\n"), FormatError);
    CHECK_THROWS_AS(parse_planted_spec("dims 4 4 seed 1\nblob\n"), FormatError);
    try {
      parse_planted_spec("dims 4 4 seed 1\n\nrect 1 2 x 2 density 0.5\n");
      FAIL("expected a format error");
    } catch (const FormatError& e) {
      CHECK(e.line() == 3);
    }
    const auto s = parse_planted_spec("# comment\ndims 4 4 seed 1\nrect 1 9 1 2 density 0.5\n");
    CHECK_THROWS_AS(generate_planted(s), std::invalid_argument);
    const auto s2 = parse_planted_spec("dims 4 4 seed 1\nrect 1 2 1 2 density 1.5\n");
    CHECK_THROWS_AS(generate_planted(s2), std::invalid_argument);
  }
}
