#include "stijl/findtile.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <thread>

#include "stijl/matrix.hpp"

namespace stijl {

std::string_view to_string(Mode m) { return m == Mode::overlap ? "overlap" : "disjoint"; }

std::string_view to_string(Polarity p) { return p == Polarity::dense ? "dense" : "sparse"; }

Mode parse_mode(std::string_view s) {
  if (s == "overlap") return Mode::overlap;
  if (s == "disjoint") return Mode::disjoint;
  throw std::invalid_argument("unknown mode '" + std::string(s) + "'");
}

namespace {

// A sibling in search coordinates: rows along the scanned axis, columns
// along the enumerated axis.
struct Block {
  int row_lo, row_hi, col_lo, col_hi;
};

// Allowed row runs within 1..n_rows given blocks and the window [c, d].
void allowed_segments(int n_rows, std::span<const Block> blocks, int c, int d,
                      std::vector<Interval>& out, std::vector<Interval>& scratch) {
  scratch.clear();
  for (const Block& b : blocks) {
    if (b.col_lo <= d && c <= b.col_hi) scratch.push_back({b.row_lo, b.row_hi});
  }
  std::sort(scratch.begin(), scratch.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  out.clear();
  int next = 1;
  for (const Interval& f : scratch) {
    if (f.lo > next) out.push_back({next, f.lo - 1});
    next = std::max(next, f.hi + 1);
  }
  if (next <= n_rows) out.push_back({next, n_rows});
}

// The parent's unclaimed cells, laid out so the enumerated axis is the
// shorter one. Column-major: column j occupies [j * rows, (j + 1) * rows).
struct SearchGrid {
  bool transposed = false;
  int rows = 0;
  int cols = 0;
  std::vector<std::uint8_t> ones, zeroes;
  std::vector<Block> blocks;
};

SearchGrid build_grid(const BinaryMatrix& d, const TileTree& t, NodeId x, Mode mode) {
  const Tile xt = t.tile(x);
  const ClaimMask mask = claim_mask(t, x);
  SearchGrid g;
  g.transposed = xt.n_cols() > xt.n_rows();
  g.rows = g.transposed ? xt.n_cols() : xt.n_rows();
  g.cols = g.transposed ? xt.n_rows() : xt.n_cols();
  const std::size_t cells = static_cast<std::size_t>(g.rows) * g.cols;
  g.ones.assign(cells, 0);
  g.zeroes.assign(cells, 0);
  for (int i = xt.row_lo; i <= xt.row_hi; ++i) {
    for (int j = xt.col_lo; j <= xt.col_hi; ++j) {
      if (!mask.unclaimed(i, j)) continue;
      const int li = i - xt.row_lo;
      const int lj = j - xt.col_lo;
      const std::size_t k = g.transposed ? static_cast<std::size_t>(li) * g.rows + lj
                                         : static_cast<std::size_t>(lj) * g.rows + li;
      (d.at(i, j) ? g.ones : g.zeroes)[k] = 1;
    }
  }
  if (mode == Mode::disjoint) {
    for (const NodeId c : t.children(x)) {
      const Tile ct = t.tile(c);
      const Block b{ct.row_lo - xt.row_lo + 1, ct.row_hi - xt.row_lo + 1,
                    ct.col_lo - xt.col_lo + 1, ct.col_hi - xt.col_lo + 1};
      g.blocks.push_back(g.transposed ? Block{b.col_lo, b.col_hi, b.row_lo, b.row_hi} : b);
    }
  }
  return g;
}

// Position of a candidate in the sequential enumeration order.
struct Key {
  int c = 0, d = 0, segment = 0, polarity = 0;
  friend auto operator<=>(const Key&, const Key&) = default;
};

struct Candidate {
  Bits cost = std::numeric_limits<Bits>::infinity();
  Key key;
  Interval rows;
  Polarity polarity = Polarity::dense;
  bool found = false;
};

bool better(const Candidate& a, const Candidate& b) {
  if (!a.found) return false;
  if (!b.found) return true;
  if (a.cost != b.cost) return a.cost < b.cost;
  return a.key < b.key;
}

// Searches every window starting at c = first, first + stride, ...
Candidate search_windows(const SearchGrid& g, Count o, Count z, int first, int stride) {
  Candidate best;
  Scanner scanner;
  const auto rows = static_cast<std::size_t>(g.rows);
  std::vector<Count> p(rows), n(rows), prefix_p(rows + 1, 0), prefix_n(rows + 1, 0);
  std::vector<Interval> segments, scratch;
  for (int c = first; c <= g.cols; c += stride) {
    std::fill(p.begin(), p.end(), 0);
    std::fill(n.begin(), n.end(), 0);
    for (int dc = c; dc <= g.cols; ++dc) {
      const auto* col_ones = g.ones.data() + static_cast<std::size_t>(dc - 1) * rows;
      const auto* col_zeroes = g.zeroes.data() + static_cast<std::size_t>(dc - 1) * rows;
      for (std::size_t i = 0; i < rows; ++i) {
        p[i] += col_ones[i];
        n[i] += col_zeroes[i];
      }
      for (std::size_t i = 0; i < rows; ++i) {
        prefix_p[i + 1] = prefix_p[i] + p[i];
        prefix_n[i + 1] = prefix_n[i] + n[i];
      }
      const CountView all{prefix_p, prefix_n};
      if (g.blocks.empty()) {
        segments.assign(1, Interval{1, g.rows});
      } else {
        allowed_segments(g.rows, g.blocks, c, dc, segments, scratch);
      }
      for (std::size_t s = 0; s < segments.size(); ++s) {
        const CountView view = all.slice(segments[s].lo, segments[s].hi);
        for (int pol = 0; pol < 2; ++pol) {
          const ScanResult r =
              pol == 0 ? scanner.run(view, o, z) : scanner.run(view.swapped(), z, o);
          if (!r.interval) continue;
          Candidate cand;
          cand.found = true;
          cand.cost = r.cost;
          cand.key = {c, dc, static_cast<int>(s), pol};
          cand.rows = {r.interval->lo + segments[s].lo - 1, r.interval->hi + segments[s].lo - 1};
          cand.polarity = pol == 0 ? Polarity::dense : Polarity::sparse;
          if (better(cand, best)) best = cand;
        }
      }
    }
  }
  return best;
}

}  // namespace

SubtileSearchResult find_tile(const BinaryMatrix& d, const TileTree& t, NodeId x,
                              const FindTileOptions& opts) {
  const Tile xt = t.tile(x);
  const CountPair xc = t.counts(x);
  SubtileSearchResult result;
  if (xc.ones == 0 && xc.zeroes == 0) return result;

  const SearchGrid g = build_grid(d, t, x, opts.mode);
  const int threads = std::clamp(opts.threads, 1, g.cols);
  Candidate best;
  if (threads == 1) {
    best = search_windows(g, xc.ones, xc.zeroes, 1, 1);
  } else {
    std::vector<Candidate> partial(threads);
    std::vector<std::thread> pool;
    for (int k = 0; k < threads; ++k) {
      pool.emplace_back([&, k] { partial[k] = search_windows(g, xc.ones, xc.zeroes, k + 1, threads); });
    }
    for (auto& th : pool) th.join();
    for (const auto& cand : partial) {
      if (better(cand, best)) best = cand;
    }
  }
  if (!best.found) return result;

  Tile y;
  if (g.transposed) {
    y = {xt.row_lo + best.key.c - 1, xt.row_lo + best.key.d - 1, xt.col_lo + best.rows.lo - 1,
         xt.col_lo + best.rows.hi - 1};
  } else {
    y = {xt.row_lo + best.rows.lo - 1, xt.row_lo + best.rows.hi - 1, xt.col_lo + best.key.c - 1,
         xt.col_lo + best.key.d - 1};
  }
  result.delta = best.cost - scaled_entropy(xc) + description_length_under(xt);
  result.polarity = best.polarity;
  if (result.delta < -opts.min_gain) {
    result.tile = y;
    // Recount the claimed cells; the scan only reported their cost.
    const ClaimMask mask = claim_mask(t, x);
    for (int i = y.row_lo; i <= y.row_hi; ++i) {
      for (int j = y.col_lo; j <= y.col_hi; ++j) {
        if (!mask.unclaimed(i, j)) continue;
        ++(d.at(i, j) ? result.claimed.ones : result.claimed.zeroes);
      }
    }
  }
  return result;
}

ColumnWindow::ColumnWindow(const ClaimMask& mask, const BinaryMatrix& d)
    : mask_(mask), d_(d) {}

void ColumnWindow::reset(int c) {
  if (c < mask_.region.col_lo || c > mask_.region.col_hi) {
    throw std::out_of_range("window start outside the tile");
  }
  col_lo_ = c;
  col_hi_ = c - 1;
  p_.assign(static_cast<std::size_t>(mask_.region.n_rows()), 0);
  n_.assign(p_.size(), 0);
}

void ColumnWindow::extend() {
  if (col_hi_ >= mask_.region.col_hi) throw std::out_of_range("window already at the tile edge");
  const int col = ++col_hi_;
  const Tile& r = mask_.region;
  for (int i = r.row_lo; i <= r.row_hi; ++i) {
    if (!mask_.unclaimed(i, col)) continue;
    ++(d_.at(i, col) ? p_ : n_)[static_cast<std::size_t>(i - r.row_lo)];
  }
}

CountVectors ColumnWindow::counts() const { return CountVectors(p_, n_); }

CountVectors column_window_counts(const ClaimMask& mask, const BinaryMatrix& d, int c, int d_col) {
  if (d_col < c || d_col > mask.region.col_hi) throw std::out_of_range("window outside the tile");
  ColumnWindow w(mask, d);
  w.reset(c);
  while (w.col_hi() < d_col) w.extend();
  return w.counts();
}

std::vector<Interval> disjoint_row_segments(const Tile& x, std::span<const Tile> siblings, int c,
                                            int d_col) {
  std::vector<Block> blocks;
  for (const Tile& s : siblings) {
    blocks.push_back({s.row_lo - x.row_lo + 1, s.row_hi - x.row_lo + 1, s.col_lo, s.col_hi});
  }
  std::vector<Interval> out, scratch;
  allowed_segments(x.n_rows(), blocks, c, d_col, out, scratch);
  for (auto& seg : out) {
    seg.lo += x.row_lo - 1;
    seg.hi += x.row_lo - 1;
  }
  return out;
}

}  // namespace stijl
