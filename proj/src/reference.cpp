#include "stijl/reference.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "stijl/error.hpp"

namespace stijl::reference {

namespace {

// Natural-log form of the scaled entropy, converted to bits at the end.
double entropy_bits(Count p, Count n) {
  if (p == 0 || n == 0) return 0.0;
  const double total = static_cast<double>(p + n);
  const double nats = static_cast<double>(p) * std::log(total / static_cast<double>(p)) +
                      static_cast<double>(n) * std::log(total / static_cast<double>(n));
  return nats / std::log(2.0);
}

// Strictly denser than the background: u / (u + w) > o / (o + z).
bool denser(Count u, Count w, Count o, Count z) {
  if (u + w == 0) return false;
  return static_cast<long double>(u) * static_cast<long double>(o + z) >
         static_cast<long double>(o) * static_cast<long double>(u + w);
}

void collect_post_order(const TileTree& t, NodeId x, std::vector<NodeId>& out) {
  for (const NodeId c : t.children(x)) collect_post_order(t, c, out);
  out.push_back(x);
}

}  // namespace

ScanResult naive_scan(const CountVectors& v, Count o, Count z) {
  const int m = v.size();
  Count sum_p = 0, sum_n = 0;
  for (int i = 0; i < m; ++i) {
    sum_p += v.p()[i];
    sum_n += v.n()[i];
  }
  if (sum_p > o || sum_n > z) throw CountError("count vectors exceed the parent totals");

  ScanResult best;
  for (int b = 1; b <= m; ++b) {
    Count u = 0, w = 0;
    for (int a = b; a >= 1; --a) {
      u += v.p()[a - 1];
      w += v.n()[a - 1];
      if (!denser(u, w, o, z)) continue;
      const double c = entropy_bits(u, w) + entropy_bits(o - u, z - w);
      if (c < best.cost) {
        best.cost = c;
        best.interval = Interval{a, b};
      }
    }
  }
  return best;
}

SubtileSearchResult naive_find_tile(const BinaryMatrix& d, const TileTree& t, NodeId x, Mode mode,
                                    Bits min_gain) {
  std::vector<NodeId> order;
  collect_post_order(t, TileTree::root(), order);
  std::vector<Tile> earlier;
  for (const NodeId q : order) {
    if (q == x) break;
    earlier.push_back(t.tile(q));
  }

  const Tile xt = t.tile(x);
  const int rows = xt.n_rows();
  const int cols = xt.n_cols();
  // Cumulative counts of unclaimed 1s and 0s over x, (rows+1) x (cols+1).
  std::vector<Count> ones((rows + 1) * static_cast<std::size_t>(cols + 1), 0);
  std::vector<Count> zeroes(ones.size(), 0);
  auto at = [&](std::vector<Count>& a, int i, int j) -> Count& {
    return a[static_cast<std::size_t>(i) * (cols + 1) + j];
  };
  for (int i = 1; i <= rows; ++i) {
    for (int j = 1; j <= cols; ++j) {
      const int gi = xt.row_lo + i - 1;
      const int gj = xt.col_lo + j - 1;
      bool taken = false;
      for (const Tile& e : earlier) {
        if (e.contains(gi, gj)) {
          taken = true;
          break;
        }
      }
      const Count one = !taken && d.at(gi, gj) ? 1 : 0;
      const Count zero = !taken && !d.at(gi, gj) ? 1 : 0;
      at(ones, i, j) = one + at(ones, i - 1, j) + at(ones, i, j - 1) - at(ones, i - 1, j - 1);
      at(zeroes, i, j) =
          zero + at(zeroes, i - 1, j) + at(zeroes, i, j - 1) - at(zeroes, i - 1, j - 1);
    }
  }
  const Count o = at(ones, rows, cols);
  const Count z = at(zeroes, rows, cols);
  const double before = entropy_bits(o, z);
  const double model = 2.0 + 5.0 * std::log(static_cast<double>(rows)) / std::log(2.0) +
                       5.0 * std::log(static_cast<double>(cols)) / std::log(2.0);

  std::vector<Tile> siblings;
  if (mode == Mode::disjoint) {
    for (const NodeId c : t.children(x)) siblings.push_back(t.tile(c));
  }

  SubtileSearchResult best;
  for (int a = 1; a <= rows; ++a) {
    for (int b = a; b <= rows; ++b) {
      for (int c = 1; c <= cols; ++c) {
        for (int e = c; e <= cols; ++e) {
          const Tile y{xt.row_lo + a - 1, xt.row_lo + b - 1, xt.col_lo + c - 1, xt.col_lo + e - 1};
          bool blocked = false;
          for (const Tile& s : siblings) {
            if (s.intersects(y)) {
              blocked = true;
              break;
            }
          }
          if (blocked) continue;
          const Count u = at(ones, b, e) - at(ones, a - 1, e) - at(ones, b, c - 1) +
                          at(ones, a - 1, c - 1);
          const Count w = at(zeroes, b, e) - at(zeroes, a - 1, e) - at(zeroes, b, c - 1) +
                          at(zeroes, a - 1, c - 1);
          const double delta = entropy_bits(u, w) + entropy_bits(o - u, z - w) - before + model;
          if (delta < best.delta) {
            best.delta = delta;
            best.tile = y;
            best.claimed = {u, w};
            best.polarity = denser(u, w, o, z) ? Polarity::dense : Polarity::sparse;
          }
        }
      }
    }
  }
  if (!(best.delta < -min_gain)) {
    best.tile.reset();
    best.claimed = {};
  }
  return best;
}

BinaryMatrix generate_planted(const PlantedSpec& spec) {
  if (spec.n_rows < 1 || spec.n_cols < 1) throw std::invalid_argument("planted dims must be positive");
  const Tile full{1, spec.n_rows, 1, spec.n_cols};
  for (const auto& layer : spec.layers) {
    if (!layer.rect.valid() || !full.covers(layer.rect)) {
      throw std::invalid_argument("planted rectangle outside the data");
    }
    if (!(layer.density >= 0.0 && layer.density <= 1.0)) {
      throw std::invalid_argument("planted density outside [0, 1]");
    }
  }
  std::vector<double> density(static_cast<std::size_t>(spec.n_rows) * spec.n_cols, 0.0);
  for (const auto& layer : spec.layers) {
    const Tile& r = layer.rect;
    for (int i = r.row_lo; i <= r.row_hi; ++i) {
      for (int j = r.col_lo; j <= r.col_hi; ++j) {
        density[static_cast<std::size_t>(i - 1) * spec.n_cols + (j - 1)] = layer.density;
      }
    }
  }
  // mt19937_64 is fully specified by the standard; the distributions are not.
  std::mt19937_64 rng(spec.seed);
  std::vector<std::uint8_t> cells(density.size());
  for (std::size_t k = 0; k < cells.size(); ++k) {
    const double draw = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    cells[k] = draw < density[k] ? 1 : 0;
  }
  return BinaryMatrix(spec.n_rows, spec.n_cols, std::move(cells));
}

PlantedSpec parse_planted_spec(std::istream& in) {
  PlantedSpec spec;
  bool have_dims = false;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string keyword;
    if (!(ls >> keyword) || keyword[0] == '#') continue;
    std::string extra;
    if (keyword == "dims") {
      std::string seed_kw;
      if (have_dims || !(ls >> spec.n_rows >> spec.n_cols >> seed_kw >> spec.seed) ||
          seed_kw != "seed" || (ls >> extra)) {
        throw FormatError("expected 'dims N M seed S' once", line_no);
      }
      have_dims = true;
    } else if (keyword == "rect") {
      if (!have_dims) throw FormatError("'rect' before 'dims'", line_no);
      PlantedLayer layer;
      std::string density_kw;
      if (!(ls >> layer.rect.row_lo >> layer.rect.row_hi >> layer.rect.col_lo >>
            layer.rect.col_hi >> density_kw >> layer.density) ||
          density_kw != "density" || (ls >> extra)) {
        throw FormatError("expected 'rect a b c d density f'", line_no);
      }
      spec.layers.push_back(layer);
    } else {
      throw FormatError("unknown keyword '" + keyword + "'", line_no);
    }
  }
  if (!have_dims) throw FormatError("missing 'dims' line", line_no + 1);
  return spec;
}

PlantedSpec parse_planted_spec(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_planted_spec(in);
}

std::string format_planted_spec(const PlantedSpec& spec) {
  std::ostringstream os;
  os.precision(std::numeric_limits<double>::max_digits10);
  os << "dims " << spec.n_rows << ' ' << spec.n_cols << " seed " << spec.seed << '\n';
  for (const auto& l : spec.layers) {
    os << "rect " << l.rect.row_lo << ' ' << l.rect.row_hi << ' ' << l.rect.col_lo << ' '
       << l.rect.col_hi << " density " << l.density << '\n';
  }
  return os.str();
}

PlantedSpec mondrian_spec(std::uint64_t seed) {
  PlantedSpec s;
  s.n_rows = 240;
  s.n_cols = 240;
  s.seed = seed;
  // Blocks sit well clear of the bars; a block next to a bar segment invites
  // a merged tile with a carved-out gap in disjoint mode.
  s.layers = {
      {{1, 240, 1, 240}, 0.05},      // background
      {{1, 240, 76, 85}, 0.9},       // vertical bar
      {{151, 160, 1, 240}, 0.9},     // horizontal bar, crosses the vertical one
      {{21, 110, 131, 220}, 0.6},    // large block, top right
      {{191, 235, 11, 45}, 0.8},     // block, bottom left
      {{191, 230, 151, 210}, 0.3},   // pale block, bottom right
  };
  return s;
}

}  // namespace stijl::reference
