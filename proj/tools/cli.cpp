#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>

#include "stijl/encoding.hpp"
#include "stijl/error.hpp"
#include "stijl/findtile.hpp"
#include "stijl/matrix.hpp"
#include "stijl/miner.hpp"
#include "stijl/ordering.hpp"
#include "stijl/reference.hpp"
#include "stijl/render.hpp"
#include "stijl/tiletree.hpp"

namespace stijl::cli {

namespace {

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct OutputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct MismatchError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

BinaryMatrix read_matrix(const std::string& path, const std::string& format) {
  const std::string text = read_file(path);
  try {
    return format == "sparse" ? parse_sparse(text) : parse_dense(text);
  } catch (const FormatError& e) {
    throw InputError(path + ": " + e.what());
  }
}

TileTree read_tree(const std::string& path) {
  const std::string text = read_file(path);
  try {
    return deserialize(text);
  } catch (const FormatError& e) {
    throw InputError(path + ": " + e.what());
  }
}

// Writes through a temporary file so a reader never sees a partial file.
void write_file(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw OutputError("cannot write '" + path + "'");
    out << content;
    out.flush();
    if (!out) throw OutputError("write to '" + path + "' failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw OutputError("cannot write '" + path + "': " + ec.message());
}

std::string fixed(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

struct Stats {
  int n_rows = 0, n_cols = 0;
  double percent_ones = 0.0;
  Bits baseline_bits = 0.0, total_bits = 0.0;
  double l_percent = 100.0;
  std::size_t tiles = 0;
  double wall_time = 0.0;
};

Stats make_stats(const BinaryMatrix& d, const TileTree& t, Bits total, double wall) {
  Stats s;
  s.n_rows = d.n_rows();
  s.n_cols = d.n_cols();
  s.percent_ones = 100.0 * static_cast<double>(d.total_ones()) / static_cast<double>(d.n_cells());
  s.baseline_bits = baseline_length(d);
  s.total_bits = total;
  s.l_percent = relative_compression(total, s.baseline_bits);
  s.tiles = t.size();
  s.wall_time = wall;
  return s;
}

void print_stats(std::ostream& out, const Stats& s) {
  out << "n_rows: " << s.n_rows << '\n'
      << "n_cols: " << s.n_cols << '\n'
      << "percent_ones: " << fixed(s.percent_ones, 4) << '\n'
      << "baseline_bits: " << fixed(s.baseline_bits) << '\n'
      << "total_bits: " << fixed(s.total_bits) << '\n'
      << "l_percent: " << fixed(s.l_percent, 4) << '\n'
      << "tiles: " << s.tiles << '\n'
      << "wall_time_s: " << fixed(s.wall_time, 3) << '\n';
}

nlohmann::ordered_json stats_json(const Stats& s) {
  nlohmann::ordered_json j;
  j["n_rows"] = s.n_rows;
  j["n_cols"] = s.n_cols;
  j["percent_ones"] = s.percent_ones;
  j["baseline_bits"] = s.baseline_bits;
  j["total_bits"] = s.total_bits;
  j["l_percent"] = s.l_percent;
  j["tiles"] = s.tiles;
  j["wall_time_s"] = s.wall_time;
  return j;
}

struct MineArgs {
  std::string input, format = "dense", mode = "overlap", strategy = "greedy", order = "none";
  std::optional<int> max_tiles;
  double min_gain = kDefaultMinGain;
  std::string out_tree, out_svg, out_ordered, stats_json;
  bool emit_steps = false;
  int threads = 1;
  int cell_size = 4;
  bool no_ones = false;
};

int do_mine(const MineArgs& a, std::ostream& out, std::ostream& err) {
  if (a.emit_steps && a.out_tree.empty()) throw CLI::ValidationError("--emit-steps needs --out-tree");
  const auto t0 = std::chrono::steady_clock::now();
  BinaryMatrix d = read_matrix(a.input, a.format);
  if (a.order == "spectral") {
    const OrderingResult o = spectral_order_or_identity(d);
    if (o.degenerate) err << "warning: all-zero matrix left unordered\n";
    d = apply_permutation(d, o);
    if (!a.out_ordered.empty()) write_file(a.out_ordered, d.to_dense());
  }

  MinerConfig cfg;
  cfg.mode = parse_mode(a.mode);
  cfg.strategy = parse_strategy(a.strategy);
  cfg.max_tiles = a.max_tiles;
  cfg.min_gain = a.min_gain;
  cfg.emit_steps = a.emit_steps;
  cfg.threads = a.threads;
  const StepSink sink = [&](int k, const TileTree& t) {
    write_file(a.out_tree + ".step-" + std::to_string(k), serialize(t));
  };
  const MiningResult r = mine(d, cfg, sink);
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  if (!a.out_tree.empty()) write_file(a.out_tree, serialize(r.tree));
  if (!a.out_svg.empty()) {
    RenderOptions ro;
    ro.cell_size = a.cell_size;
    ro.show_ones = !a.no_ones;
    write_file(a.out_svg, render_svg(d, r.tree, ro));
  }
  const Stats s = make_stats(d, r.tree, r.total_bits, wall);
  print_stats(out, s);
  if (!a.stats_json.empty()) write_file(a.stats_json, stats_json(s).dump(2) + "\n");
  return kOk;
}

struct BenchArgs {
  std::string input, format = "dense", mode = "overlap";
  bool naive = false;
  int threads = 1;
  int repeat = 3;
  int rows = 200, cols = 32;
  double density = 0.2;
  std::uint64_t seed = 1;
};

std::string describe(const SubtileSearchResult& r) {
  if (!r.tile) return "none";
  std::ostringstream os;
  os << *r.tile;
  return os.str();
}

int do_bench(const BenchArgs& a, std::ostream& out) {
  BinaryMatrix d;
  if (!a.input.empty()) {
    d = read_matrix(a.input, a.format);
  } else {
    reference::PlantedSpec spec;
    spec.n_rows = a.rows;
    spec.n_cols = a.cols;
    spec.seed = a.seed;
    spec.layers = {{{1, a.rows, 1, a.cols}, a.density}};
    d = reference::generate_planted(spec);
  }
  const TileTree t(d);
  const Mode mode = parse_mode(a.mode);

  using Clock = std::chrono::steady_clock;
  auto time_it = [&](auto&& fn) {
    double best = 1e300;
    SubtileSearchResult r;
    for (int k = 0; k < std::max(1, a.repeat); ++k) {
      const auto s = Clock::now();
      r = fn();
      best = std::min(best, std::chrono::duration<double>(Clock::now() - s).count());
    }
    return std::pair{r, best};
  };
  const auto [fast, fast_s] =
      time_it([&] { return find_tile(d, t, TileTree::root(), {mode, kDefaultMinGain, a.threads}); });

  out << "matrix: " << d.n_rows() << "x" << d.n_cols() << "\n";
  out << "mode: " << to_string(mode) << "\n";
  if (!a.naive) {
    out << "method  seconds      delta_bits         tile\n";
    out << "fast    " << fixed(fast_s) << "  " << fixed(fast.delta) << "  " << describe(fast) << "\n";
    return kOk;
  }
  const auto [slow, slow_s] = time_it(
      [&] { return reference::naive_find_tile(d, t, TileTree::root(), mode, kDefaultMinGain); });
  const bool agree = fast.tile.has_value() == slow.tile.has_value() &&
                     (!fast.tile || std::abs(fast.delta - slow.delta) <= 1e-6);
  if (!agree) {
    throw MismatchError("fast and naive searches disagree: " + describe(fast) + " " +
                        fixed(fast.delta) + " vs " + describe(slow) + " " + fixed(slow.delta));
  }
  out << "method  seconds      delta_bits         tile\n";
  out << "fast    " << fixed(fast_s) << "  " << fixed(fast.delta) << "  " << describe(fast) << "\n";
  out << "naive   " << fixed(slow_s) << "  " << fixed(slow.delta) << "  " << describe(slow) << "\n";
  out << "speedup: " << fixed(slow_s / std::max(fast_s, 1e-9), 2) << "\n";
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Mine hierarchical tile trees from ordered binary matrices"};
  app.name("stijl");
  app.require_subcommand(1);

  MineArgs mine_args;
  auto* mine_cmd = app.add_subcommand("mine", "Mine a tile tree");
  mine_cmd->add_option("--input", mine_args.input, "Input matrix")->required();
  mine_cmd->add_option("--format", mine_args.format)->check(CLI::IsMember({"dense", "sparse"}));
  mine_cmd->add_option("--mode", mine_args.mode)->check(CLI::IsMember({"overlap", "disjoint"}));
  mine_cmd->add_option("--strategy", mine_args.strategy)->check(CLI::IsMember({"greedy", "topk"}));
  mine_cmd->add_option("--max-tiles", mine_args.max_tiles)->check(CLI::PositiveNumber);
  mine_cmd->add_option("--order", mine_args.order)->check(CLI::IsMember({"none", "spectral"}));
  mine_cmd->add_option("--min-gain", mine_args.min_gain)->check(CLI::NonNegativeNumber);
  mine_cmd->add_option("--out-tree", mine_args.out_tree);
  mine_cmd->add_option("--out-svg", mine_args.out_svg);
  mine_cmd->add_option("--out-ordered", mine_args.out_ordered, "Write the reordered matrix");
  mine_cmd->add_option("--stats-json", mine_args.stats_json);
  mine_cmd->add_flag("--emit-steps", mine_args.emit_steps);
  mine_cmd->add_option("--threads", mine_args.threads)->check(CLI::PositiveNumber);
  mine_cmd->add_option("--cell-size", mine_args.cell_size)->check(CLI::PositiveNumber);
  mine_cmd->add_flag("--no-ones", mine_args.no_ones, "Do not draw the 1s");

  BenchArgs bench_args;
  auto* bench_cmd = app.add_subcommand("bench", "Time the first subtile search");
  bench_cmd->add_option("--input", bench_args.input);
  bench_cmd->add_option("--format", bench_args.format)->check(CLI::IsMember({"dense", "sparse"}));
  bench_cmd->add_option("--mode", bench_args.mode)->check(CLI::IsMember({"overlap", "disjoint"}));
  bench_cmd->add_flag("--naive", bench_args.naive, "Also run and check the exhaustive search");
  bench_cmd->add_option("--threads", bench_args.threads)->check(CLI::PositiveNumber);
  bench_cmd->add_option("--repeat", bench_args.repeat)->check(CLI::PositiveNumber);
  bench_cmd->add_option("--rows", bench_args.rows)->check(CLI::PositiveNumber);
  bench_cmd->add_option("--cols", bench_args.cols)->check(CLI::PositiveNumber);
  bench_cmd->add_option("--density", bench_args.density)->check(CLI::Range(0.0, 1.0));
  bench_cmd->add_option("--seed", bench_args.seed);

  std::string gen_spec, gen_out;
  std::optional<std::uint64_t> gen_seed;
  bool gen_mondrian = false;
  auto* gen_cmd = app.add_subcommand("generate", "Sample a planted-tile matrix");
  gen_cmd->add_option("--spec", gen_spec, "Planted spec file");
  gen_cmd->add_flag("--mondrian", gen_mondrian, "Use the built-in crossing-bars layout");
  gen_cmd->add_option("--seed", gen_seed, "Override the spec's seed");
  gen_cmd->add_option("--out", gen_out)->required();

  std::string render_input, render_format = "dense", render_tree, render_svg_path;
  int render_cell = 4;
  bool render_no_ones = false;
  auto* render_cmd = app.add_subcommand("render", "Draw a tile tree as SVG");
  render_cmd->add_option("--input", render_input)->required();
  render_cmd->add_option("--format", render_format)->check(CLI::IsMember({"dense", "sparse"}));
  render_cmd->add_option("--tree", render_tree)->required();
  render_cmd->add_option("--out-svg", render_svg_path)->required();
  render_cmd->add_option("--cell-size", render_cell)->check(CLI::PositiveNumber);
  render_cmd->add_flag("--no-ones", render_no_ones);

  std::string stats_input, stats_format = "dense", stats_tree;
  auto* stats_cmd = app.add_subcommand("stats", "Score an existing tile tree");
  stats_cmd->add_option("--input", stats_input)->required();
  stats_cmd->add_option("--format", stats_format)->check(CLI::IsMember({"dense", "sparse"}));
  stats_cmd->add_option("--tree", stats_tree)->required();

  std::string order_input, order_format = "dense", order_out;
  auto* order_cmd = app.add_subcommand("order", "Reorder rows and columns spectrally");
  order_cmd->add_option("--input", order_input)->required();
  order_cmd->add_option("--format", order_format)->check(CLI::IsMember({"dense", "sparse"}));
  order_cmd->add_option("--out", order_out)->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kBadArguments;
  }

  try {
    if (*mine_cmd) return do_mine(mine_args, out, err);
    if (*bench_cmd) return do_bench(bench_args, out);
    if (*gen_cmd) {
      if (gen_spec.empty() == !gen_mondrian) {
        throw CLI::ValidationError("give exactly one of --spec and --mondrian");
      }
      reference::PlantedSpec spec;
      if (gen_mondrian) {
        spec = reference::mondrian_spec(gen_seed.value_or(1));
      } else {
        try {
          spec = reference::parse_planted_spec(read_file(gen_spec));
        } catch (const FormatError& e) {
          throw InputError(gen_spec + ": " + e.what());
        }
        if (gen_seed) spec.seed = *gen_seed;
      }
      BinaryMatrix d;
      try {
        d = reference::generate_planted(spec);
      } catch (const std::invalid_argument& e) {
        throw InputError(e.what());
      }
      write_file(gen_out, d.to_dense());
      out << "wrote " << d.n_rows() << "x" << d.n_cols() << " matrix, " << d.total_ones()
          << " ones\n";
      return kOk;
    }
    if (*render_cmd) {
      const BinaryMatrix d = read_matrix(render_input, render_format);
      const TileTree t = read_tree(render_tree);
      if (t.n_rows() != d.n_rows() || t.n_cols() != d.n_cols() || !counts_consistent(t, d)) {
        throw InputError("tree does not match the data");
      }
      RenderOptions ro;
      ro.cell_size = render_cell;
      ro.show_ones = !render_no_ones;
      write_file(render_svg_path, render_svg(d, t, ro));
      return kOk;
    }
    if (*stats_cmd) {
      const auto t0 = std::chrono::steady_clock::now();
      const BinaryMatrix d = read_matrix(stats_input, stats_format);
      const TileTree t = read_tree(stats_tree);
      if (t.n_rows() != d.n_rows() || t.n_cols() != d.n_cols() || !counts_consistent(t, d)) {
        throw InputError("tree does not match the data");
      }
      const double wall =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      print_stats(out, make_stats(d, t, tree_total_length(d, t), wall));
      return kOk;
    }
    if (*order_cmd) {
      const BinaryMatrix d = read_matrix(order_input, order_format);
      const OrderingResult o = spectral_order_or_identity(d);
      if (o.degenerate) err << "warning: all-zero matrix left unordered\n";
      write_file(order_out, apply_permutation(d, o).to_dense());
      out << "iterations: " << o.iterations << "\nconverged: " << (o.converged ? "yes" : "no")
          << "\n";
      return kOk;
    }
  } catch (const CLI::ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kBadArguments;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const OutputError& e) {
    err << "i/o error: " << e.what() << '\n';
    return kIoError;
  } catch (const MismatchError& e) {
    err << "oracle mismatch: " << e.what() << '\n';
    return kOracleMismatch;
  }
  return kBadArguments;
}

}  // namespace stijl::cli
