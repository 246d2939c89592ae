#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "stijl/encoding.hpp"
#include "stijl/findtile.hpp"
#include "stijl/tiletree.hpp"

namespace stijl {

class BinaryMatrix;

enum class Strategy { greedy, topk };

std::string_view to_string(Strategy s);
Strategy parse_strategy(std::string_view s);

struct MinerConfig {
  Mode mode = Mode::overlap;
  Strategy strategy = Strategy::greedy;
  std::optional<int> max_tiles;  // tiles added on top of the root; unbounded if absent
  Bits min_gain = kDefaultMinGain;
  bool emit_steps = false;
  int threads = 1;
};

// One subtile search. Searches that find nothing are logged too, with
// `accepted` false and no tile.
struct MiningStep {
  int search = 0;               // 1-based index of the search
  NodeId parent = kNoNode;
  std::optional<Tile> tile;
  Polarity polarity = Polarity::dense;
  Bits delta = 0.0;             // 0 when nothing was accepted
  Bits total_bits = 0.0;        // total length after this step
  double elapsed_seconds = 0.0; // since the start of the run
  bool accepted = false;
};

struct MiningResult {
  TileTree tree;
  Bits total_bits = 0.0;
  Bits baseline_bits = 0.0;
  double l_percent = 100.0;
  std::vector<MiningStep> steps;
  double elapsed_seconds = 0.0;

  int accepted_tiles() const;
};

// Called after every accepted tile with the 1-based tile count and the tree.
using StepSink = std::function<void(int, const TileTree&)>;

// Depth-first greedy: find the best subtile of the current parent, descend
// into it, and retry the parent once the child is exhausted.
MiningResult stijl_greedy(const BinaryMatrix& d, const MinerConfig& cfg, const StepSink& sink = {});

// Global best-first: every iteration inserts the single best subtile over all
// nodes of the tree.
MiningResult stijl_topk(const BinaryMatrix& d, const MinerConfig& cfg, const StepSink& sink = {});

// Dispatches on cfg.strategy. The sink is only called when cfg.emit_steps.
MiningResult mine(const BinaryMatrix& d, const MinerConfig& cfg, const StepSink& sink = {});

}  // namespace stijl
