#include "stijl/miner.hpp"

#include <chrono>
#include <stdexcept>
#include <string>

#include "stijl/matrix.hpp"

namespace stijl {

std::string_view to_string(Strategy s) { return s == Strategy::greedy ? "greedy" : "topk"; }

Strategy parse_strategy(std::string_view s) {
  if (s == "greedy") return Strategy::greedy;
  if (s == "topk") return Strategy::topk;
  throw std::invalid_argument("unknown strategy '" + std::string(s) + "'");
}

int MiningResult::accepted_tiles() const {
  int k = 0;
  for (const auto& s : steps) k += s.accepted;
  return k;
}

namespace {

using Clock = std::chrono::steady_clock;

class Run {
 public:
  Run(const BinaryMatrix& d, const MinerConfig& cfg, const StepSink& sink)
      : d_(d), cfg_(cfg), sink_(sink), start_(Clock::now()) {
    if (cfg.max_tiles && *cfg.max_tiles < 1) throw std::invalid_argument("max_tiles must be >= 1");
    result_.tree = TileTree(d);
    result_.baseline_bits = baseline_length(d);
    result_.total_bits = result_.baseline_bits;
  }

  bool budget_left() const { return !cfg_.max_tiles || accepted_ < *cfg_.max_tiles; }

  SubtileSearchResult search(NodeId x) const {
    return find_tile(d_, result_.tree, x, {cfg_.mode, cfg_.min_gain, cfg_.threads});
  }

  void log_miss(NodeId x) {
    MiningStep s;
    s.search = ++searches_;
    s.parent = x;
    s.total_bits = result_.total_bits;
    s.elapsed_seconds = elapsed();
    result_.steps.push_back(s);
  }

  NodeId accept(NodeId x, const SubtileSearchResult& r) {
    const auto ins = result_.tree.add_child(x, *r.tile, d_);
    ++accepted_;
    result_.total_bits += r.delta;
    MiningStep s;
    s.search = ++searches_;
    s.parent = x;
    s.tile = r.tile;
    s.polarity = r.polarity;
    s.delta = r.delta;
    s.total_bits = result_.total_bits;
    s.elapsed_seconds = elapsed();
    s.accepted = true;
    result_.steps.push_back(s);
    if (sink_) sink_(accepted_, result_.tree);
    return ins.node;
  }

  const TileTree& tree() const { return result_.tree; }

  MiningResult finish() {
    result_.l_percent = relative_compression(result_.total_bits, result_.baseline_bits);
    result_.elapsed_seconds = elapsed();
    return std::move(result_);
  }

 private:
  double elapsed() const { return std::chrono::duration<double>(Clock::now() - start_).count(); }

  const BinaryMatrix& d_;
  const MinerConfig& cfg_;
  const StepSink& sink_;
  Clock::time_point start_;
  MiningResult result_;
  int accepted_ = 0;
  int searches_ = 0;
};

}  // namespace

MiningResult stijl_greedy(const BinaryMatrix& d, const MinerConfig& cfg, const StepSink& sink) {
  Run run(d, cfg, sink);
  // The recursion "descend into the new child, then retry the parent" as an
  // explicit stack of parents still open for refinement.
  std::vector<NodeId> open{TileTree::root()};
  while (!open.empty() && run.budget_left()) {
    const NodeId x = open.back();
    const SubtileSearchResult r = run.search(x);
    if (!r.tile) {
      run.log_miss(x);
      open.pop_back();
      continue;
    }
    open.push_back(run.accept(x, r));
  }
  return run.finish();
}

MiningResult stijl_topk(const BinaryMatrix& d, const MinerConfig& cfg, const StepSink& sink) {
  Run run(d, cfg, sink);
  // Appending a child to x changes the cells of x alone, so a node's best
  // subtile stays valid until it gains a child.
  std::vector<std::optional<SubtileSearchResult>> cache;
  while (run.budget_left()) {
    const TileTree& t = run.tree();
    cache.resize(t.size());
    NodeId best = kNoNode;
    for (const NodeId x : t.post_order()) {
      if (!cache[x]) cache[x] = run.search(x);
      const auto& r = *cache[x];
      // Strict `<` over post-order keeps the lower position on ties.
      if (r.tile && (best == kNoNode || r.delta < cache[best]->delta)) best = x;
    }
    if (best == kNoNode) {
      run.log_miss(kNoNode);
      break;
    }
    const SubtileSearchResult chosen = *cache[best];
    cache[best].reset();
    run.accept(best, chosen);
  }
  return run.finish();
}

MiningResult mine(const BinaryMatrix& d, const MinerConfig& cfg, const StepSink& sink) {
  const StepSink none;
  const StepSink& used = cfg.emit_steps ? sink : none;
  return cfg.strategy == Strategy::greedy ? stijl_greedy(d, cfg, used) : stijl_topk(d, cfg, used);
}

}  // namespace stijl
