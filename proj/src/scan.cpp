#include "stijl/scan.hpp"

#include <cmath>
#include <string>

#include "stijl/error.hpp"

namespace stijl {

namespace {

std::vector<Count> cumulative(std::span<const Count> values) {
  std::vector<Count> out(values.size() + 1, 0);
  for (std::size_t i = 0; i < values.size(); ++i) out[i + 1] = out[i] + values[i];
  return out;
}

struct NoObserver {
  void operator()(int, std::span<const int>, std::span<const int>) const {}
};

// Mirror image of the head-border update: walking a from right to left, the
// front of the tail-border list is the right end of a maximum-frequency
// interval starting at a. Slot m + 1 holds the empty suffix, frequency 0.
void sweep_tails(const CountView& v, std::vector<Frequency>& tail, std::vector<int>& ends) {
  const int m = v.size();
  tail.assign(static_cast<std::size_t>(m) + 2, Frequency{0, 1});
  ends.clear();
  for (int a = m; a >= 1; --a) {
    ends.push_back(a);
    while (ends.size() > 1) {
      const int e1 = ends.back();
      const int e2 = ends[ends.size() - 2];
      if (v.freq(a, e1) > v.freq(e1 + 1, e2)) break;
      ends.pop_back();
    }
    tail[a] = v.freq(a, ends.back());
  }
}

}  // namespace

CountVectors::CountVectors(std::vector<Count> p, std::vector<Count> n)
    : p_(std::move(p)), n_(std::move(n)) {
  if (p_.size() != n_.size()) throw CountError("count vectors differ in length");
  for (std::size_t i = 0; i < p_.size(); ++i) {
    if (p_[i] < 0 || n_[i] < 0) throw CountError("negative entry in count vector");
  }
  prefix_p_ = cumulative(p_);
  prefix_n_ = cumulative(n_);
}

Bits interval_cost(const CountView& v, int a, int b, Count o, Count z) {
  if (a < 1 || a > b || b > v.size()) {
    throw BoundsError("interval (" + std::to_string(a) + "," + std::to_string(b) +
                      ") outside 1.." + std::to_string(v.size()));
  }
  const Count u = v.ones(a, b);
  const Count w = v.zeroes(a, b);
  return scaled_entropy(u, w) + scaled_entropy(o - u, z - w);
}

std::vector<Frequency> tail_frequencies(const CountView& v) {
  std::vector<Frequency> tail;
  std::vector<int> scratch;
  sweep_tails(v, tail, scratch);
  return tail;
}

void Scanner::check(const CountView& v, Count o, Count z) const {
  const int m = v.size();
  if (o < 0 || z < 0 || (m > 0 && (v.ones(1, m) > o || v.zeroes(1, m) > z))) {
    throw CountError("count vectors exceed the parent totals (" + std::to_string(o) + "," +
                     std::to_string(z) + ")");
  }
}

void Scanner::fill_tail_frequencies(const CountView& v) { sweep_tails(v, tail_, border_); }

bool Scanner::prepare_table(Count total) {
  if (total > kTableLimit) return false;
  const auto size = static_cast<std::size_t>(total) + 1;
  if (xlogx_.empty()) xlogx_.push_back(0.0);
  while (xlogx_.size() < size) {
    const double x = static_cast<double>(xlogx_.size());
    xlogx_.push_back(x * std::log2(x));
  }
  return true;
}

ScanResult Scanner::run(const CountView& v, Count o, Count z) {
  return run(v, o, z, NoObserver{});
}

ScanResult scan(const CountVectors& v, Count o, Count z) {
  Scanner s;
  return s.run(v.view(), o, z);
}

}  // namespace stijl
