#pragma once

#include <cassert>
#include <compare>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "stijl/encoding.hpp"
#include "stijl/tile.hpp"

namespace stijl {

// Exact frequency ones/total. A zero-mass interval has frequency 0.
struct Frequency {
  Count ones = 0;
  Count total = 1;

  static Frequency of(Count ones, Count zeroes) {
    const Count t = ones + zeroes;
    return t == 0 ? Frequency{0, 1} : Frequency{ones, t};
  }
  double value() const { return static_cast<double>(ones) / static_cast<double>(total); }

  // Cross-multiplied; operands stay below 2^62 for counts up to 2^31.
  friend std::strong_ordering operator<=>(const Frequency& a, const Frequency& b) {
    return a.ones * b.total <=> b.ones * a.total;
  }
  friend bool operator==(const Frequency& a, const Frequency& b) {
    return a.ones * b.total == b.ones * a.total;
  }
};

// Non-owning view of two count vectors through their cumulative sums.
// Indices are 1-based: ones(a, b) = p_a + ... + p_b.
struct CountView {
  std::span<const Count> prefix_p;  // size m + 1, prefix_p[0] is the base
  std::span<const Count> prefix_n;

  int size() const { return static_cast<int>(prefix_p.size()) - 1; }
  Count ones(int a, int b) const { return prefix_p[b] - prefix_p[a - 1]; }
  Count zeroes(int a, int b) const { return prefix_n[b] - prefix_n[a - 1]; }
  Frequency freq(int a, int b) const { return Frequency::of(ones(a, b), zeroes(a, b)); }

  // The 0-1 inverse: ones and zeroes swap roles.
  CountView swapped() const { return {prefix_n, prefix_p}; }

  // Rows lo..hi (1-based, inclusive) as a view of length hi - lo + 1.
  CountView slice(int lo, int hi) const {
    return {prefix_p.subspan(lo - 1, hi - lo + 2), prefix_n.subspan(lo - 1, hi - lo + 2)};
  }
};

// Per-row 1-counts p and 0-counts n with their cumulative sums.
class CountVectors {
 public:
  CountVectors() = default;
  CountVectors(std::vector<Count> p, std::vector<Count> n);

  int size() const { return static_cast<int>(p_.size()); }
  std::span<const Count> p() const { return p_; }
  std::span<const Count> n() const { return n_; }
  Count cnt_p(int a, int b) const { return prefix_p_[b] - prefix_p_[a - 1]; }
  Count cnt_n(int a, int b) const { return prefix_n_[b] - prefix_n_[a - 1]; }
  Frequency freq(int a, int b) const { return view().freq(a, b); }

  CountView view() const { return {prefix_p_, prefix_n_}; }

 private:
  std::vector<Count> p_, n_, prefix_p_, prefix_n_;
};

struct Interval {
  int lo = 1;
  int hi = 1;
  friend bool operator==(const Interval&, const Interval&) = default;
};

struct ScanResult {
  std::optional<Interval> interval;
  Bits cost = std::numeric_limits<Bits>::infinity();
};

// cost(a, b) = H(u, v) + H(o - u, z - v) with (u, v) the counts of a..b.
// Throws BoundsError unless 1 <= a <= b <= m.
Bits interval_cost(const CountView& v, int a, int b, Count o, Count z);

// tfreq(a) = max over i >= a of freq(a, i), for a = 1..m (index 0 unused),
// by a right-to-left border sweep in O(m).
std::vector<Frequency> tail_frequencies(const CountView& v);

struct ScanStats {
  std::size_t border_pops = 0;     // removals from B
  std::size_t candidate_pops = 0;  // removals from C
  std::size_t tests = 0;           // cost evaluations
};

// Linear-time solver for: minimise cost(a, b) subject to
// freq(a, b) > o / (o + z). Keeps a head-border list B and its candidate
// sublist C, and tests only pairs whose endpoints are mutual candidates.
// Reuses its buffers across runs; one Scanner per thread.
class Scanner {
 public:
  // Throws CountError unless ones(1, m) <= o and zeroes(1, m) <= z.
  ScanResult run(const CountView& v, Count o, Count z);

  // `observe(b, border, candidates)` is called after B has been updated for
  // step b. Both spans list indices back-to-front (the front, the largest
  // index, is the last element).
  template <class Observer>
  ScanResult run(const CountView& v, Count o, Count z, Observer&& observe);

  const ScanStats& stats() const { return stats_; }

 private:
  void check(const CountView& v, Count o, Count z) const;
  void fill_tail_frequencies(const CountView& v);

  // x log2 x for x = 0..total, grown on demand. Parents larger than this
  // limit fall back to evaluating the logarithms directly.
  static constexpr Count kTableLimit = Count{1} << 22;
  bool prepare_table(Count total);

  // H(u, w) + H(o - u, z - w) from the table: H(p, n) = f(p + n) - f(p) - f(n).
  Bits table_cost(Count u, Count w, Count o, Count z) const {
    const double* f = xlogx_.data();
    const Count ou = o - u, zw = z - w;
    return (f[u + w] - f[u] - f[w]) + (f[ou + zw] - f[ou] - f[zw]);
  }

  std::vector<double> xlogx_;
  std::vector<int> border_;
  std::vector<int> cands_;
  std::vector<Frequency> tail_;
  ScanStats stats_;
};

ScanResult scan(const CountVectors& v, Count o, Count z);

template <class Observer>
ScanResult Scanner::run(const CountView& v, Count o, Count z, Observer&& observe) {
  check(v, o, z);
  stats_ = {};
  ScanResult result;
  const int m = v.size();
  if (m == 0 || o == 0) return result;
  const Frequency background = Frequency::of(o, z);

  fill_tail_frequencies(v);
  const bool tabled = prepare_table(o + z);
  border_.clear();
  cands_.clear();

  auto test = [&](int a, int b) {
    ++stats_.tests;
    const Count u = v.ones(a, b);
    const Count w = v.zeroes(a, b);
    if (!(Frequency::of(u, w) > background)) return;
    const Bits c = tabled ? table_cost(u, w, o, z)
                          : scaled_entropy(u, w) + scaled_entropy(o - u, z - w);
    if (c < result.cost) {
      result.cost = c;
      result.interval = Interval{a, b};
    }
  };

  for (int b = 1; b <= m; ++b) {
    border_.push_back(b);
    cands_.push_back(b);
    while (border_.size() > 1) {
      const int b1 = border_.back();
      const int b2 = border_[border_.size() - 2];
      if (v.freq(b1, b) > v.freq(b2, b1 - 1)) break;
      if (cands_.back() == b1) {
        cands_.pop_back();
        ++stats_.candidate_pops;
      }
      border_.pop_back();
      ++stats_.border_pops;
    }
    observe(b, std::span<const int>(border_), std::span<const int>(cands_));

    const Frequency next_tail = tail_[b + 1];
    while (cands_.size() > 1) {
      const int c1 = cands_.back();
      const int c2 = cands_[cands_.size() - 2];
      if (v.freq(c2, c1 - 1) < next_tail) break;
      test(c1, b);
      cands_.pop_back();
      ++stats_.candidate_pops;
    }
    assert(!cands_.empty());
    test(cands_.back(), b);
  }
  return result;
}

}  // namespace stijl
