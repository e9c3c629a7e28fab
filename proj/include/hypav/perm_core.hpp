#pragma once

// Permutations, pattern occurrences and the copy-count distribution over S_n.
//
// Indexing: positions and values are 1-based in every external form (text,
// JSON, Occurrence). Storage is 0-based; operator[] exposes the 0-based view.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hypav/error.hpp"
#include "hypav/parallel.hpp"
#include "hypav/rational.hpp"

namespace hypav {

class Permutation {
 public:
  Permutation() = default;

  // One-line notation with values in 1..n.
  explicit Permutation(const std::vector<int>& one_line) : values_(one_line.size()) {
    const int n = static_cast<int>(one_line.size());
    std::vector<bool> seen(one_line.size(), false);
    for (int i = 0; i < n; ++i) {
      const int v = one_line[static_cast<std::size_t>(i)];
      require(v >= 1 && v <= n, "permutation value " + std::to_string(v) + " at position " +
                                    std::to_string(i + 1) + " is outside 1.." + std::to_string(n));
      require(!seen[static_cast<std::size_t>(v - 1)],
              "permutation value " + std::to_string(v) + " repeats at position " + std::to_string(i + 1));
      seen[static_cast<std::size_t>(v - 1)] = true;
      values_[static_cast<std::size_t>(i)] = v - 1;
    }
  }

  static Permutation identity(int n) {
    Permutation p;
    p.values_.resize(static_cast<std::size_t>(std::max(n, 0)));
    std::iota(p.values_.begin(), p.values_.end(), 0);
    return p;
  }

  static Permutation from_zero_based(std::span<const int> values) {
    std::vector<int> one_line(values.begin(), values.end());
    for (int& v : one_line) ++v;
    return Permutation(one_line);
  }

  // Comma-separated one-line notation, e.g. "2,4,1,3". The empty string is
  // the empty permutation. Errors name the character offset (1-based).
  static Permutation parse(std::string_view text) {
    std::vector<int> one_line;
    if (text.empty()) return Permutation(one_line);
    std::size_t pos = 0;
    while (true) {
      const std::size_t start = pos;
      int value = 0;
      while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
        value = value * 10 + (text[pos] - '0');
        require(value <= 1'000'000, "permutation entry too large at character " + std::to_string(start + 1));
        ++pos;
      }
      if (pos == start) {
        throw ValidationError("malformed permutation '" + std::string(text) + "': expected a number at character " +
                              std::to_string(pos + 1));
      }
      one_line.push_back(value);
      if (pos == text.size()) break;
      if (text[pos] != ',') {
        throw ValidationError("malformed permutation '" + std::string(text) + "': unexpected '" +
                              std::string(1, text[pos]) + "' at character " + std::to_string(pos + 1));
      }
      ++pos;
    }
    return Permutation(one_line);
  }

  int size() const { return static_cast<int>(values_.size()); }
  bool empty() const { return values_.empty(); }

  // 0-based value at 0-based position.
  int operator[](std::size_t i) const { return values_[i]; }
  // 1-based value at 1-based position.
  int operator()(int position) const { return values_[static_cast<std::size_t>(position - 1)] + 1; }

  std::span<const int> zero_based() const { return values_; }

  std::vector<int> one_line() const {
    std::vector<int> out(values_);
    for (int& v : out) ++v;
    return out;
  }

  std::string to_string() const {
    std::string out;
    for (std::size_t i = 0; i < values_.size(); ++i) {
      if (i != 0) out.push_back(',');
      out += std::to_string(values_[i] + 1);
    }
    return out;
  }

  Permutation reversed() const {
    Permutation p(*this);
    std::reverse(p.values_.begin(), p.values_.end());
    return p;
  }

  Permutation complemented() const {
    Permutation p(*this);
    for (int& v : p.values_) v = size() - 1 - v;
    return p;
  }

  Permutation inverse() const {
    Permutation p(*this);
    for (int i = 0; i < size(); ++i) p.values_[static_cast<std::size_t>(values_[static_cast<std::size_t>(i)])] = i;
    return p;
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> values_;
};

// Strictly increasing 1-based positions x_1 < ... < x_k of sigma whose values
// are order-isomorphic to the pattern.
struct Occurrence {
  std::vector<int> indices;

  friend bool operator==(const Occurrence&, const Occurrence&) = default;
  friend auto operator<=>(const Occurrence&, const Occurrence&) = default;
};

namespace detail {

// For each pattern position d, the earlier positions holding the closest
// smaller and closest larger pattern values (-1 if none). A candidate value v
// extends a partial occurrence iff sigma(x_below) < v < sigma(x_above).
struct PatternPlan {
  std::vector<int> below;
  std::vector<int> above;

  explicit PatternPlan(const Permutation& pi) {
    const int k = pi.size();
    below.assign(static_cast<std::size_t>(k), -1);
    above.assign(static_cast<std::size_t>(k), -1);
    for (int d = 0; d < k; ++d) {
      for (int j = 0; j < d; ++j) {
        const int pj = pi[static_cast<std::size_t>(j)];
        const int pd = pi[static_cast<std::size_t>(d)];
        auto& lo = below[static_cast<std::size_t>(d)];
        auto& hi = above[static_cast<std::size_t>(d)];
        if (pj < pd && (lo < 0 || pj > pi[static_cast<std::size_t>(lo)])) lo = j;
        if (pj > pd && (hi < 0 || pj < pi[static_cast<std::size_t>(hi)])) hi = j;
      }
    }
  }

  int length() const { return static_cast<int>(below.size()); }
};

template <class Visit>
bool occurrence_dfs(std::span<const int> sigma, const PatternPlan& plan, std::vector<int>& positions,
                    std::uint64_t mask, int depth, int start, Visit& visit) {
  const int n = static_cast<int>(sigma.size());
  const int k = plan.length();
  if (depth == k) return visit(std::span<const int>(positions), mask);
  const int lo = plan.below[static_cast<std::size_t>(depth)];
  const int hi = plan.above[static_cast<std::size_t>(depth)];
  const int lo_value = lo < 0 ? -1 : sigma[static_cast<std::size_t>(positions[static_cast<std::size_t>(lo)])];
  const int hi_value = hi < 0 ? n : sigma[static_cast<std::size_t>(positions[static_cast<std::size_t>(hi)])];
  for (int x = start; x <= n - (k - depth); ++x) {
    const int v = sigma[static_cast<std::size_t>(x)];
    if (v <= lo_value || v >= hi_value) continue;
    positions[static_cast<std::size_t>(depth)] = x;
    const std::uint64_t next_mask = x < 64 ? (mask | (std::uint64_t{1} << static_cast<unsigned>(x))) : mask;
    if (!occurrence_dfs(sigma, plan, positions, next_mask, depth + 1, x + 1, visit)) return false;
  }
  return true;
}

// Calls visit(positions, mask) for every occurrence in lexicographic order of
// 0-based position tuples; `mask` has bit x set for each position x < 64.
// Stops early when visit returns false. Returns false iff stopped early.
template <class Visit>
bool for_each_occurrence(std::span<const int> sigma, const PatternPlan& plan, Visit&& visit) {
  std::vector<int> positions(static_cast<std::size_t>(plan.length()));
  if (plan.length() > static_cast<int>(sigma.size())) return true;
  return occurrence_dfs(sigma, plan, positions, 0, 0, 0, visit);
}

inline std::uint64_t count_occurrences(std::span<const int> sigma, const PatternPlan& plan) {
  std::uint64_t count = 0;
  for_each_occurrence(sigma, plan, [&](std::span<const int>, std::uint64_t) {
    count = checked_add(count, 1);
    return true;
  });
  return count;
}

}  // namespace detail

// The empty pattern occurs exactly once (the empty occurrence) in every sigma.
inline bool contains(const Permutation& sigma, const Permutation& pi) {
  const detail::PatternPlan plan(pi);
  return !detail::for_each_occurrence(sigma.zero_based(), plan,
                                      [](std::span<const int>, std::uint64_t) { return false; });
}

inline std::uint64_t count_occurrences(const Permutation& sigma, const Permutation& pi) {
  return detail::count_occurrences(sigma.zero_based(), detail::PatternPlan(pi));
}

inline std::vector<Occurrence> enumerate_occurrences(const Permutation& sigma, const Permutation& pi) {
  std::vector<Occurrence> out;
  detail::for_each_occurrence(sigma.zero_based(), detail::PatternPlan(pi),
                              [&](std::span<const int> positions, std::uint64_t) {
                                Occurrence occ;
                                occ.indices.reserve(positions.size());
                                for (int x : positions) occ.indices.push_back(x + 1);
                                out.push_back(std::move(occ));
                                return true;
                              });
  return out;
}

// Lexicographic stream over S_n. A stream can be restricted to one prefix
// block (all permutations starting with a given value) so that disjoint
// blocks can be handed to separate workers; concatenating the blocks in order
// reproduces the full lexicographic stream.
class PermutationStream {
 public:
  explicit PermutationStream(int n, const Limits& limits = {}) : PermutationStream(n, -1, limits) {}

  // Block b holds the (n-1)! permutations whose first 0-based value is b.
  static PermutationStream block(int n, int b, const Limits& limits = {}) {
    require(n == 0 ? b == 0 : (b >= 0 && b < n), "prefix block " + std::to_string(b) + " out of range");
    return PermutationStream(n, n == 0 ? -1 : b, limits);
  }

  static int block_count(int n) { return n == 0 ? 1 : n; }

  // Advances to the next permutation; the first call yields the first one.
  bool next() {
    if (!started_) {
      started_ = true;
      return true;
    }
    if (current_.empty()) return false;
    if (fixed_first_) return std::next_permutation(current_.begin() + 1, current_.end());
    return std::next_permutation(current_.begin(), current_.end());
  }

  std::span<const int> current() const { return current_; }
  Permutation permutation() const { return Permutation::from_zero_based(current_); }

 private:
  PermutationStream(int n, int first, const Limits& limits) {
    require(n >= 0, "n must be non-negative");
    require_enumerable(n, limits);
    current_.resize(static_cast<std::size_t>(n));
    std::iota(current_.begin(), current_.end(), 0);
    if (first >= 0) {
      fixed_first_ = true;
      std::rotate(current_.begin(), current_.begin() + first, current_.begin() + first + 1);
    }
  }

  std::vector<int> current_;
  bool fixed_first_ = false;
  bool started_ = false;
};

template <class Fn>
void for_each_permutation(int n, Fn&& fn, const Limits& limits = {}) {
  PermutationStream stream(n, limits);
  while (stream.next()) fn(stream.current());
}

inline std::vector<Permutation> enumerate_permutations(int n, const Limits& limits = {}) {
  std::vector<Permutation> out;
  for_each_permutation(n, [&](std::span<const int> p) { out.push_back(Permutation::from_zero_based(p)); }, limits);
  return out;
}

// Runs fn(block_stream) for every prefix block, possibly in parallel, and
// returns the per-block results in block order.
template <class Fn>
auto map_permutation_blocks(int n, const Limits& limits, Fn&& fn) {
  require_enumerable(n, limits);
  using Result = decltype(fn(std::declval<PermutationStream&>()));
  const int blocks = PermutationStream::block_count(n);
  std::vector<Result> results(static_cast<std::size_t>(blocks));
  parallel_for(static_cast<std::size_t>(blocks), limits.threads, [&](std::size_t b) {
    PermutationStream stream = PermutationStream::block(n, static_cast<int>(b), limits);
    results[b] = fn(stream);
  });
  return results;
}

// Exact histogram c -> #{sigma in S_n with exactly c copies of pi}; only
// non-zero entries are stored.
struct CopyCountDistribution {
  int n = 0;
  Permutation pattern;
  std::map<std::uint64_t, std::uint64_t> histogram;

  std::uint64_t total() const {
    std::uint64_t sum = 0;
    for (const auto& [c, count] : histogram) sum = checked_add(sum, count);
    return sum;
  }

  // |S_n(m, pi)|: permutations with at most m copies.
  std::uint64_t at_most(std::uint64_t m) const {
    std::uint64_t sum = 0;
    for (const auto& [c, count] : histogram) {
      if (c > m) break;
      sum = checked_add(sum, count);
    }
    return sum;
  }
};

inline CopyCountDistribution copy_count_distribution(int n, const Permutation& pi, const Limits& limits = {}) {
  require(n >= 0, "n must be non-negative");
  require_enumerable(n, limits);
  const detail::PatternPlan plan(pi);
  auto partial = map_permutation_blocks(n, limits, [&](PermutationStream& stream) {
    std::map<std::uint64_t, std::uint64_t> local;
    while (stream.next()) ++local[detail::count_occurrences(stream.current(), plan)];
    return local;
  });
  CopyCountDistribution dist{n, pi, {}};
  for (const auto& block : partial) {
    for (const auto& [c, count] : block) dist.histogram[c] = checked_add(dist.histogram[c], count);
  }
  return dist;
}

}  // namespace hypav
