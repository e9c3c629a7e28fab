#pragma once

// Extremal and supersaturation quantities at desk scale: the largest number
// of ones in an n x n matrix avoiding A_pi, the fewest copies of A_pi among
// matrices with a given number of ones, the block-diagonal construction that
// makes few copies, and the block permutation family S_{n,a}.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hypav/error.hpp"
#include "hypav/hypergraph.hpp"
#include "hypav/matrix_core.hpp"
#include "hypav/perm_core.hpp"
#include "hypav/rational.hpp"

namespace hypav {

// Reversing sigma maps copies of pi bijectively onto copies of reverse(pi);
// on matrices the same bijection is the top-to-bottom row flip. Callers use
// this to assume pi(1) > pi(k).
struct NormalizedPattern {
  Permutation pattern;
  bool reversed = false;
};

inline NormalizedPattern normalize_first_above_last(const Permutation& pi) {
  require(pi.size() >= 2, "normalization needs a pattern of length at least 2");
  if (pi(1) > pi(pi.size())) return {pi, false};
  return {pi.reversed(), true};
}

// mode is "exact" when the search covered the whole space (or proved
// optimality) and "search" when a node budget cut it short. For max-ones,
// ratio = measured / n; for min-copies, bound_form = a^{2k-1} / n^{2k-2} and
// ratio = measured / bound_form.
struct ExtremalReport {
  int n = 0;
  std::optional<std::uint64_t> a;
  Permutation pattern;
  std::uint64_t measured = 0;
  std::string mode = "exact";
  BinaryMatrix witness;
  std::optional<Rational> bound_form;
  std::optional<Rational> ratio;
  std::uint64_t nodes = 0;
};

namespace detail {

// Whether setting cell (r, c) creates a copy of pi, given that the matrix
// (as row masks) avoids pi and every 1 lies before (r, c) in row-major order.
// Any new copy then has its last pattern row at (r, c).
inline bool anchored_copy_exists(std::span<const std::uint64_t> rows, const Permutation& pi, int r, int c) {
  const int k = pi.size();
  if (k <= 1) return true;
  if (r < k - 1) return false;
  std::vector<int> slot_row(static_cast<std::size_t>(k));  // pattern row owning column slot j
  for (int i = 0; i < k; ++i) slot_row[static_cast<std::size_t>(pi[static_cast<std::size_t>(i)])] = i;
  std::vector<int> chosen(static_cast<std::size_t>(k));
  chosen[static_cast<std::size_t>(k - 1)] = r;
  const std::uint64_t anchor = std::uint64_t{1} << static_cast<unsigned>(c);
  // Smallest-column greedy decides whether an increasing column chain exists.
  auto chain_exists = [&] {
    int prev = -1;
    for (int j = 0; j < k; ++j) {
      const int owner = slot_row[static_cast<std::size_t>(j)];
      std::uint64_t allowed = owner == k - 1 ? anchor : rows[static_cast<std::size_t>(chosen[static_cast<std::size_t>(owner)])];
      if (prev >= 0) allowed &= prev >= 63 ? 0 : ~((std::uint64_t{2} << static_cast<unsigned>(prev)) - 1);
      if (allowed == 0) return false;
      prev = std::countr_zero(allowed);
    }
    return true;
  };
  auto choose = [&](auto& self, int depth, int start) -> bool {
    if (depth == k - 1) return chain_exists();
    for (int x = start; x <= r - (k - 1 - depth); ++x) {
      if (rows[static_cast<std::size_t>(x)] == 0) continue;
      chosen[static_cast<std::size_t>(depth)] = x;
      if (self(self, depth + 1, x + 1)) return true;
    }
    return false;
  };
  return choose(choose, 0, 0);
}

// Depth-first branch and bound over cells in row-major order, trying 1 before
// 0. upper_for_rows[m] bounds the ones of any m x cols avoiding matrix and
// prunes branches that cannot beat the incumbent.
class AvoidingSearch {
 public:
  AvoidingSearch(int rows, int cols, const Permutation& pi, std::vector<std::uint64_t> upper_for_rows,
                 std::uint64_t budget)
      : rows_(rows), cols_(cols), pi_(pi), upper_(std::move(upper_for_rows)), budget_(budget),
        current_(static_cast<std::size_t>(rows), 0) {}

  void run() {
    best_rows_.assign(static_cast<std::size_t>(rows_), 0);
    best_ = 0;
    dfs(0, 0);
  }

  std::uint64_t best() const { return best_; }
  bool proven() const { return !exhausted_; }
  std::uint64_t nodes() const { return nodes_; }

  BinaryMatrix witness() const {
    BinaryMatrix m(rows_, cols_);
    for (int r = 0; r < rows_; ++r) {
      for (int c = 0; c < cols_; ++c) {
        if ((best_rows_[static_cast<std::size_t>(r)] >> static_cast<unsigned>(c)) & 1U) m.set(r, c, true);
      }
    }
    return m;
  }

 private:
  void dfs(int cell, std::uint64_t ones) {
    if (exhausted_) return;
    if (++nodes_ > budget_) {
      exhausted_ = true;
      return;
    }
    if (cell == rows_ * cols_) {
      if (ones > best_) {
        best_ = ones;
        best_rows_ = current_;
      }
      return;
    }
    const int r = cell / cols_;
    const int c = cell % cols_;
    const auto remaining_in_row = static_cast<std::uint64_t>(cols_ - c);
    const std::uint64_t bound = ones + remaining_in_row + upper_[static_cast<std::size_t>(rows_ - r - 1)];
    if (bound <= best_) return;
    auto& row = current_[static_cast<std::size_t>(r)];
    if (!anchored_copy_exists(current_, pi_, r, c)) {
      row |= std::uint64_t{1} << static_cast<unsigned>(c);
      dfs(cell + 1, ones + 1);
      row &= ~(std::uint64_t{1} << static_cast<unsigned>(c));
    }
    dfs(cell + 1, ones);
  }

  int rows_;
  int cols_;
  Permutation pi_;
  std::vector<std::uint64_t> upper_;
  std::uint64_t budget_;
  std::vector<std::uint64_t> current_;
  std::vector<std::uint64_t> best_rows_;
  std::uint64_t best_ = 0;
  std::uint64_t nodes_ = 0;
  bool exhausted_ = false;
};

inline void require_pattern_for_matrices(const Permutation& pi) {
  require(pi.size() >= 1, "every matrix contains the empty pattern; use a pattern of length at least 1");
}

}  // namespace detail

// Exhaustive over all 2^{n^2} matrices when n <= matrix_exhaustive_cap;
// otherwise, if allow_search, a branch and bound labelled "exact" only when it
// finished within the node budget. The witness is the first maximiser in
// increasing order of the row-major bit mask (exhaustive mode).
inline ExtremalReport max_ones_avoiding(int n, const Permutation& pi, const Limits& limits = {},
                                        bool allow_search = true) {
  detail::require_pattern_for_matrices(pi);
  require(n >= 0, "n must be non-negative");
  ExtremalReport report;
  report.n = n;
  report.pattern = pi;
  if (n <= limits.matrix_exhaustive_cap && n * n <= 32) {
    const std::uint64_t masks = std::uint64_t{1} << static_cast<unsigned>(n * n);
    std::uint64_t best_mask = 0;
    int best = 0;
    for (std::uint64_t mask = 0; mask < masks; ++mask) {
      const int ones = std::popcount(mask);
      if (ones <= best) continue;
      ++report.nodes;
      if (contains_pattern(BinaryMatrix::from_mask(n, mask), pi)) continue;
      best = ones;
      best_mask = mask;
    }
    report.measured = static_cast<std::uint64_t>(best);
    report.witness = BinaryMatrix::from_mask(n, best_mask);
  } else {
    if (!allow_search) {
      throw CapExceeded("exhaustive matrix search at n=" + std::to_string(n) + " exceeds the cap of " +
                        std::to_string(limits.matrix_exhaustive_cap));
    }
    require(n <= 64, "branch-and-bound search supports n <= 64");
    // upper[m]: bound on the ones of an m x n avoiding matrix; proven optima
    // for fewer rows, falling back to m*n when a sub-search ran out of budget.
    std::vector<std::uint64_t> upper{0};
    bool proven = true;
    for (int m = 1; m <= n; ++m) {
      detail::AvoidingSearch search(m, n, pi, upper, limits.bnb_node_budget);
      search.run();
      report.nodes += search.nodes();
      if (m == n) {
        proven = search.proven();
        report.measured = search.best();
        report.witness = search.witness();
      } else {
        upper.push_back(search.proven() ? search.best() : static_cast<std::uint64_t>(m) * static_cast<std::uint64_t>(n));
      }
    }
    report.mode = proven ? "exact" : "search";
  }
  if (n > 0) report.ratio = Rational(BigInt(report.measured), BigInt(n));
  return report;
}

// copies(M) >= ones(M) - c*n.
inline bool easy_bound_check(const BinaryMatrix& m, const Permutation& pi, const Rational& c) {
  require(m.square(), "easy bound check needs a square matrix");
  const Rational rhs = Rational(BigInt(m.ones())) - c * m.rows();
  return Rational(BigInt(count_matrix_copies(m, pi))) >= rhs;
}

inline Rational supersaturation_bound_form(int n, std::uint64_t a, int k) {
  require(n >= 1 && k >= 1, "bound form needs n >= 1 and k >= 1");
  return Rational(pow(Rational(BigInt(a)), static_cast<std::uint64_t>(2 * k - 1)) /
                  pow(Rational(n), static_cast<std::uint64_t>(2 * k - 2)));
}

// Exact minimum of count_matrix_copies over n x n matrices with exactly a
// ones, by enumerating all C(n^2, a) supports. The witness is the first
// minimiser in lexicographic order of supports.
inline ExtremalReport min_copies_brute(int n, std::uint64_t a, const Permutation& pi, const Limits& limits = {}) {
  detail::require_pattern_for_matrices(pi);
  require(n >= 1, "n must be at least 1");
  require(a <= static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(n),
          "a=" + std::to_string(a) + " exceeds n^2=" + std::to_string(n * n));
  if (n > limits.matrix_exhaustive_cap || n * n > 64) {
    throw CapExceeded("exhaustive matrix search at n=" + std::to_string(n) + " exceeds the cap of " +
                      std::to_string(limits.matrix_exhaustive_cap));
  }
  ExtremalReport report;
  report.n = n;
  report.a = a;
  report.pattern = pi;
  std::optional<std::uint64_t> best;
  std::uint64_t best_mask = 0;
  for_each_k_subset(n * n, static_cast<int>(a), [&](std::span<const int> cells) {
    std::uint64_t mask = 0;
    for (int cell : cells) mask |= std::uint64_t{1} << static_cast<unsigned>(cell - 1);
    ++report.nodes;
    const std::uint64_t copies = count_matrix_copies(BinaryMatrix::from_mask(n, mask), pi);
    if (!best || copies < *best) {
      best = copies;
      best_mask = mask;
    }
    return *best > 0;
  });
  report.measured = best.value_or(0);
  report.witness = BinaryMatrix::from_mask(n, best_mask);
  report.bound_form = supersaturation_bound_form(n, a, pi.size());
  if (*report.bound_form > 0) report.ratio = Rational(BigInt(report.measured)) / *report.bound_form;
  return report;
}

// n^2/a all-ones diagonal blocks of side a/n, zeros elsewhere.
inline BinaryMatrix extremal_block_diagonal(int n, std::uint64_t a) {
  require(n >= 1 && a >= 1, "block construction needs n >= 1 and a >= 1");
  const auto nn = static_cast<std::uint64_t>(n);
  require(a % nn == 0, "block construction needs n | a (n=" + std::to_string(n) + ", a=" + std::to_string(a) + ")");
  require((nn * nn) % a == 0, "block construction needs a | n^2 (n=" + std::to_string(n) + ", a=" + std::to_string(a) + ")");
  const int side = static_cast<int>(a / nn);
  BinaryMatrix m(n, n);
  for (int start = 0; start < n; start += side) {
    for (int r = start; r < start + side; ++r) {
      for (int c = start; c < start + side; ++c) m.set(r, c, true);
    }
  }
  return m;
}

// Permutations whose consecutive length-a index blocks (and a final block of
// length r) each map onto their own value range; n = q*a + r, 0 <= r < a.
class SnaFamily {
 public:
  SnaFamily(int n, int a) : n_(n), a_(a) {
    require(a >= 1 && a <= std::max(n, 1), "S_{n,a} needs 1 <= a <= n (n=" + std::to_string(n) + ", a=" +
                                               std::to_string(a) + ")");
    q_ = n / a;
    r_ = n % a;
  }

  int n() const { return n_; }
  int a() const { return a_; }
  int q() const { return q_; }
  int r() const { return r_; }

  // (a!)^q * r!
  BigInt size() const {
    BigInt s = factorial(r_);
    const BigInt block = factorial(a_);
    for (int i = 0; i < q_; ++i) s *= block;
    return s;
  }

  bool contains(const Permutation& sigma) const {
    if (sigma.size() != n_) return false;
    for (int i = 0; i < n_; ++i) {
      if (i / a_ != sigma[static_cast<std::size_t>(i)] / a_) return false;
    }
    return true;
  }

  // Members in lexicographic order as 0-based one-line vectors.
  template <class Fn>
  void for_each(Fn&& fn, const Limits& limits = {}) const {
    require_enumerable(n_, limits);
    std::vector<int> current(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i) current[static_cast<std::size_t>(i)] = i;
    const int blocks = q_ + (r_ > 0 ? 1 : 0);
    while (true) {
      fn(std::span<const int>(current));
      int b = blocks - 1;
      for (; b >= 0; --b) {
        auto first = current.begin() + b * a_;
        auto last = current.begin() + std::min(n_, (b + 1) * a_);
        if (std::next_permutation(first, last)) break;
      }
      if (b < 0) return;
    }
  }

 private:
  int n_;
  int a_;
  int q_ = 0;
  int r_ = 0;
};

inline SnaFamily sna_family(int n, int a) { return {n, a}; }

// budget = q*C(a,k) + C(r,k) copies per member; chain_bound = n*a^{k-1}.
struct SnaBudget {
  int n = 0;
  int a = 0;
  int k = 0;
  std::uint64_t budget = 0;
  std::uint64_t chain_bound = 0;
};

inline SnaBudget sna_copy_budget(int n, int a, const Permutation& pi) {
  const int k = pi.size();
  require(k >= 2, "copy budget needs a pattern of length at least 2");
  require(pi(1) > pi(k), "copy budget needs pi(1) > pi(k); reverse the pattern first (normalize_first_above_last)");
  const SnaFamily family(n, a);
  SnaBudget b{n, a, k, 0, 0};
  b.budget = checked_add(static_cast<std::uint64_t>(family.q()) * binomial_u64(a, k), binomial_u64(family.r(), k));
  BigInt chain = BigInt(n) * boost::multiprecision::pow(BigInt(a), static_cast<unsigned>(k - 1));
  require(chain <= BigInt(std::numeric_limits<std::uint64_t>::max()), "n*a^{k-1} overflows 64 bits");
  b.chain_bound = chain.convert_to<std::uint64_t>();
  return b;
}

struct SnaVerification {
  SnaBudget budget;
  BigInt expected_size;
  std::uint64_t members = 0;
  std::uint64_t max_copies = 0;
  std::uint64_t over_budget = 0;  // members exceeding the budget
  bool size_matches = false;
  bool budget_within_chain = false;
  bool ok() const { return size_matches && budget_within_chain && over_budget == 0; }
};

// Streams every member of S_{n,a} and checks its copy count against the budget.
inline SnaVerification verify_sna_budget(int n, int a, const Permutation& pi, const Limits& limits = {}) {
  SnaVerification v;
  v.budget = sna_copy_budget(n, a, pi);
  const SnaFamily family(n, a);
  v.expected_size = family.size();
  const detail::PatternPlan plan(pi);
  family.for_each(
      [&](std::span<const int> sigma) {
        ++v.members;
        const std::uint64_t copies = detail::count_occurrences(sigma, plan);
        v.max_copies = std::max(v.max_copies, copies);
        if (copies > v.budget.budget) ++v.over_budget;
      },
      limits);
  v.size_matches = BigInt(v.members) == v.expected_size;
  v.budget_within_chain = v.budget.budget <= v.budget.chain_bound;
  return v;
}

// |S_n(m, pi)|: permutations of length n with at most m copies of pi.
inline std::uint64_t count_snm(int n, std::uint64_t m, const Permutation& pi, const Limits& limits = {}) {
  return copy_count_distribution(n, pi, limits).at_most(m);
}

}  // namespace hypav
