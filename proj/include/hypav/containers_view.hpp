#pragma once

// Hypergraph formulation of Lambda-avoidance on the n x n grid.
//
// Grid vertex v(row, col), both 1-based, has flat index (row-1)*n + (col-1).
// For every edge {x_1 < ... < x_k} of Lambda and every y_1 < ... < y_k the
// set {v(x_1, y_pi(1)), ..., v(x_k, y_pi(k))} is an edge of H, so a canonical
// set (one cell per row and column) is independent exactly when its
// permutation Lambda-avoids pi. The Lambda-indexed coordinate is the row.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "hypav/error.hpp"
#include "hypav/hypergraph.hpp"
#include "hypav/perm_core.hpp"
#include "hypav/rational.hpp"

namespace hypav {

struct GridCell {
  int row = 0;
  int col = 0;

  friend bool operator==(const GridCell&, const GridCell&) = default;
  friend auto operator<=>(const GridCell&, const GridCell&) = default;
};

inline int flat_index(int n, GridCell cell) { return (cell.row - 1) * n + (cell.col - 1); }
inline GridCell grid_cell(int n, int flat) { return {flat / n + 1, flat % n + 1}; }

struct PatternHypergraph {
  int n = 0;
  int k = 0;
  Permutation pattern;
  std::vector<std::vector<int>> edges;  // sorted flat-index tuples, lexicographic order
  std::vector<std::uint64_t> masks;     // masks[i] has the cells of edges[i]

  int vertex_count() const { return n * n; }
  std::size_t edge_count() const { return edges.size(); }
};

inline PatternHypergraph build_h(int n, const Permutation& pi, const KUniformHypergraph& lambda,
                                 const Limits& limits = {}) {
  require(n >= 0 && n <= 8, "grid hypergraph needs n <= 8 (n^2 cells must fit in 64 bits)");
  require(lambda.n() == n && lambda.k() == pi.size(),
          "hypergraph must have n vertices and uniformity equal to the pattern length");
  const int k = pi.size();
  const BigInt expected = BigInt(lambda.edge_count()) * binomial(n, k);
  if (expected > limits.h_edge_ceiling) {
    throw CapExceeded("|E(H)| = " + expected.str() + " exceeds the edge ceiling of " +
                      std::to_string(limits.h_edge_ceiling));
  }
  PatternHypergraph h{n, k, pi, {}, {}};
  std::vector<std::pair<std::vector<int>, std::uint64_t>> built;
  built.reserve(expected.convert_to<std::size_t>());
  for (const auto& x : lambda.edges()) {
    for_each_k_subset(n, k, [&](std::span<const int> y) {
      std::vector<int> cells(static_cast<std::size_t>(k));
      std::uint64_t mask = 0;
      for (int i = 0; i < k; ++i) {
        const GridCell cell{x[static_cast<std::size_t>(i)], y[static_cast<std::size_t>(pi[static_cast<std::size_t>(i)])]};
        cells[static_cast<std::size_t>(i)] = flat_index(n, cell);
        mask |= std::uint64_t{1} << static_cast<unsigned>(cells[static_cast<std::size_t>(i)]);
      }
      built.emplace_back(std::move(cells), mask);
      return true;
    });
  }
  std::sort(built.begin(), built.end());
  built.erase(std::unique(built.begin(), built.end()), built.end());
  for (auto& [cells, mask] : built) {
    h.edges.push_back(std::move(cells));
    h.masks.push_back(mask);
  }
  return h;
}

// n cells, exactly one per row and per column, listed by row.
struct CanonicalSet {
  int n = 0;
  std::vector<GridCell> cells;
};

inline CanonicalSet canonical_set(const Permutation& sigma) {
  CanonicalSet s{sigma.size(), {}};
  for (int i = 1; i <= sigma.size(); ++i) s.cells.push_back({i, sigma(i)});
  return s;
}

inline Permutation to_permutation(const CanonicalSet& s) {
  require(static_cast<int>(s.cells.size()) == s.n, "canonical set must have exactly n cells");
  std::vector<int> one_line(static_cast<std::size_t>(s.n), 0);
  for (const auto& cell : s.cells) {
    require(cell.row >= 1 && cell.row <= s.n && cell.col >= 1 && cell.col <= s.n, "cell outside the grid");
    require(one_line[static_cast<std::size_t>(cell.row - 1)] == 0,
            "canonical set has two cells in row " + std::to_string(cell.row));
    one_line[static_cast<std::size_t>(cell.row - 1)] = cell.col;
  }
  return Permutation(one_line);  // rejects repeated columns
}

inline std::uint64_t cell_mask(int n, std::span<const GridCell> cells) {
  std::uint64_t mask = 0;
  for (const auto& cell : cells) {
    require(cell.row >= 1 && cell.row <= n && cell.col >= 1 && cell.col <= n,
            "cell (" + std::to_string(cell.row) + "," + std::to_string(cell.col) + ") outside the grid");
    mask |= std::uint64_t{1} << static_cast<unsigned>(flat_index(n, cell));
  }
  return mask;
}

inline bool is_independent_mask(const PatternHypergraph& h, std::uint64_t set) {
  return std::none_of(h.masks.begin(), h.masks.end(), [&](std::uint64_t e) { return (e & ~set) == 0; });
}

// No edge of h lies inside s.
inline bool is_independent(const PatternHypergraph& h, std::span<const GridCell> s) {
  return is_independent_mask(h, cell_mask(h.n, s));
}

// Independent sets with exactly `size` cells, by DFS over cells in row-major
// order; each edge is checked when its largest cell is added.
inline BigInt count_independent_of_size(const PatternHypergraph& h, int size, const Limits& limits = {}) {
  const int cells = h.vertex_count();
  require(size >= 0, "size must be non-negative");
  if (size > cells) return 0;
  if (binomial(cells, size) > limits.subset_search_ceiling) {
    throw CapExceeded("C(" + std::to_string(cells) + "," + std::to_string(size) + ") subsets exceeds the search ceiling of " +
                      std::to_string(limits.subset_search_ceiling));
  }
  std::vector<std::vector<std::uint64_t>> closing(static_cast<std::size_t>(cells));
  for (std::size_t i = 0; i < h.masks.size(); ++i) {
    if (h.masks[i] == 0) return 0;  // the empty edge lies in every set
    closing[static_cast<std::size_t>(63 - std::countl_zero(h.masks[i]))].push_back(h.masks[i]);
  }
  std::uint64_t count = 0;
  auto dfs = [&](auto& self, int next, int chosen, std::uint64_t set) -> void {
    if (chosen == size) {
      ++count;
      return;
    }
    for (int v = next; v <= cells - (size - chosen); ++v) {
      const std::uint64_t with = set | (std::uint64_t{1} << static_cast<unsigned>(v));
      const auto& edges = closing[static_cast<std::size_t>(v)];
      if (std::any_of(edges.begin(), edges.end(), [&](std::uint64_t e) { return (e & ~with) == 0; })) continue;
      self(self, v + 1, chosen + 1, with);
    }
  };
  dfs(dfs, 0, 0, 0);
  return BigInt(count);
}

// Maximum number of edges containing a common set of ell vertices, tallied
// over the ell-subsets of each edge.
inline std::uint64_t delta_ell(const PatternHypergraph& h, int ell) {
  require(ell >= 1 && ell <= h.k, "ell must satisfy 1 <= ell <= k=" + std::to_string(h.k));
  std::unordered_map<std::uint64_t, std::uint64_t> tally;
  std::uint64_t best = 0;
  for (const auto& edge : h.edges) {
    for_each_k_subset(h.k, ell, [&](std::span<const int> idx) {
      std::uint64_t key = 0;
      for (int i : idx) key |= std::uint64_t{1} << static_cast<unsigned>(edge[static_cast<std::size_t>(i - 1)]);
      best = std::max(best, ++tally[key]);
      return true;
    });
  }
  return best;
}

}  // namespace hypav
