#pragma once

// k-uniform hypergraphs on vertices 1..n (n <= 64).

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "hypav/error.hpp"
#include "hypav/random.hpp"
#include "hypav/rational.hpp"

namespace hypav {

// Sorted, strictly increasing 1-based vertices.
using Edge = std::vector<int>;

inline std::uint64_t vertex_mask(std::span<const int> vertices) {
  std::uint64_t mask = 0;
  for (int v : vertices) mask |= std::uint64_t{1} << static_cast<unsigned>(v - 1);
  return mask;
}

// Visits every k-subset of {1..n} in lexicographic order as a sorted
// vector of 1-based vertices; stops when fn returns false.
template <class Fn>
void for_each_k_subset(int n, int k, Fn&& fn) {
  if (k < 0 || k > n) return;
  std::vector<int> subset(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) subset[static_cast<std::size_t>(i)] = i + 1;
  while (true) {
    if (!fn(std::span<const int>(subset))) return;
    int i = k - 1;
    while (i >= 0 && subset[static_cast<std::size_t>(i)] == n - k + i + 1) --i;
    if (i < 0) return;
    ++subset[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) subset[static_cast<std::size_t>(j)] = subset[static_cast<std::size_t>(j - 1)] + 1;
  }
}

class KUniformHypergraph {
 public:
  KUniformHypergraph() = default;

  // Edges are validated, sorted and deduplicated.
  KUniformHypergraph(int n, int k, std::vector<Edge> edges) : n_(n), k_(k) {
    require(n >= 0 && n <= 64, "hypergraph vertex count must be in 0..64, got " + std::to_string(n));
    require(k >= 0, "uniformity must be non-negative");
    for (auto& e : edges) {
      std::sort(e.begin(), e.end());
      require(static_cast<int>(e.size()) == k,
              "edge of size " + std::to_string(e.size()) + " in a " + std::to_string(k) + "-uniform hypergraph");
      require(std::adjacent_find(e.begin(), e.end()) == e.end(), "edge repeats a vertex");
      require(e.empty() || (e.front() >= 1 && e.back() <= n),
              "edge vertex outside 1.." + std::to_string(n));
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    edges_ = std::move(edges);
    masks_.reserve(edges_.size());
    for (const auto& e : edges_) masks_.insert(vertex_mask(e));
  }

  static KUniformHypergraph complete(int n, int k) {
    std::vector<Edge> edges;
    for_each_k_subset(n, k, [&](std::span<const int> s) {
      edges.emplace_back(s.begin(), s.end());
      return true;
    });
    return {n, k, std::move(edges)};
  }

  static KUniformHypergraph empty(int n, int k) { return {n, k, {}}; }

  int n() const { return n_; }
  int k() const { return k_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t edge_count() const { return edges_.size(); }

  // Bit v-1 set for each vertex v.
  bool has_edge_mask(std::uint64_t mask) const { return masks_.contains(mask); }
  bool has_edge(std::span<const int> vertices) const { return has_edge_mask(vertex_mask(vertices)); }

  // One sorted k-tuple per line, vertices separated by single spaces.
  std::string to_edge_list() const {
    std::string out;
    for (const auto& e : edges_) {
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (i != 0) out.push_back(' ');
        out += std::to_string(e[i]);
      }
      out.push_back('\n');
    }
    return out;
  }

  static KUniformHypergraph parse_edge_list(std::string_view text, int n, int k) {
    std::vector<Edge> edges;
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      std::istringstream fields(line);
      Edge e;
      std::string token;
      while (fields >> token) {
        require(token.find_first_not_of("0123456789") == std::string::npos,
                "malformed edge list: line " + std::to_string(line_no) + " has non-integer token '" + token + "'");
        e.push_back(std::stoi(token));
      }
      require(std::is_sorted(e.begin(), e.end()),
              "malformed edge list: line " + std::to_string(line_no) + " is not sorted");
      require(static_cast<int>(e.size()) == k, "malformed edge list: line " + std::to_string(line_no) + " has " +
                                                   std::to_string(e.size()) + " vertices, expected " +
                                                   std::to_string(k));
      edges.push_back(std::move(e));
    }
    return {n, k, std::move(edges)};
  }

  friend bool operator==(const KUniformHypergraph& a, const KUniformHypergraph& b) {
    return a.n_ == b.n_ && a.k_ == b.k_ && a.edges_ == b.edges_;
  }

 private:
  int n_ = 0;
  int k_ = 0;
  std::vector<Edge> edges_;
  std::unordered_set<std::uint64_t> masks_;
};

// Each of the C(n,k) candidate edges, visited in lexicographic order, is kept
// independently with probability alpha.
inline KUniformHypergraph random_uniform_hypergraph(int n, int k, const Rational& alpha, Rng& rng,
                                                    const Limits& limits = {}) {
  const Probability p = Probability::from(alpha);
  require(k >= 0 && k <= n, "uniformity k=" + std::to_string(k) + " exceeds n=" + std::to_string(n));
  require(n <= 64, "hypergraph vertex count must be at most 64");
  if (binomial(n, k) > limits.hypergraph_candidate_ceiling) {
    throw CapExceeded("C(" + std::to_string(n) + "," + std::to_string(k) + ") candidate edges exceeds the ceiling of " +
                      std::to_string(limits.hypergraph_candidate_ceiling));
  }
  std::vector<Edge> edges;
  for_each_k_subset(n, k, [&](std::span<const int> s) {
    if (rng.bernoulli(p)) edges.emplace_back(s.begin(), s.end());
    return true;
  });
  return {n, k, std::move(edges)};
}

inline KUniformHypergraph random_uniform_hypergraph(int n, int k, const Rational& alpha, std::uint64_t seed,
                                                    const Limits& limits = {}) {
  Rng rng(seed);
  return random_uniform_hypergraph(n, k, alpha, rng, limits);
}

// Parts {1..n/2} and {n/2+1..n}; every k-set meeting both parts is an edge,
// giving C(n,k) - 2 C(n/2,k) edges.
inline KUniformHypergraph multipartite_lambda_star(int n, int k) {
  require(n >= 0 && n % 2 == 0, "multipartite construction needs even n, got " + std::to_string(n));
  require(k >= 1 && k <= n / 2, "multipartite construction needs 1 <= k <= n/2, got k=" + std::to_string(k));
  const int half = n / 2;
  std::vector<Edge> edges;
  for_each_k_subset(n, k, [&](std::span<const int> s) {
    if (s.front() <= half && s.back() > half) edges.emplace_back(s.begin(), s.end());
    return true;
  });
  return {n, k, std::move(edges)};
}

// Result of checking a claimed collection of L-vertex cliques. `valid` is
// false when a clique misses an edge (witness holds the missing k-set) or
// some vertex lies in no clique (delta == 0).
struct CliqueCover {
  int clique_size = 0;
  std::vector<Edge> cliques;
  int delta = 0;
  int Delta = 0;
  bool valid = false;
  std::string failure;
  std::optional<Edge> witness;
};

inline CliqueCover validate_clique_cover(const KUniformHypergraph& lambda, std::vector<Edge> cliques) {
  require(!cliques.empty(), "clique cover must list at least one clique");
  CliqueCover cover;
  cover.clique_size = static_cast<int>(cliques.front().size());
  for (auto& c : cliques) {
    std::sort(c.begin(), c.end());
    require(static_cast<int>(c.size()) == cover.clique_size, "clique sizes differ: " + std::to_string(c.size()) +
                                                                 " vs " + std::to_string(cover.clique_size));
    require(!c.empty(), "cliques must be non-empty");
    require(std::adjacent_find(c.begin(), c.end()) == c.end(), "clique repeats a vertex");
    require(c.front() >= 1 && c.back() <= lambda.n(), "clique vertex outside 1.." + std::to_string(lambda.n()));
  }
  require(cover.clique_size >= lambda.k(), "clique size " + std::to_string(cover.clique_size) +
                                               " is below the uniformity " + std::to_string(lambda.k()));
  cover.cliques = cliques;
  std::vector<int> membership(static_cast<std::size_t>(lambda.n()), 0);
  for (const auto& c : cover.cliques) {
    for (int v : c) ++membership[static_cast<std::size_t>(v - 1)];
  }
  if (!membership.empty()) {
    cover.delta = *std::min_element(membership.begin(), membership.end());
    cover.Delta = *std::max_element(membership.begin(), membership.end());
  }
  for (const auto& c : cover.cliques) {
    Edge chosen(static_cast<std::size_t>(lambda.k()));
    for_each_k_subset(cover.clique_size, lambda.k(), [&](std::span<const int> idx) {
      for (std::size_t i = 0; i < idx.size(); ++i) chosen[i] = c[static_cast<std::size_t>(idx[i] - 1)];
      if (lambda.has_edge(chosen)) return true;
      cover.witness = chosen;
      return false;
    });
    if (cover.witness) {
      cover.failure = "clique is missing an edge";
      return cover;
    }
  }
  if (cover.delta == 0) {
    cover.failure = "some vertex lies in no clique";
    return cover;
  }
  cover.valid = true;
  return cover;
}

// Size of the largest vertex set all of whose k-subsets are edges. Sets with
// fewer than k vertices qualify vacuously. Exponential; gated by
// max_clique_cap.
inline int max_clique_size(const KUniformHypergraph& lambda, const Limits& limits = {}) {
  const int n = lambda.n();
  const int k = lambda.k();
  require(k >= 1, "clique search needs uniformity k >= 1");
  if (n > limits.max_clique_cap) {
    throw CapExceeded("clique search on n=" + std::to_string(n) + " exceeds the cap of " +
                      std::to_string(limits.max_clique_cap));
  }
  int best = 0;
  std::vector<int> clique;
  // Adding v keeps the clique property iff every (k-1)-subset of the current
  // clique together with v is an edge.
  auto extends = [&](int v) {
    if (static_cast<int>(clique.size()) < k - 1) return true;
    bool ok = true;
    Edge e(static_cast<std::size_t>(k));
    for_each_k_subset(static_cast<int>(clique.size()), k - 1, [&](std::span<const int> idx) {
      for (std::size_t i = 0; i < idx.size(); ++i) e[i] = clique[static_cast<std::size_t>(idx[i] - 1)];
      e.back() = v;
      ok = lambda.has_edge(e);
      return ok;
    });
    return ok;
  };
  auto grow = [&](auto& self, int next) -> void {
    best = std::max(best, static_cast<int>(clique.size()));
    if (static_cast<int>(clique.size()) + (n - next + 1) <= best) return;
    for (int v = next; v <= n; ++v) {
      if (!extends(v)) continue;
      clique.push_back(v);
      self(self, v + 1);
      clique.pop_back();
    }
  };
  grow(grow, 1);
  return best;
}

}  // namespace hypav
