#include <catch_amalgamated.hpp>

#include <cmath>

#include "hypav/hypergraph.hpp"
#include "oracles.hpp"

using namespace hypav;

TEST_CASE("k-subsets in order") {
  std::vector<std::vector<int>> seen;
  for_each_k_subset(5, 3, [&](std::span<const int> s) {
    seen.emplace_back(s.begin(), s.end());
    return true;
  });
  CHECK(seen == oracle::subsets(5, 3));
}

TEST_CASE("construction and parsing") {
  const KUniformHypergraph h(4, 2, {{2, 1}, {3, 4}, {1, 2}});
  CHECK(h.edge_count() == 2);
  CHECK(h.edges().front() == Edge{1, 2});
  CHECK(h.has_edge(std::vector<int>{4, 3}));
  CHECK(KUniformHypergraph::parse_edge_list(h.to_edge_list(), 4, 2) == h);
  CHECK_THROWS_AS(KUniformHypergraph(4, 2, {{1, 5}}), ValidationError);
  CHECK_THROWS_AS(KUniformHypergraph(4, 2, {{1, 1}}), ValidationError);
  CHECK_THROWS_AS(KUniformHypergraph(4, 2, {{1, 2, 3}}), ValidationError);
  CHECK_THROWS_AS(KUniformHypergraph::parse_edge_list("1 2\n3 x\n", 4, 2), ValidationError);
  CHECK(KUniformHypergraph::complete(6, 3).edge_count() == 20);
}

TEST_CASE("random hypergraph extremes") {
  CHECK(random_uniform_hypergraph(7, 3, 1, 1) == KUniformHypergraph::complete(7, 3));
  CHECK(random_uniform_hypergraph(7, 3, 0, 1).edge_count() == 0);
  CHECK(random_uniform_hypergraph(9, 4, Rational(1, 3), 5) == random_uniform_hypergraph(9, 4, Rational(1, 3), 5));
  CHECK_THROWS_AS(random_uniform_hypergraph(5, 2, Rational(3, 2), 1), ValidationError);
  Limits small;
  small.hypergraph_candidate_ceiling = 10;
  CHECK_THROWS_AS(random_uniform_hypergraph(10, 3, Rational(1, 2), 1, small), CapExceeded);
}

TEST_CASE("random hypergraph edge count mean") {
  const double total = static_cast<double>(oracle::binom(20, 3));
  const int samples = 10000;
  double sum = 0, sum2 = 0;
  Rng rng(2024);
  for (int i = 0; i < samples; ++i) {
    const double e = static_cast<double>(random_uniform_hypergraph(20, 3, Rational(1, 2), rng).edge_count());
    sum += e;
    sum2 += e * e;
  }
  const double mean = sum / samples;
  const double se = std::sqrt((sum2 / samples - mean * mean) / (samples - 1));
  CHECK(std::abs(mean - total / 2) <= 3 * se);
}

TEST_CASE("multipartite hypergraph") {
  const auto h = multipartite_lambda_star(4, 2);
  CHECK(h.edges() == std::vector<Edge>{{1, 3}, {1, 4}, {2, 3}, {2, 4}});
  CHECK_FALSE(h.has_edge(std::vector<int>{1, 2}));
  CHECK_FALSE(h.has_edge(std::vector<int>{3, 4}));
  CHECK(multipartite_lambda_star(6, 3).edge_count() == 18);
  for (int n = 2; n <= 10; n += 2)
    for (int k = 1; k <= n / 2; ++k)
      CHECK(multipartite_lambda_star(n, k).edge_count() == oracle::binom(n, k) - 2 * oracle::binom(n / 2, k));
  CHECK_THROWS_AS(multipartite_lambda_star(5, 2), ValidationError);
  CHECK_THROWS_AS(multipartite_lambda_star(4, 3), ValidationError);
}

TEST_CASE("clique covers") {
  const auto complete = KUniformHypergraph::complete(6, 2);
  const auto windows = validate_clique_cover(complete, {{1, 2, 3}, {3, 4, 5}, {4, 5, 6}});
  CHECK(windows.valid);
  CHECK(windows.delta >= 1);
  CHECK(windows.Delta == 2);
  const auto whole = validate_clique_cover(complete, {{1, 2, 3, 4, 5, 6}});
  CHECK(whole.valid);
  CHECK(whole.clique_size == 6);
  CHECK(whole.delta == 1);
  CHECK(whole.Delta == 1);
  const auto bad = validate_clique_cover(multipartite_lambda_star(4, 2), {{1, 2, 3}});
  CHECK_FALSE(bad.valid);
  REQUIRE(bad.witness);
  CHECK(*bad.witness == Edge{1, 2});
  const auto partial = validate_clique_cover(complete, {{1, 2, 3}});
  CHECK_FALSE(partial.valid);
  CHECK(partial.delta == 0);
  CHECK_THROWS_AS(validate_clique_cover(complete, {{1, 2, 3}, {4, 5}}), ValidationError);
}

TEST_CASE("max clique of the multipartite hypergraph") {
  // a clique takes at most k-1 vertices from each part
  for (int k = 2; k <= 3; ++k)
    for (int n = 2 * k; n <= 10; n += 2) {
      const int expected = std::min(n, 2 * std::min(k - 1, n / 2));
      CHECK(max_clique_size(multipartite_lambda_star(n, k)) == expected);
    }
  CHECK(max_clique_size(KUniformHypergraph::complete(7, 3)) == 7);
  CHECK(max_clique_size(KUniformHypergraph::empty(7, 3)) == 2);
}
