#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "hypav/avoidance.hpp"
#include "oracles.hpp"

using namespace hypav;

namespace {
Permutation P(const char* s) { return Permutation::parse(s); }

oracle::EdgeSet edge_set(const KUniformHypergraph& h) { return {h.edges().begin(), h.edges().end()}; }

// sum over S_n of (1 - alpha)^{copies}, straight from the oracle counts
Rational oracle_expectation(int n, const Permutation& pi, const Rational& alpha) {
  Rational total = 0;
  for (const auto& s : oracle::all_perms(n)) total += pow(Rational(1) - alpha, oracle::count(s, pi.one_line()));
  return total;
}
}  // namespace

TEST_CASE("lambda containment examples") {
  const auto sigma = P("2,4,1,3");
  CHECK(lambda_contains(sigma, P("1,2"), KUniformHypergraph::complete(4, 2)) == contains(sigma, P("1,2")));
  CHECK_FALSE(lambda_contains(sigma, P("1,2"), KUniformHypergraph::empty(4, 2)));
  CHECK_FALSE(lambda_contains(P("3,4,1,2"), P("1,2"), multipartite_lambda_star(4, 2)));
  CHECK(count_lambda_occurrences(sigma, P("1,2"), KUniformHypergraph::complete(4, 2)) == 3);
  CHECK(count_lambda_occurrences(sigma, P("1,2"), KUniformHypergraph::empty(4, 2)) == 0);
  CHECK(count_lambda_occurrences(sigma, P("1,2"), KUniformHypergraph(4, 2, {{1, 2}})) == 1);
  CHECK_THROWS_AS(lambda_contains(sigma, P("1,2"), KUniformHypergraph::complete(5, 2)), ValidationError);
  CHECK_THROWS_AS(lambda_contains(sigma, P("1,2,3"), KUniformHypergraph::complete(4, 2)), ValidationError);
}

TEST_CASE("avoider examples") {
  CHECK(enumerate_avoiders(5, P("1,2"), KUniformHypergraph::empty(5, 2)).count == 120);
  const auto star = enumerate_avoiders(4, P("1,2"), multipartite_lambda_star(4, 2), true);
  CHECK(star.count == 4);
  REQUIRE(star.avoiders);
  std::vector<std::string> listed;
  for (const auto& p : *star.avoiders) listed.push_back(p.to_string());
  CHECK(listed == std::vector<std::string>{"3,4,1,2", "3,4,2,1", "4,3,1,2", "4,3,2,1"});
  Limits tiny;
  tiny.enumeration_cap = 5;
  CHECK_THROWS_AS(enumerate_avoiders(6, P("1,2"), KUniformHypergraph::complete(6, 2), false, tiny), CapExceeded);
}

TEST_CASE("avoiders match the oracle on complete hypergraphs") {
  const std::vector<std::uint64_t> catalan{1, 1, 2, 5, 14, 42, 132, 429, 1430};
  for (int n = 1; n <= 8; ++n)
    for (const char* pat : {"3,2,1", "1,3,2"}) {
      const auto got = enumerate_avoiders(n, P(pat), KUniformHypergraph::complete(n, 3)).count;
      if (n <= 7) CHECK(got == oracle::avoider_count(n, P(pat).one_line(), oracle::complete_edges(n, 3)));
      CHECK(got == catalan[static_cast<std::size_t>(n)]);
    }
}

TEST_CASE("avoiders match the oracle on random hypergraphs") {
  std::mt19937_64 gen(99);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 3 + static_cast<int>(gen() % 4);
    const int k = 2 + static_cast<int>(gen() % 2);
    oracle::Perm p(static_cast<std::size_t>(k));
    std::iota(p.begin(), p.end(), 1);
    std::shuffle(p.begin(), p.end(), gen);
    const auto lambda = random_uniform_hypergraph(n, k, Rational(1, 2), gen());
    const auto report = enumerate_avoiders(n, Permutation(p), lambda, true);
    CHECK(report.count == oracle::avoider_count(n, p, edge_set(lambda)));
    CHECK(report.count >= 1);
    CHECK(report.avoiders->size() == report.count);
  }
}

TEST_CASE("avoider counts shrink as edges are added") {
  const auto pi = P("2,1,3");
  std::vector<Edge> edges;
  std::uint64_t previous = oracle::factorial(6);
  for_each_k_subset(6, 3, [&](std::span<const int> e) {
    edges.emplace_back(e.begin(), e.end());
    const auto now = enumerate_avoiders(6, pi, KUniformHypergraph(6, 3, edges)).count;
    CHECK(now <= previous);
    previous = now;
    return true;
  });
}

TEST_CASE("exact expectation examples") {
  for (const auto& alpha : {Rational(0), Rational(1, 3), Rational(1, 2), Rational(1)})
    CHECK(exact_expected_avoiders(2, 2, P("1,2"), alpha).exact_value == Rational(2) - alpha);
  CHECK(exact_expected_avoiders(6, 3, P("1,3,2"), 0).exact_value == 720);
  CHECK(exact_expected_avoiders(6, 3, P("1,3,2"), 1).exact_value == 132);
  const auto r = exact_expected_avoiders(5, 2, P("2,1"), Rational(1, 2));
  CHECK(r.exact_value == oracle_expectation(5, P("2,1"), Rational(1, 2)));
  REQUIRE(r.bound_value);
  CHECK(*r.bound_value == Catch::Approx(32.0));
  CHECK_FALSE(exact_expected_avoiders(5, 2, P("2,1"), 0).bound_value);
}

TEST_CASE("expectation matches the oracle, is monotone and at least one") {
  for (const char* pat : {"1,2", "2,1", "1,3,2", "2,3,1"}) {
    const auto pi = P(pat);
    for (int n = 1; n <= 6; ++n) {
      std::vector<Rational> grid;
      for (int i = 0; i <= 10; ++i) grid.emplace_back(i, 10);
      const auto reports = exact_expected_avoiders_grid(n, pi.size(), pi, grid);
      for (std::size_t i = 0; i < reports.size(); ++i) {
        CHECK(reports[i].exact_value >= 1);
        if (i > 0) CHECK(reports[i].exact_value <= reports[i - 1].exact_value);
      }
      CHECK(reports[3].exact_value == oracle_expectation(n, pi, grid[3]));
    }
  }
}

TEST_CASE("empirical constant stays bounded") {
  for (int n = 2; n <= 7; ++n)
    for (int i = 1; i <= 9; ++i) {
      const auto r = exact_expected_avoiders(n, 2, P("2,1"), Rational(i, 10));
      REQUIRE(r.empirical_constant);
      CHECK(std::abs(*r.empirical_constant) <= 3.0);
    }
}

TEST_CASE("sigma sampler") {
  const auto zero = mc_expected_avoiders_by_sigma(6, P("1,2"), 0, 500, 1);
  CHECK(zero.estimate == 720.0);
  CHECK(zero.standard_error == 0.0);
  const auto est = mc_expected_avoiders_by_sigma(6, P("1,2"), Rational(1, 2), 100000, 3);
  const double exact = to_double(exact_expected_avoiders(6, 2, P("1,2"), Rational(1, 2)).exact_value);
  CHECK(std::abs(est.estimate - exact) <= 3 * est.standard_error);
  const auto again = mc_expected_avoiders_by_sigma(6, P("1,2"), Rational(1, 2), 100000, 3);
  CHECK(again.estimate == est.estimate);
  Limits four;
  four.threads = 4;
  CHECK(mc_expected_avoiders_by_sigma(6, P("1,2"), Rational(1, 2), 100000, 3, four).estimate == est.estimate);
}

TEST_CASE("lambda sampler") {
  const auto zero = mc_expected_avoiders_by_lambda(5, 2, P("2,1"), 0, 20, 1);
  CHECK(zero.estimate == 120.0);
  const auto one = mc_expected_avoiders_by_lambda(5, 2, P("2,1"), 1, 20, 1);
  CHECK(one.estimate == 1.0);
  CHECK(one.standard_error == 0.0);
  const auto est = mc_expected_avoiders_by_lambda(5, 2, P("2,1"), Rational(1, 2), 200, 17);
  const double exact = to_double(exact_expected_avoiders(5, 2, P("2,1"), Rational(1, 2)).exact_value);
  CHECK(std::abs(est.estimate - exact) <= 3 * est.standard_error);
  Limits tight;
  tight.lambda_sampler_cost_ceiling = 1000;
  CHECK_THROWS_AS(mc_expected_avoiders_by_lambda(6, 2, P("2,1"), Rational(1, 2), 200, 17, tight), CapExceeded);
}
