#pragma once

// Pattern avoidance restricted to the edges of a k-uniform hypergraph, and the
// expected number of avoiders when the hypergraph is random with edge
// probability alpha:
//
//   E[|Av_{n,Lambda}(pi)|] = sum over sigma in S_n of (1 - alpha)^{copies of pi in sigma}.

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hypav/error.hpp"
#include "hypav/hypergraph.hpp"
#include "hypav/parallel.hpp"
#include "hypav/perm_core.hpp"
#include "hypav/random.hpp"
#include "hypav/rational.hpp"

namespace hypav {

namespace detail {

inline void require_lambda_shape(int n, const Permutation& pi, const KUniformHypergraph& lambda) {
  require(lambda.n() == n, "hypergraph has " + std::to_string(lambda.n()) + " vertices but sigma has length " +
                               std::to_string(n));
  require(lambda.k() == pi.size(), "hypergraph is " + std::to_string(lambda.k()) +
                                       "-uniform but the pattern has length " + std::to_string(pi.size()));
}

// Visits occurrences of pi in sigma whose index set is an edge of lambda.
template <class Visit>
bool for_each_lambda_occurrence(std::span<const int> sigma, const PatternPlan& plan,
                                const KUniformHypergraph& lambda, Visit&& visit) {
  if (lambda.edge_count() == 0) return true;
  return for_each_occurrence(sigma, plan, [&](std::span<const int> positions, std::uint64_t mask) {
    return !lambda.has_edge_mask(mask) || visit(positions);
  });
}

inline bool lambda_avoids(std::span<const int> sigma, const PatternPlan& plan, const KUniformHypergraph& lambda) {
  return for_each_lambda_occurrence(sigma, plan, lambda, [](std::span<const int>) { return false; });
}

}  // namespace detail

inline bool lambda_contains(const Permutation& sigma, const Permutation& pi, const KUniformHypergraph& lambda) {
  detail::require_lambda_shape(sigma.size(), pi, lambda);
  return !detail::lambda_avoids(sigma.zero_based(), detail::PatternPlan(pi), lambda);
}

inline std::uint64_t count_lambda_occurrences(const Permutation& sigma, const Permutation& pi,
                                              const KUniformHypergraph& lambda) {
  detail::require_lambda_shape(sigma.size(), pi, lambda);
  std::uint64_t count = 0;
  detail::for_each_lambda_occurrence(sigma.zero_based(), detail::PatternPlan(pi), lambda, [&](std::span<const int>) {
    count = checked_add(count, 1);
    return true;
  });
  return count;
}

// count >= 1 whenever k >= 2: one of the two monotone permutations always
// avoids pi on any hypergraph.
struct AvoiderReport {
  int n = 0;
  int k = 0;
  Permutation pattern;
  std::string lambda_descriptor;
  std::uint64_t lambda_edges = 0;
  std::uint64_t count = 0;
  std::optional<std::vector<Permutation>> avoiders;  // lexicographic, when requested
};

inline AvoiderReport enumerate_avoiders(int n, const Permutation& pi, const KUniformHypergraph& lambda,
                                        bool keep_list = false, const Limits& limits = {},
                                        std::string descriptor = "") {
  require(n >= 0, "n must be non-negative");
  require_enumerable(n, limits);
  detail::require_lambda_shape(n, pi, lambda);
  const detail::PatternPlan plan(pi);
  struct Block {
    std::uint64_t count = 0;
    std::vector<Permutation> list;
  };
  auto blocks = map_permutation_blocks(n, limits, [&](PermutationStream& stream) {
    Block b;
    while (stream.next()) {
      if (!detail::lambda_avoids(stream.current(), plan, lambda)) continue;
      ++b.count;
      if (keep_list) b.list.push_back(stream.permutation());
    }
    return b;
  });
  AvoiderReport report{n, pi.size(), pi, std::move(descriptor), lambda.edge_count(), 0, std::nullopt};
  if (keep_list) report.avoiders.emplace();
  for (auto& b : blocks) {
    report.count = checked_add(report.count, b.count);
    if (keep_list) report.avoiders->insert(report.avoiders->end(), b.list.begin(), b.list.end());
  }
  return report;
}

// exact_value is the exact rational expectation. bound_value = alpha^{-n/(k-1)}
// and empirical_constant = (log exact + (n/(k-1)) log alpha) / n are absent
// when undefined (alpha = 0, k < 2, or n = 0 for the constant).
struct ExpectationReport {
  int n = 0;
  int k = 0;
  Permutation pattern;
  Rational alpha;
  Rational exact_value;
  std::optional<double> bound_value;
  std::optional<double> empirical_constant;
};

inline ExpectationReport expectation_from_distribution(const CopyCountDistribution& dist, const Rational& alpha) {
  require(alpha >= 0 && alpha <= 1, "alpha " + to_string(alpha) + " is outside [0,1]");
  const Rational keep = 1 - alpha;
  ExpectationReport report;
  report.n = dist.n;
  report.k = dist.pattern.size();
  report.pattern = dist.pattern;
  report.alpha = alpha;
  Rational power = 1;
  std::uint64_t exponent = 0;
  for (const auto& [c, count] : dist.histogram) {
    power *= pow(keep, c - exponent);
    exponent = c;
    report.exact_value += power * count;
  }
  if (alpha > 0 && report.k >= 2) {
    const double growth = static_cast<double>(report.n) / static_cast<double>(report.k - 1);
    const double log_alpha = log_of(alpha);
    report.bound_value = std::exp(-growth * log_alpha);
    if (report.n > 0) {
      report.empirical_constant = (log_of(report.exact_value) + growth * log_alpha) / static_cast<double>(report.n);
    }
  }
  return report;
}

inline ExpectationReport exact_expected_avoiders(int n, int k, const Permutation& pi, const Rational& alpha,
                                                 const Limits& limits = {}) {
  require(k == pi.size(), "k=" + std::to_string(k) + " does not match the pattern length " + std::to_string(pi.size()));
  require(alpha >= 0 && alpha <= 1, "alpha " + to_string(alpha) + " is outside [0,1]");
  return expectation_from_distribution(copy_count_distribution(n, pi, limits), alpha);
}

// One pass over S_n shared by every alpha of the grid.
inline std::vector<ExpectationReport> exact_expected_avoiders_grid(int n, int k, const Permutation& pi,
                                                                   std::span<const Rational> alphas,
                                                                   const Limits& limits = {}) {
  require(k == pi.size(), "k=" + std::to_string(k) + " does not match the pattern length " + std::to_string(pi.size()));
  for (const auto& alpha : alphas) require(alpha >= 0 && alpha <= 1, "alpha " + to_string(alpha) + " is outside [0,1]");
  std::vector<ExpectationReport> out;
  if (alphas.empty()) return out;
  const auto dist = copy_count_distribution(n, pi, limits);
  for (const auto& alpha : alphas) out.push_back(expectation_from_distribution(dist, alpha));
  return out;
}

struct McEstimate {
  double estimate = 0.0;
  double standard_error = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
};

// n! times the sample mean of (1-alpha)^{c(sigma)} over uniform sigma.
inline McEstimate mc_expected_avoiders_by_sigma(int n, const Permutation& pi, const Rational& alpha,
                                                std::uint64_t samples, std::uint64_t seed, const Limits& limits = {}) {
  require(samples >= 1, "samples must be at least 1");
  require(n >= 0 && n <= 170, "n must be in 0..170 for the sigma sampler");
  require(alpha >= 0 && alpha <= 1, "alpha " + to_string(alpha) + " is outside [0,1]");
  const double keep = to_double(1 - alpha);
  const detail::PatternPlan plan(pi);
  const TrialChunks chunks{samples};
  struct Sums {
    double sum = 0.0;
    double sum_sq = 0.0;
  };
  std::vector<Sums> partial(chunks.count());
  parallel_for(chunks.count(), limits.threads, [&](std::size_t c) {
    Rng rng(seed, c);
    Sums s;
    for (std::uint64_t t = chunks.begin(c); t < chunks.end(c); ++t) {
      const auto sigma = rng.permutation(n);
      const double w = std::pow(keep, static_cast<double>(detail::count_occurrences(sigma, plan)));
      s.sum += w;
      s.sum_sq += w * w;
    }
    partial[c] = s;
  });
  Sums total;
  for (const auto& s : partial) {
    total.sum += s.sum;
    total.sum_sq += s.sum_sq;
  }
  const double count = static_cast<double>(samples);
  const double mean = total.sum / count;
  double variance = 0.0;
  if (samples > 1) variance = std::max(0.0, (total.sum_sq - total.sum * mean) / (count - 1.0));
  const double scale = std::exp(std::lgamma(static_cast<double>(n) + 1.0));
  const double n_factorial = n <= 20 ? static_cast<double>(factorial_u64(n)) : scale;
  return {n_factorial * mean, n_factorial * std::sqrt(variance / count), samples, seed};
}

// Sample mean of |Av_{n,Lambda}(pi)| over random Lambda; sample s draws its
// hypergraph from RNG stream (seed, s). Refuses when samples * n! * C(n,k)
// exceeds the configured cost ceiling.
inline McEstimate mc_expected_avoiders_by_lambda(int n, int k, const Permutation& pi, const Rational& alpha,
                                                 std::uint64_t samples, std::uint64_t seed,
                                                 const Limits& limits = {}) {
  require(samples >= 1, "samples must be at least 1");
  require(k == pi.size(), "k=" + std::to_string(k) + " does not match the pattern length " + std::to_string(pi.size()));
  require(k <= n, "k must not exceed n");
  require_enumerable(n, limits);
  const double cost = static_cast<double>(samples) * std::exp(std::lgamma(n + 1.0)) *
                      std::max(1.0, binomial(n, k).convert_to<double>());
  if (cost > limits.lambda_sampler_cost_ceiling) {
    throw CapExceeded("lambda sampler cost samples*n!*C(n,k) = " + std::to_string(cost) + " exceeds the ceiling of " +
                      std::to_string(limits.lambda_sampler_cost_ceiling));
  }
  Limits inner = limits;
  inner.threads = 1;
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(samples));
  parallel_for(counts.size(), limits.threads, [&](std::size_t s) {
    Rng rng(seed, s);
    const auto lambda = random_uniform_hypergraph(n, k, alpha, rng, inner);
    counts[s] = enumerate_avoiders(n, pi, lambda, false, inner).count;
  });
  BigInt sum = 0;
  BigInt sum_sq = 0;
  for (auto c : counts) {
    sum += c;
    sum_sq += BigInt(c) * c;
  }
  const BigInt total(samples);
  const Rational mean(sum, total);
  double se = 0.0;
  if (samples > 1) {
    const Rational variance = (Rational(sum_sq) - Rational(sum * sum, total)) / Rational(total - 1);
    se = std::sqrt(to_double(variance) / static_cast<double>(samples));
  }
  return {to_double(mean), se, samples, seed};
}

}  // namespace hypav
