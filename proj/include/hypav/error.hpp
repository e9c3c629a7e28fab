#pragma once

#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <type_traits>

namespace hypav {

// Input that violates an operation's preconditions (malformed text, bad
// dimensions, out-of-range parameters).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Work refused because it would exceed a configured enumeration cap or cost
// ceiling. The message names the limit that was hit.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caps and ceilings for the exponential operations. Every field is a
// configuration value; nothing below is baked into an algorithm.
struct Limits {
  int enumeration_cap = 12;             // largest n for a full pass over S_n
  int matrix_exhaustive_cap = 4;        // largest n for exhaustive n x n searches
  int max_clique_cap = 24;              // largest vertex count for clique brute force
  std::uint64_t h_edge_ceiling = 2'000'000;          // |E(H)| for build_h
  std::uint64_t subset_search_ceiling = 50'000'000;  // C(cells, size) for subset DFS
  std::uint64_t hypergraph_candidate_ceiling = 50'000'000;  // C(n,k) for generation
  double lambda_sampler_cost_ceiling = 2e9;  // samples * n! * C(n,k)
  std::uint64_t bnb_node_budget = 20'000'000;
  unsigned threads = 1;

  // Defaults overridden by HYPAV_ENUM_CAP, HYPAV_MATRIX_CAP and HYPAV_THREADS.
  static Limits from_env() {
    Limits limits;
    auto read = [](const char* name, auto& field) {
      if (const char* raw = std::getenv(name); raw != nullptr && *raw != '\0') {
        char* end = nullptr;
        const long value = std::strtol(raw, &end, 10);
        if (end == nullptr || *end != '\0' || value < 0) {
          throw ValidationError(std::string("environment variable ") + name +
                                " must be a non-negative integer");
        }
        field = static_cast<std::remove_reference_t<decltype(field)>>(value);
      }
    };
    read("HYPAV_ENUM_CAP", limits.enumeration_cap);
    read("HYPAV_MATRIX_CAP", limits.matrix_exhaustive_cap);
    read("HYPAV_THREADS", limits.threads);
    return limits;
  }
};

inline void require(bool condition, const std::string& message) {
  if (!condition) throw ValidationError(message);
}

inline void require_enumerable(int n, const Limits& limits, const char* what = "n") {
  if (n > limits.enumeration_cap) {
    throw CapExceeded(std::string(what) + "=" + std::to_string(n) +
                      " exceeds the enumeration cap of " +
                      std::to_string(limits.enumeration_cap));
  }
}

}  // namespace hypav
