#pragma once

// JSON forms of the library types. Exact quantities are written as rational
// strings ("3/2") with a parallel "*_decimal" field; counts that can exceed
// 64 bits are strings.

#include <json.hpp>

#include <string>
#include <vector>

#include "hypav/avoidance.hpp"
#include "hypav/containers_view.hpp"
#include "hypav/contraction.hpp"
#include "hypav/hypergraph.hpp"
#include "hypav/matrix_core.hpp"
#include "hypav/perm_core.hpp"
#include "hypav/supersat.hpp"

namespace hypav {

using Json = nlohmann::ordered_json;

inline void put_rational(Json& j, const std::string& key, const Rational& value) {
  j[key] = to_string(value);
  j[key + "_decimal"] = to_decimal(value);
}

inline Json to_json(const Permutation& p) { return p.to_string(); }

inline Json to_json(const BinaryMatrix& m) {
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", m.row_strings()}};
}

inline BinaryMatrix matrix_from_json(const Json& j) {
  require(j.is_object() && j.contains("rows") && j.contains("cols") && j.contains("data"),
          "matrix JSON needs rows, cols and data");
  const auto lines = j.at("data").get<std::vector<std::string>>();
  require(static_cast<int>(lines.size()) == j.at("rows").get<int>(), "matrix JSON row count mismatch");
  BinaryMatrix m = lines.empty() ? BinaryMatrix(0, j.at("cols").get<int>()) : BinaryMatrix::from_rows(lines);
  require(m.cols() == j.at("cols").get<int>(), "matrix JSON column count mismatch");
  return m;
}

inline Json to_json(const KUniformHypergraph& h) {
  return Json{{"n", h.n()}, {"k", h.k()}, {"edges", h.edges()}};
}

inline KUniformHypergraph hypergraph_from_json(const Json& j) {
  require(j.is_object() && j.contains("n") && j.contains("k") && j.contains("edges"),
          "hypergraph JSON needs n, k and edges");
  return {j.at("n").get<int>(), j.at("k").get<int>(), j.at("edges").get<std::vector<Edge>>()};
}

inline Json to_json(const CopyCountDistribution& d) {
  Json histogram = Json::object();
  for (const auto& [c, count] : d.histogram) histogram[std::to_string(c)] = std::to_string(count);
  return Json{{"n", d.n}, {"pattern", to_json(d.pattern)}, {"total", std::to_string(d.total())},
              {"histogram", histogram}};
}

inline Json to_json(const AvoiderReport& r) {
  Json j{{"n", r.n}, {"k", r.k}, {"pattern", to_json(r.pattern)}, {"lambda", r.lambda_descriptor},
         {"lambda_edges", r.lambda_edges}, {"count", r.count}};
  if (r.avoiders) {
    Json list = Json::array();
    for (const auto& p : *r.avoiders) list.push_back(p.to_string());
    j["avoiders"] = list;
  }
  return j;
}

inline Json to_json(const ExpectationReport& r) {
  Json j{{"n", r.n}, {"k", r.k}, {"pattern", to_json(r.pattern)}};
  put_rational(j, "alpha", r.alpha);
  put_rational(j, "exact", r.exact_value);
  j["bound"] = r.bound_value ? Json(*r.bound_value) : Json(nullptr);
  j["empirical_constant"] = r.empirical_constant ? Json(*r.empirical_constant) : Json(nullptr);
  return j;
}

inline Json to_json(const McEstimate& e) {
  return Json{{"estimate", e.estimate}, {"standard_error", e.standard_error}, {"samples", e.samples}, {"seed", e.seed}};
}

inline Json to_json(const CliqueCover& c) {
  Json j{{"valid", c.valid}, {"clique_size", c.clique_size}, {"cliques", c.cliques}, {"delta", c.delta},
         {"Delta", c.Delta}};
  if (!c.valid) j["failure"] = c.failure;
  if (c.witness) j["witness"] = *c.witness;
  return j;
}

inline Json to_json(const ExtremalReport& r) {
  Json j{{"n", r.n}};
  if (r.a) j["a"] = *r.a;
  j["pattern"] = to_json(r.pattern);
  j["measured"] = r.measured;
  j["mode"] = r.mode;
  if (r.bound_form) put_rational(j, "bound_form", *r.bound_form);
  if (r.ratio) put_rational(j, "ratio", *r.ratio);
  j["witness"] = to_json(r.witness);
  return j;
}

inline Json to_json(const SnaVerification& v) {
  return Json{{"n", v.budget.n},
              {"a", v.budget.a},
              {"k", v.budget.k},
              {"budget", v.budget.budget},
              {"chain_bound", v.budget.chain_bound},
              {"expected_size", v.expected_size.str()},
              {"members", v.members},
              {"max_copies", v.max_copies},
              {"over_budget", v.over_budget},
              {"ok", v.ok()}};
}

inline Json to_json(const PatternHypergraph& h) {
  return Json{{"n", h.n}, {"k", h.k}, {"pattern", to_json(h.pattern)}, {"edge_count", h.edge_count()},
              {"edges", h.edges}};
}

inline Json to_json(const SamplingEstimate& e) {
  Json j{{"r", e.r}, {"trials", e.trials}, {"seed", e.seed}};
  put_rational(j, "mean_one_density", e.mean_one_density);
  put_rational(j, "mean_pi_density", e.mean_pi_density);
  j["se_one_density"] = e.se_one_density;
  j["se_pi_density"] = e.se_pi_density;
  return j;
}

}  // namespace hypav
