#pragma once

// Command-line front end. run() is the whole program minus process plumbing
// so tests can drive it in-process.
//
// Exit codes: 0 success, 1 replay mismatch or internal error, 2 validation
// error (bad flags, malformed input), 3 refusal by a cap or ceiling.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "hypav/avoidance.hpp"
#include "hypav/containers_view.hpp"
#include "hypav/contraction.hpp"
#include "hypav/error.hpp"
#include "hypav/hypergraph.hpp"
#include "hypav/matrix_core.hpp"
#include "hypav/perm_core.hpp"
#include "hypav/serialize.hpp"
#include "hypav/supersat.hpp"

namespace hypav::cli {

inline constexpr const char* kVersion = "0.1.0";

// FNV-1a, 64-bit; used for manifest output digests.
inline std::string digest(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream out;
  out << "fnv1a64:" << std::hex << std::setw(16) << std::setfill('0') << h;
  return out.str();
}

// A report body plus, for grid sweeps, the fixed column order of body["rows"].
struct Report {
  Json body;
  std::optional<std::vector<std::string>> grid_columns;
};

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), "cannot read file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

inline bool looks_like_json(const std::string& text) {
  const auto pos = text.find_first_not_of(" \t\r\n");
  return pos != std::string::npos && text[pos] == '{';
}

inline std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  if (text.empty()) return parts;
  std::size_t start = 0;
  while (true) {
    const auto at = text.find(sep, start);
    parts.push_back(text.substr(start, at - start));
    if (at == std::string::npos) break;
    start = at + 1;
  }
  return parts;
}

inline std::vector<Rational> parse_rational_list(const std::string& text) {
  std::vector<Rational> out;
  for (const auto& part : split(text, ',')) out.push_back(parse_rational(part));
  return out;
}

inline std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  return out + "\"";
}

inline std::string csv_value(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "";
  return v.dump();
}

// Nested objects become dotted keys; arrays stay as compact JSON strings.
inline void flatten(const Json& j, const std::string& prefix, Json& out) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
    if (it.value().is_object()) {
      flatten(it.value(), key, out);
    } else {
      out[key] = it.value();
    }
  }
}

inline std::string to_csv(const Report& report) {
  std::vector<std::string> columns;
  std::vector<Json> rows;
  if (report.grid_columns) {
    columns = *report.grid_columns;
    for (const auto& row : report.body.at("rows")) {
      Json flat = Json::object();
      flatten(row, "", flat);
      rows.push_back(flat);
    }
  } else {
    Json flat = Json::object();
    flatten(report.body, "", flat);
    for (auto it = flat.begin(); it != flat.end(); ++it) columns.push_back(it.key());
    rows.push_back(flat);
  }
  std::string out;
  for (std::size_t i = 0; i < columns.size(); ++i) out += (i ? "," : "") + csv_escape(columns[i]);
  out += "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < columns.size(); ++i) {
      const std::string cell = row.contains(columns[i]) ? csv_value(row.at(columns[i])) : "";
      out += (i ? "," : "") + csv_escape(cell);
    }
    out += "\n";
  }
  return out;
}

}  // namespace detail

// Every flag of every subcommand lands here; handlers read what they need.
struct Params {
  std::string format = "json";
  unsigned threads = 0;
  int cap = -1;
  int matrix_cap = -1;

  std::string sigma, pi, alpha, alpha_grid, a_grid, b = "2", matrix, from_file, cliques, lambda = "complete", by = "sigma";
  int n = -1;
  int k = -1;
  int r = -1;
  int ell = -1;
  int size = -1;
  std::uint64_t a = 0;
  std::uint64_t m = 0;
  std::uint64_t seed = 1;
  std::uint64_t samples = 1000;
  std::uint64_t trials = 10000;
  bool list = false;
  bool verify = false;
  bool max_clique = false;
  bool no_search = false;
};

class Program {
 public:
  int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args;
    std::optional<std::string> manifest_path;
    for (std::size_t i = 0; i < raw_args.size(); ++i) {
      if (raw_args[i] == "--manifest" && i + 1 < raw_args.size()) {
        manifest_path = raw_args[++i];
      } else if (raw_args[i].rfind("--manifest=", 0) == 0) {
        manifest_path = raw_args[i].substr(11);
      } else {
        args.push_back(raw_args[i]);
      }
    }
    if (!args.empty() && args.front() == "replay") return replay(args, out, err);

    const auto started = std::chrono::steady_clock::now();
    std::string output;
    std::string subcommand;
    const int code = execute(args, output, subcommand, out, err);
    if (code != 0) return code;
    out << output;
    if (manifest_path) {
      const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
      Json manifest{{"subcommand", subcommand},
                    {"args", args},
                    {"seed", uses_seed(subcommand) ? Json(params_.seed) : Json(nullptr)},
                    {"tool_version", kVersion},
                    {"wall_time_seconds", wall},
                    {"output_digest", digest(output)}};
      std::ofstream file(*manifest_path);
      if (!file) {
        err << "error: cannot write manifest '" << *manifest_path << "'\n";
        return 2;
      }
      file << manifest.dump(2) << "\n";
    }
    return 0;
  }

 private:
  static bool uses_seed(const std::string& sub) {
    return sub == "expect-mc" || sub == "hypergraph" || sub == "sample-density" || sub == "avoiders" ||
           sub == "build-h" || sub == "delta" || sub == "independents" || sub == "clique-cover";
  }

  int replay(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    if (args.size() != 2) {
      err << "error: usage: replay MANIFEST\n";
      return 2;
    }
    Json manifest;
    try {
      manifest = Json::parse(detail::read_file(args[1]));
    } catch (const std::exception& e) {
      err << "error: cannot load manifest: " << e.what() << "\n";
      return 2;
    }
    const auto replay_args = manifest.at("args").get<std::vector<std::string>>();
    std::string output;
    std::string subcommand;
    const int code = execute(replay_args, output, subcommand, out, err);
    if (code != 0) return code;
    out << output;
    const std::string expected = manifest.at("output_digest").get<std::string>();
    if (digest(output) != expected) {
      err << "error: replay digest " << digest(output) << " differs from manifest " << expected << "\n";
      return 1;
    }
    return 0;
  }

  int execute(const std::vector<std::string>& args, std::string& output, std::string& subcommand, std::ostream& out,
              std::ostream& err) {
    params_ = Params{};
    handlers_.clear();
    CLI::App app{"Pattern avoidance over hypergraphs: exact enumeration, expectations, matrix extremal checks",
                 "hypav"};
    build(app);
    try {
      std::vector<std::string> reversed(args.rbegin(), args.rend());
      app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
      out << app.help();
      return 0;
    } catch (const CLI::CallForAllHelp&) {
      out << app.help("", CLI::AppFormatMode::All);
      return 0;
    } catch (const CLI::ParseError& e) {
      err << "error: " << e.what() << "\n";
      return 2;
    }
    try {
      const auto* chosen = app.get_subcommands().front();
      subcommand = chosen->get_name();
      limits_ = Limits::from_env();
      if (params_.threads > 0) limits_.threads = params_.threads;
      if (params_.cap >= 0) limits_.enumeration_cap = params_.cap;
      if (params_.matrix_cap >= 0) limits_.matrix_exhaustive_cap = params_.matrix_cap;
      require(params_.format == "json" || params_.format == "csv", "--format must be json or csv");
      const Report report = handlers_.at(subcommand)();
      output = params_.format == "csv" ? detail::to_csv(report) : report.body.dump() + "\n";
      return 0;
    } catch (const ValidationError& e) {
      err << "error: " << e.what() << "\n";
      return 2;
    } catch (const CapExceeded& e) {
      err << "refused: " << e.what() << "\n";
      return 3;
    } catch (const nlohmann::json::exception& e) {
      err << "error: malformed JSON input: " << e.what() << "\n";
      return 2;
    } catch (const std::exception& e) {
      err << "internal error: " << e.what() << "\n";
      return 1;
    }
  }

  // --- option helpers -----------------------------------------------------

  CLI::App* sub(CLI::App& app, const std::string& name, const std::string& help, std::function<Report()> handler) {
    handlers_[name] = std::move(handler);
    return app.add_subcommand(name, help);
  }

  void lambda_options(CLI::App* s) {
    s->add_option("--lambda", params_.lambda, "complete | empty | star | random")
        ->check(CLI::IsMember({"complete", "empty", "star", "random"}));
    s->add_option("--alpha", params_.alpha, "edge probability p/q for --lambda random");
    s->add_option("--seed", params_.seed, "seed for --lambda random");
    s->add_option("--from-file", params_.from_file, "hypergraph file: JSON or one sorted k-tuple per line");
  }

  void matrix_options(CLI::App* s) {
    s->add_option("--matrix", params_.matrix, "inline matrix, rows separated by '/', e.g. 10/01");
    s->add_option("--from-file", params_.from_file, "matrix file: 'rows cols' header then 0/1 rows, or JSON");
  }

  Permutation pattern() const {
    require(!params_.pi.empty(), "--pi is required");
    return Permutation::parse(params_.pi);
  }

  int require_n() const {
    require(params_.n >= 0, "--n is required");
    return params_.n;
  }

  Rational alpha() const {
    require(!params_.alpha.empty(), "--alpha is required (as p/q)");
    return parse_rational(params_.alpha);
  }

  std::pair<KUniformHypergraph, std::string> lambda_for(int n, int k) const {
    if (!params_.from_file.empty()) {
      const std::string text = detail::read_file(params_.from_file);
      auto h = detail::looks_like_json(text) ? hypergraph_from_json(Json::parse(text))
                                             : KUniformHypergraph::parse_edge_list(text, n, k);
      return {h, "file:" + params_.from_file};
    }
    if (params_.lambda == "empty") return {KUniformHypergraph::empty(n, k), "empty"};
    if (params_.lambda == "star") return {multipartite_lambda_star(n, k), "star"};
    if (params_.lambda == "random") {
      const Rational p = alpha();
      return {random_uniform_hypergraph(n, k, p, params_.seed, limits_),
              "random(alpha=" + to_string(p) + ",seed=" + std::to_string(params_.seed) + ")"};
    }
    return {KUniformHypergraph::complete(n, k), "complete"};
  }

  BinaryMatrix input_matrix() const {
    if (!params_.matrix.empty()) return BinaryMatrix::parse_inline(params_.matrix);
    if (!params_.sigma.empty()) return permutation_matrix(Permutation::parse(params_.sigma));
    require(!params_.from_file.empty(), "a matrix is required (--matrix, --sigma or --from-file)");
    const std::string text = detail::read_file(params_.from_file);
    return detail::looks_like_json(text) ? matrix_from_json(Json::parse(text)) : BinaryMatrix::parse(text);
  }

  // --- subcommands --------------------------------------------------------

  void build(CLI::App& app) {
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", kVersion);
    app.footer("Add --manifest PATH to any run to record a manifest; 'hypav replay PATH' re-runs it and\n"
               "checks the output digest. Exit codes: 0 ok, 1 replay mismatch, 2 invalid input, 3 cap refusal.");
    app.add_option("--format", params_.format, "json (default) or csv");
    app.add_option("--threads", params_.threads, "worker cap (default 1, env HYPAV_THREADS)");
    app.add_option("--cap", params_.cap, "enumeration cap on n for S_n passes (default 12, env HYPAV_ENUM_CAP)");
    app.add_option("--matrix-cap", params_.matrix_cap, "cap on n for exhaustive matrix searches (default 4)");
    auto& p = params_;

    auto* s = sub(app, "count", "copies of pi in sigma", [this] {
      return Report{Json{{"count", count_occurrences(Permutation::parse(params_.sigma), pattern())}}, {}};
    });
    s->add_option("--sigma", p.sigma)->required();
    s->add_option("--pi", p.pi)->required();

    s = sub(app, "occurrences", "list occurrences (1-based index tuples, lexicographic)", [this] {
      const auto occ = enumerate_occurrences(Permutation::parse(params_.sigma), pattern());
      Json list = Json::array();
      for (const auto& o : occ) list.push_back(o.indices);
      return Report{Json{{"count", occ.size()}, {"occurrences", list}}, {}};
    });
    s->add_option("--sigma", p.sigma)->required();
    s->add_option("--pi", p.pi)->required();

    s = sub(app, "distribution", "histogram of copy counts over S_n", [this] {
      return Report{to_json(copy_count_distribution(require_n(), pattern(), limits_)), {}};
    });
    s->add_option("--n", p.n)->required();
    s->add_option("--pi", p.pi)->required();

    s = sub(app, "avoiders", "count (and optionally list) Lambda-avoiders", [this] {
      const int n = require_n();
      const auto pi = pattern();
      auto [lambda, descriptor] = lambda_for(n, pi.size());
      return Report{to_json(enumerate_avoiders(n, pi, lambda, params_.list, limits_, descriptor)), {}};
    });
    s->add_option("--n", p.n)->required();
    s->add_option("--pi", p.pi)->required();
    s->add_flag("--list", p.list, "include the avoiders");
    lambda_options(s);

    s = sub(app, "expect", "exact expected avoider count under a random hypergraph", [this] { return expect(); });
    s->add_option("--n", p.n)->required();
    s->add_option("--k", p.k);
    s->add_option("--pi", p.pi)->required();
    s->add_option("--alpha", p.alpha, "edge probability p/q");
    alpha_grid_opt_ = s->add_option("--alpha-grid", p.alpha_grid, "comma-separated p/q values; one row per value");

    s = sub(app, "expect-mc", "Monte-Carlo expected avoider count", [this] {
      const int n = require_n();
      const auto pi = pattern();
      const Rational a = alpha();
      require(params_.by == "sigma" || params_.by == "lambda", "--by must be sigma or lambda");
      const McEstimate e = params_.by == "sigma"
                               ? mc_expected_avoiders_by_sigma(n, pi, a, params_.samples, params_.seed, limits_)
                               : mc_expected_avoiders_by_lambda(n, pi.size(), pi, a, params_.samples, params_.seed,
                                                                limits_);
      Json j{{"method", params_.by}, {"n", n}, {"k", pi.size()}, {"pattern", to_json(pi)}};
      put_rational(j, "alpha", a);
      j.update(to_json(e));
      return Report{j, {}};
    });
    s->add_option("--n", p.n)->required();
    s->add_option("--pi", p.pi)->required();
    s->add_option("--alpha", p.alpha)->required();
    s->add_option("--samples", p.samples);
    s->add_option("--seed", p.seed);
    s->add_option("--by", p.by, "sigma (default) or lambda");

    s = sub(app, "hypergraph", "random k-uniform hypergraph", [this] {
      const auto h = random_uniform_hypergraph(require_n(), params_.k, alpha(), params_.seed, limits_);
      Json j = to_json(h);
      j["edge_count"] = h.edge_count();
      return Report{j, {}};
    });
    s->add_option("--n", p.n)->required();
    s->add_option("--k", p.k)->required();
    s->add_option("--alpha", p.alpha)->required();
    s->add_option("--seed", p.seed);

    s = sub(app, "lambda-star", "two-part multipartite hypergraph", [this] {
      const int n = require_n();
      const auto h = multipartite_lambda_star(n, params_.k);
      Json j{{"n", n}, {"k", params_.k}, {"edge_count", h.edge_count()},
             {"formula_count", (binomial(n, params_.k) - 2 * binomial(n / 2, params_.k)).str()}};
      if (params_.max_clique) j["max_clique"] = max_clique_size(h, limits_);
      j["edges"] = h.edges();
      return Report{j, {}};
    });
    s->add_option("--n", p.n)->required();
    s->add_option("--k", p.k)->required();
    s->add_flag("--max-clique", p.max_clique, "also report the brute-force maximal clique size");

    s = sub(app, "clique-cover", "validate a clique cover of a hypergraph", [this] {
      const int n = require_n();
      require(params_.k >= 0, "--k is required");
      auto [lambda, descriptor] = lambda_for(n, params_.k);
      std::vector<Edge> cliques;
      for (const auto& part : detail::split(params_.cliques, ';')) {
        Edge e;
        for (const auto& v : detail::split(part, ',')) {
          require(!v.empty() && v.find_first_not_of("0123456789") == std::string::npos,
                  "malformed clique list '" + params_.cliques + "'");
          e.push_back(std::stoi(v));
        }
        cliques.push_back(std::move(e));
      }
      Json j = to_json(validate_clique_cover(lambda, cliques));
      j["lambda"] = descriptor;
      return Report{j, {}};
    });
    s->add_option("--n", p.n)->required();
    s->add_option("--k", p.k)->required();
    s->add_option("--cliques", p.cliques, "cliques as 1,2,3;2,3,4")->required();
    lambda_options(s);

    s = sub(app, "contract", "2-contraction or b-contraction of a matrix", [this] {
      const BinaryMatrix m = input_matrix();
      const auto factor = ContractionFactor::from(parse_rational(params_.b));
      const bool two = factor.p == 2 && factor.q == 1 && m.square() && m.rows() % 2 == 0;
      const BinaryMatrix c = two ? contract2(m) : contract_b(m, factor);
      Json j{{"b", to_string(factor.value())}, {"input", to_json(m)}, {"output", to_json(c)},
             {"ones_in", m.ones()}, {"ones_out", c.ones()}};
      if (!params_.pi.empty()) {
        const auto pi = pattern();
        j["copies_in"] = count_matrix_copies(m, pi);
        j["copies_out"] = count_matrix_copies(c, pi);
      }
      return Report{j, {}};
    });
    matrix_options(s);
    s->add_option("--b", p.b, "contraction factor p/q >= 1 (default 2)");
    s->add_option("--pi", p.pi, "also count copies before and after");

    s = sub(app, "preimage", "number of matrices 2-contracting to a matrix", [this] {
      const BinaryMatrix m = input_matrix();
      Json j{{"ones", m.ones()}, {"count", preimage_count_contract2(m).str()}};
      if (params_.verify) {
        require(m.rows() * m.cols() * 4 <= 20, "--verify enumerates 2^(4*cells) matrices; at most 5 cells");
        const int rows = 2 * m.rows();
        const int cols = 2 * m.cols();
        std::uint64_t hits = 0;
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << static_cast<unsigned>(rows * cols)); ++mask) {
          BinaryMatrix candidate(rows, cols);
          for (int cell = 0; cell < rows * cols; ++cell) {
            if ((mask >> static_cast<unsigned>(cell)) & 1U) candidate.set(cell / cols, cell % cols, true);
          }
          if (contract_b(candidate, ContractionFactor{2, 1}) == m) ++hits;
        }
        j["enumerated"] = std::to_string(hits);
      }
      return Report{j, {}};
    });
    matrix_options(s);
    s->add_flag("--verify", p.verify, "confirm by exhaustive enumeration (tiny matrices only)");

    s = sub(app, "extremal", "block-diagonal matrix with a ones and few copies", [this] {
      const int n = require_n();
      const BinaryMatrix m = extremal_block_diagonal(n, params_.a);
      Json j{{"n", n}, {"a", params_.a}, {"matrix", to_json(m)}, {"ones", m.ones()}};
      if (!params_.pi.empty()) {
        const auto pi = pattern();
        j["copies"] = count_matrix_copies(m, pi);
        put_rational(j, "bound_form", supersaturation_bound_form(n, params_.a, pi.size()));
      }
      return Report{j, {}};
    });
    s->add_option("--n", p.n)->required();
    s->add_option("--a", p.a)->required();
    s->add_option("--pi", p.pi);

    s = sub(app, "min-copies", "fewest copies of A_pi over n x n matrices with a ones", [this] { return min_copies(); });
    s->add_option("--n", p.n)->required();
    a_opt_ = s->add_option("--a", p.a);
    a_grid_opt_ = s->add_option("--a-grid", p.a_grid, "comma-separated values of a; one row per value");
    s->add_option("--pi", p.pi)->required();

    s = sub(app, "max-ones", "most ones in an n x n matrix avoiding A_pi", [this] {
      return Report{to_json(max_ones_avoiding(require_n(), pattern(), limits_, !params_.no_search)), {}};
    });
    s->add_option("--n", p.n)->required();
    s->add_option("--pi", p.pi)->required();
    s->add_flag("--no-search", p.no_search, "refuse instead of falling back to branch and bound");

    s = sub(app, "sna", "block permutation family S_{n,a}", [this] {
      const int n = require_n();
      const SnaFamily family(n, static_cast<int>(params_.a));
      Json j{{"n", n}, {"a", params_.a}, {"q", family.q()}, {"r", family.r()}, {"size", family.size().str()}};
      if (!params_.pi.empty()) {
        const auto normalized = normalize_first_above_last(pattern());
        j["pattern"] = to_json(normalized.pattern);
        j["pattern_reversed"] = normalized.reversed;
        j["verification"] = to_json(verify_sna_budget(n, static_cast<int>(params_.a), normalized.pattern, limits_));
      }
      if (params_.list) {
        Json members = Json::array();
        family.for_each([&](std::span<const int> sigma) { members.push_back(Permutation::from_zero_based(sigma).to_string()); },
                        limits_);
        j["members"] = members;
      }
      return Report{j, {}};
    });
    s->add_option("--n", p.n)->required();
    s->add_option("--a", p.a)->required();
    s->add_option("--pi", p.pi, "verify the copy budget for this pattern (reversed if pi(1) < pi(k))");
    s->add_flag("--list", p.list, "list the members");

    s = sub(app, "snm", "permutations with at most m copies of pi", [this] {
      const int n = require_n();
      const auto pi = pattern();
      return Report{Json{{"n", n}, {"m", params_.m}, {"pattern", to_json(pi)},
                         {"count", count_snm(n, params_.m, pi, limits_)}},
                    {}};
    });
    s->add_option("--n", p.n)->required();
    s->add_option("--m", p.m)->required();
    s->add_option("--pi", p.pi)->required();

    s = sub(app, "build-h", "grid hypergraph of pi-copies on Lambda edges", [this] {
      const int n = require_n();
      const auto pi = pattern();
      auto [lambda, descriptor] = lambda_for(n, pi.size());
      Json j = to_json(build_h(n, pi, lambda, limits_));
      j["lambda"] = descriptor;
      j["lambda_edges"] = lambda.edge_count();
      return Report{j, {}};
    });
    s->add_option("--n", p.n)->required();
    s->add_option("--pi", p.pi)->required();
    lambda_options(s);

    s = sub(app, "delta", "max edges of H through a common ell-set", [this] {
      const int n = require_n();
      const auto pi = pattern();
      auto [lambda, descriptor] = lambda_for(n, pi.size());
      const auto h = build_h(n, pi, lambda, limits_);
      Json deltas = Json::object();
      const int lo = params_.ell > 0 ? params_.ell : 1;
      const int hi = params_.ell > 0 ? params_.ell : h.k;
      for (int l = lo; l <= hi; ++l) deltas[std::to_string(l)] = delta_ell(h, l);
      return Report{Json{{"n", n}, {"pattern", to_json(pi)}, {"lambda", descriptor}, {"edge_count", h.edge_count()},
                         {"vertex_count", h.vertex_count()}, {"delta", deltas}},
                    {}};
    });
    s->add_option("--n", p.n)->required();
    s->add_option("--pi", p.pi)->required();
    s->add_option("--ell", p.ell, "single ell (default: every ell in 1..k)");
    lambda_options(s);

    s = sub(app, "independents", "independent sets of H of a given size", [this] {
      const int n = require_n();
      const auto pi = pattern();
      auto [lambda, descriptor] = lambda_for(n, pi.size());
      const auto h = build_h(n, pi, lambda, limits_);
      const int size = params_.size >= 0 ? params_.size : n;
      Json j{{"n", n}, {"pattern", to_json(pi)}, {"lambda", descriptor}, {"size", size},
             {"count", count_independent_of_size(h, size, limits_).str()}};
      if (size == n && n <= limits_.enumeration_cap) {
        std::uint64_t canonical = 0;
        for_each_permutation(
            n,
            [&](std::span<const int> sigma) {
              if (is_independent(h, canonical_set(Permutation::from_zero_based(sigma)).cells)) ++canonical;
            },
            limits_);
        j["canonical_independent"] = canonical;
      }
      return Report{j, {}};
    });
    s->add_option("--n", p.n)->required();
    s->add_option("--pi", p.pi)->required();
    s->add_option("--size", p.size, "set size (default n)");
    lambda_options(s);

    s = sub(app, "sample-density", "random r x r submatrix density estimates", [this] {
      const BinaryMatrix m = input_matrix();
      const auto pi = pattern();
      require(params_.r >= 0, "--r is required");
      const auto est = sampling_estimates(m, pi, params_.r, params_.trials, params_.seed, limits_);
      const auto exact = densities(m, pi);
      Json j = to_json(est);
      put_rational(j, "exact_one_density", exact.one_density);
      put_rational(j, "exact_pi_density", exact.pi_density);
      return Report{j, {}};
    });
    matrix_options(s);
    s->add_option("--sigma", p.sigma, "use the permutation matrix of sigma");
    s->add_option("--pi", p.pi)->required();
    s->add_option("--r", p.r)->required();
    s->add_option("--trials", p.trials);
    s->add_option("--seed", p.seed);
  }

  Report expect() {
    const int n = require_n();
    const auto pi = pattern();
    const int k = params_.k >= 0 ? params_.k : pi.size();
    if (alpha_grid_opt_->count() > 0) {
      require(params_.alpha.empty(), "use either --alpha or --alpha-grid");
      const auto grid = detail::parse_rational_list(params_.alpha_grid);
      Json rows = Json::array();
      for (const auto& r : exact_expected_avoiders_grid(n, k, pi, grid, limits_)) rows.push_back(to_json(r));
      return Report{Json{{"n", n}, {"k", k}, {"pattern", to_json(pi)}, {"rows", rows}},
                    std::vector<std::string>{"n", "k", "pattern", "alpha", "alpha_decimal", "exact", "exact_decimal",
                                             "bound", "empirical_constant"}};
    }
    return Report{to_json(exact_expected_avoiders(n, k, pi, alpha(), limits_)), {}};
  }

  Report min_copies() {
    const int n = require_n();
    const auto pi = pattern();
    if (a_grid_opt_->count() > 0) {
      Json rows = Json::array();
      for (const auto& part : detail::split(params_.a_grid, ',')) {
        require(!part.empty() && part.find_first_not_of("0123456789") == std::string::npos,
                "malformed --a-grid entry '" + part + "'");
        Json row = to_json(min_copies_brute(n, std::stoull(part), pi, limits_));
        row["witness"] = row["witness"]["data"];
        rows.push_back(row);
      }
      return Report{Json{{"n", n}, {"pattern", to_json(pi)}, {"rows", rows}},
                    std::vector<std::string>{"n", "a", "pattern", "measured", "mode", "bound_form",
                                             "bound_form_decimal", "ratio", "ratio_decimal", "witness"}};
    }
    require(a_opt_->count() > 0, "--a or --a-grid is required");
    return Report{to_json(min_copies_brute(n, params_.a, pi, limits_)), {}};
  }

  Params params_;
  Limits limits_;
  CLI::Option* alpha_grid_opt_ = nullptr;
  CLI::Option* a_grid_opt_ = nullptr;
  CLI::Option* a_opt_ = nullptr;
  std::map<std::string, std::function<Report()>> handlers_;
};

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Program program;
  return program.run(args, out, err);
}

}  // namespace hypav::cli
