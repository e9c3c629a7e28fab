#include <catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "hypav/cli.hpp"

using hypav::Json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
  Json json() const { return Json::parse(out); }
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = hypav::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "hypav_cli_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

void write(const std::filesystem::path& p, const std::string& text) { std::ofstream(p) << text; }

std::vector<std::string> csv_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

}  // namespace

TEST_CASE("documented examples") {
  const auto count = run({"count", "--sigma", "2,4,1,3", "--pi", "1,2"});
  CHECK(count.code == 0);
  CHECK(count.out == "{\"count\":3}\n");
  const auto expect = run({"expect", "--n", "2", "--k", "2", "--pi", "1,2", "--alpha", "1/2"});
  CHECK(expect.json()["exact"] == "3/2");
  CHECK(expect.json()["exact_decimal"] == "1.5");
  CHECK(run({"lambda-star", "--n", "4", "--k", "2"}).json()["edge_count"] == 4);
}

TEST_CASE("exit codes") {
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"count", "--sigma", "2,4,1,3"}).code == 2);
  const auto bad = run({"count", "--sigma", "2,4,x,3", "--pi", "1,2"});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("character 5") != std::string::npos);
  CHECK(run({"expect", "--n", "4", "--pi", "1,2", "--alpha", "0.5"}).code == 2);
  CHECK(run({"distribution", "--n", "13", "--pi", "1,2"}).code == 3);
  CHECK(run({"--cap", "5", "distribution", "--n", "6", "--pi", "1,2"}).code == 3);
  CHECK(run({"max-ones", "--n", "5", "--pi", "1,2", "--no-search"}).code == 3);
  CHECK(run({"contract", "--matrix", "10/0"}).code == 2);
  CHECK(run({"--format", "xml", "count", "--sigma", "1", "--pi", "1"}).code == 2);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("every subcommand answers") {
  const std::vector<std::vector<std::string>> calls{
      {"occurrences", "--sigma", "2,4,1,3", "--pi", "1,2"},
      {"distribution", "--n", "4", "--pi", "1,3,2"},
      {"avoiders", "--n", "4", "--pi", "1,2", "--lambda", "star", "--list"},
      {"expect-mc", "--n", "5", "--pi", "2,1", "--alpha", "1/2", "--samples", "100"},
      {"expect-mc", "--n", "5", "--pi", "2,1", "--alpha", "1/2", "--samples", "20", "--by", "lambda"},
      {"hypergraph", "--n", "6", "--k", "3", "--alpha", "1/2"},
      {"clique-cover", "--n", "4", "--k", "2", "--lambda", "star", "--cliques", "1,2,3"},
      {"contract", "--matrix", "1000/0100/0010/0001", "--pi", "1,2"},
      {"contract", "--matrix", "100/010/001", "--b", "3/2"},
      {"preimage", "--matrix", "10/01", "--verify"},
      {"extremal", "--n", "4", "--a", "8", "--pi", "2,1"},
      {"min-copies", "--n", "3", "--a", "6", "--pi", "1,2"},
      {"max-ones", "--n", "3", "--pi", "1,2"},
      {"sna", "--n", "4", "--a", "2", "--pi", "2,1", "--list"},
      {"snm", "--n", "3", "--m", "1", "--pi", "1,2"},
      {"build-h", "--n", "2", "--pi", "1,2"},
      {"delta", "--n", "3", "--pi", "1,2"},
      {"independents", "--n", "2", "--pi", "1,2", "--size", "2"},
      {"sample-density", "--sigma", "2,4,1,3", "--pi", "1,2", "--r", "3", "--trials", "200"},
  };
  for (const auto& c : calls) {
    const auto r = run(c);
    INFO(c.front() << ": " << r.err);
    CHECK(r.code == 0);
    CHECK_NOTHROW(r.json());
  }
}

TEST_CASE("report contents") {
  CHECK(run({"avoiders", "--n", "4", "--pi", "1,2", "--lambda", "star"}).json()["count"] == 4);
  const auto cover = run({"clique-cover", "--n", "4", "--k", "2", "--lambda", "star", "--cliques", "1,2,3"}).json();
  CHECK(cover["valid"] == false);
  CHECK(cover["witness"] == Json::array({1, 2}));
  const auto pre = run({"preimage", "--matrix", "10/01", "--verify"}).json();
  CHECK(pre["count"] == "225");
  CHECK(pre["enumerated"] == "225");
  CHECK(run({"max-ones", "--n", "2", "--pi", "1,2"}).json()["witness"]["data"] == Json::array({"11", "10"}));
  CHECK(run({"snm", "--n", "5", "--m", "0", "--pi", "3,2,1"}).json()["count"] == 42);
  CHECK(run({"independents", "--n", "2", "--pi", "1,2", "--size", "2"}).json()["count"] == "5");
  CHECK(run({"delta", "--n", "3", "--pi", "1,2"}).json()["delta"]["1"] == 4);
  const auto sna = run({"sna", "--n", "6", "--a", "3", "--pi", "3,2,1"}).json();
  CHECK(sna["verification"]["ok"] == true);
  CHECK(sna["size"] == "36");
  const auto density = run({"sample-density", "--sigma", "2,4,1,3", "--pi", "1,2", "--r", "4", "--trials", "3"}).json();
  CHECK(density["mean_pi_density"] == "1/12");
  CHECK(density["exact_pi_density"] == "1/12");
}

TEST_CASE("file inputs") {
  const auto matrix_text = scratch("m.txt");
  write(matrix_text, "4 4\n1100\n1100\n0011\n0011\n");
  CHECK(run({"contract", "--from-file", matrix_text.string(), "--pi", "2,1"}).json()["copies_out"] == 0);
  const auto matrix_json = scratch("m.json");
  write(matrix_json, R"({"rows":2,"cols":2,"data":["11","10"]})");
  CHECK(run({"preimage", "--from-file", matrix_json.string()}).json()["count"] == "3375");
  const auto edges = scratch("edges.txt");
  write(edges, "1 3\n1 4\n2 3\n2 4\n");
  CHECK(run({"avoiders", "--n", "4", "--pi", "1,2", "--from-file", edges.string()}).json()["count"] == 4);
  const auto hjson = scratch("h.json");
  write(hjson, R"({"n":4,"k":2,"edges":[[1,3],[1,4],[2,3],[2,4]]})");
  CHECK(run({"avoiders", "--n", "4", "--pi", "1,2", "--from-file", hjson.string()}).json()["count"] == 4);
  const auto broken = scratch("broken.txt");
  write(broken, "2 2\n10\n0x\n");
  const auto r = run({"contract", "--from-file", broken.string()});
  CHECK(r.code == 2);
  CHECK(r.err.find("row 2, column 2") != std::string::npos);
  write(broken, "{\"n\":4,");
  CHECK(run({"avoiders", "--n", "4", "--pi", "1,2", "--from-file", broken.string()}).code == 2);
  CHECK(run({"contract", "--from-file", scratch("missing.txt").string()}).code == 2);
}

TEST_CASE("grid reports") {
  const auto sweep = run({"--format", "csv", "expect", "--n", "6", "--pi", "2,1", "--alpha-grid",
                          "0,1/10,1/4,1/2,3/4,9/10,1"});
  REQUIRE(sweep.code == 0);
  const auto lines = csv_lines(sweep.out);
  REQUIRE(lines.size() == 8);
  CHECK(lines[0] == "n,k,pattern,alpha,alpha_decimal,exact,exact_decimal,bound,empirical_constant");
  const auto json = run({"expect", "--n", "6", "--pi", "2,1", "--alpha-grid", "0,1/10,1/4,1/2,3/4,9/10,1"}).json();
  for (std::size_t i = 1; i < json["rows"].size(); ++i)
    CHECK(hypav::parse_rational(json["rows"][i]["exact"].get<std::string>()) <=
          hypav::parse_rational(json["rows"][i - 1]["exact"].get<std::string>()));

  const auto empty = run({"--format", "csv", "expect", "--n", "6", "--pi", "2,1", "--alpha-grid", ""});
  CHECK(empty.code == 0);
  CHECK(csv_lines(empty.out).size() == 1);

  const auto a_sweep = run({"min-copies", "--n", "4", "--pi", "1,2", "--a-grid", "0,4,7,8,10,12,16"}).json();
  std::uint64_t previous = 0;
  for (const auto& row : a_sweep["rows"]) {
    CHECK(row["measured"].get<std::uint64_t>() >= previous);
    previous = row["measured"].get<std::uint64_t>();
  }
  const auto a_csv = run({"--format", "csv", "min-copies", "--n", "4", "--pi", "1,2", "--a-grid", "7,8"});
  CHECK(csv_lines(a_csv.out).size() == 3);
}

TEST_CASE("single report csv") {
  const auto r = run({"--format", "csv", "count", "--sigma", "2,4,1,3", "--pi", "1,2"});
  CHECK(r.out == "count\n3\n");
}

TEST_CASE("manifest and replay") {
  const auto manifest = scratch("run.json");
  const auto first = run({"expect-mc", "--n", "6", "--pi", "2,1", "--alpha", "1/3", "--samples", "2000", "--seed",
                          "9", "--manifest", manifest.string()});
  REQUIRE(first.code == 0);
  std::ifstream in(manifest);
  const auto m = Json::parse(in);
  CHECK(m["subcommand"] == "expect-mc");
  CHECK(m["seed"] == 9);
  CHECK(m["tool_version"] == "0.1.0");
  CHECK(m.contains("wall_time_seconds"));
  CHECK(m["output_digest"] == hypav::cli::digest(first.out));
  const auto replayed = run({"replay", manifest.string()});
  CHECK(replayed.code == 0);
  CHECK(replayed.out == first.out);

  Json tampered = m;
  tampered["output_digest"] = "fnv1a64:0000000000000000";
  write(manifest, tampered.dump());
  CHECK(run({"replay", manifest.string()}).code == 1);
}

TEST_CASE("threads do not change output") {
  const std::vector<std::string> base{"expect-mc", "--n", "7", "--pi", "1,3,2", "--alpha", "1/2", "--samples", "20000"};
  auto threaded = base;
  threaded.insert(threaded.begin(), {"--threads", "4"});
  CHECK(run(base).out == run(threaded).out);
  CHECK(run({"distribution", "--n", "8", "--pi", "2,1"}).out ==
        run({"--threads", "3", "distribution", "--n", "8", "--pi", "2,1"}).out);
}
