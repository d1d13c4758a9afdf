#include "doctest.h"

#include "graphpencil/error.hpp"
#include "graphpencil/io.hpp"
#include "graphpencil/sampling.hpp"

#include <cstdio>
#include <filesystem>
#include <sstream>

using namespace graphpencil;

namespace {
UndirectedGraph parse(const std::string& text) {
  std::istringstream in(text);
  return read_edge_list(in);
}
}  // namespace

TEST_CASE("edge list parsing") {
  CHECK(parse("0 1\n1 2\n") == path_graph(3));
  CHECK(parse("# a comment\n\n0 1\n  1 2  \n") == path_graph(3));
  const UndirectedGraph iso = parse("# n=3\n");
  CHECK(iso.n() == 3);
  CHECK(iso.edge_count() == 0);
  CHECK(parse("# n=5\n0 1\n").n() == 5);
}

TEST_CASE("edge list errors carry line numbers") {
  try {
    parse("0 1\n1 x\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(parse("0 0\n"), ParseError);
  CHECK_THROWS_AS(parse("0 1\n1 0\n"), ParseError);
  CHECK_THROWS_AS(parse("# n=2\n0 5\n"), ParseError);
  CHECK_THROWS_AS(parse("0 1 2\n"), ParseError);
  CHECK_THROWS_AS(load_edge_list("/nonexistent/graph.txt"), IoError);
}

TEST_CASE("edge list save and load round trip") {
  const auto g = sample_graph(erdos_renyi(0.1), {100, 4}).graph;
  const auto path = (std::filesystem::temp_directory_path() / "gp_io_roundtrip.txt").string();
  save_edge_list(g, path);
  CHECK(load_edge_list(path) == g);
  std::remove(path.c_str());

  std::ostringstream out;
  write_edge_list(out, UndirectedGraph(4));
  CHECK(parse(out.str()).n() == 4);
}

TEST_CASE("labels round trip") {
  std::stringstream io;
  write_labels(io, {0, 1, 1, 0});
  CHECK(read_labels(io) == std::vector<int>{0, 1, 1, 0});
}

TEST_CASE("sbm parameter documents") {
  const auto doc = nlohmann::json::parse(R"({"pi": [0.25, 0.75], "B": [[0.5, 0.1], [0.1, 0.3]]})");
  const SbmParams p = params_from_json(doc);
  CHECK(p.pi(1) == 0.75);
  CHECK(p.b(0, 1) == 0.1);
  CHECK(params_from_json(params_to_json(p)).b == p.b);
  CHECK_THROWS_AS(params_from_json(nlohmann::json::parse(R"({"pi": [0.5, 0.6], "B": [[0.5, 0.1], [0.1, 0.3]]})")),
                  ValidationError);
  CHECK_THROWS(params_from_json(nlohmann::json::parse(R"({"pi": [1.0]})")));
}

TEST_CASE("solution document") {
  PencilSolution<double> sol;
  sol.pi = Eigen::Vector2d(0.4, 0.6);
  sol.d = Eigen::Vector2d(0.5, 0.3);
  sol.b = Eigen::Matrix2d::Identity();
  sol.diagnostics.warnings.push_back("w");
  const auto doc = solution_to_json(sol);
  CHECK(doc.at("schema_version") == kSolutionSchemaVersion);
  CHECK(doc.at("k") == 2);
  CHECK(doc.at("pi")[1] == 0.6);
  CHECK(doc.at("B")[1][1] == 1.0);
  CHECK(doc.at("diagnostics").at("warnings")[0] == "w");
}
