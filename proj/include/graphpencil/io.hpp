#pragma once

#include "graphpencil/graph.hpp"
#include "graphpencil/pencil.hpp"
#include "graphpencil/sbm.hpp"

#include "json.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace graphpencil {

inline constexpr int kSolutionSchemaVersion = 1;

/// Edge list: one "i j" pair of 0-based ids per line. A "# n=<N>" header
/// declares the node count (for isolated nodes); other '#' lines and blank
/// lines are ignored.
UndirectedGraph read_edge_list(std::istream& in);
void write_edge_list(std::ostream& out, const UndirectedGraph& graph);
UndirectedGraph load_edge_list(const std::string& path);
void save_edge_list(const UndirectedGraph& graph, const std::string& path);

/// Labels file: one block index per line, node order.
std::vector<int> read_labels(std::istream& in);
void write_labels(std::ostream& out, const std::vector<int>& blocks);

/// {"pi": [..K..], "B": [[..K..], ...]}
SbmParams params_from_json(const nlohmann::json& doc);
nlohmann::json params_to_json(const SbmParams& params);
SbmParams load_params(const std::string& path);

nlohmann::json diagnostics_to_json(const PencilDiagnostics& diagnostics);

/// {"schema_version", "k", "pi", "d", "B", "diagnostics"}
nlohmann::json solution_to_json(const PencilSolution<double>& solution);

nlohmann::json load_json(const std::string& path);

}  // namespace graphpencil
