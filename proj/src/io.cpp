#include "graphpencil/io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

namespace graphpencil {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool parse_index(std::string_view token, Index& out) {
  long long value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size() || value < 0) return false;
  out = static_cast<Index>(value);
  return true;
}

std::vector<std::string_view> split(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    const std::size_t start = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

// "# n=<N>" with optional spaces; anything else starting with '#' is a comment.
bool parse_header(std::string_view line, long line_no, Index& n) {
  std::string_view rest = trim(line.substr(1));
  if (rest.size() < 2 || rest[0] != 'n') return false;
  rest = trim(rest.substr(1));
  if (rest.empty() || rest[0] != '=') return false;
  rest = trim(rest.substr(1));
  if (!parse_index(rest, n)) throw ParseError("bad node count in header '# n=...'", line_no);
  return true;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  return in;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  return out;
}

std::vector<double> matrix_rows(const Eigen::MatrixXd& m, Index r) {
  std::vector<double> row(static_cast<std::size_t>(m.cols()));
  for (Index j = 0; j < m.cols(); ++j) row[static_cast<std::size_t>(j)] = m(r, j);
  return row;
}

nlohmann::json matrix_to_json(const Eigen::MatrixXd& m) {
  auto out = nlohmann::json::array();
  for (Index i = 0; i < m.rows(); ++i) out.push_back(matrix_rows(m, i));
  return out;
}

}  // namespace

UndirectedGraph read_edge_list(std::istream& in) {
  std::string line;
  long line_no = 0;
  Index declared = -1;
  Index max_id = -1;
  std::vector<Edge> edges;
  std::set<Edge> seen;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view text = trim(line);
    if (text.empty()) continue;
    if (text[0] == '#') {
      Index n = 0;
      if (parse_header(text, line_no, n)) {
        if (declared >= 0 && declared != n) throw ParseError("conflicting '# n=' headers", line_no);
        declared = n;
      }
      continue;
    }
    const auto tokens = split(text);
    Index u = 0, v = 0;
    if (tokens.size() != 2 || !parse_index(tokens[0], u) || !parse_index(tokens[1], v)) {
      throw ParseError("expected two non-negative integer node ids, got '" + std::string(text) + "'",
                       line_no);
    }
    if (u == v) throw ParseError("self-loop on node " + std::to_string(u), line_no);
    const Edge key{std::min(u, v), std::max(u, v)};
    if (!seen.insert(key).second) {
      throw ParseError("duplicate edge " + std::to_string(key.first) + " " +
                           std::to_string(key.second),
                       line_no);
    }
    edges.push_back(key);
    max_id = std::max({max_id, u, v});
  }
  if (in.bad()) throw IoError("read error in edge list");
  if (declared >= 0 && max_id >= declared) {
    throw ParseError("node id " + std::to_string(max_id) + " exceeds declared n=" +
                         std::to_string(declared),
                     0);
  }
  const Index n = declared >= 0 ? declared : max_id + 1;
  return UndirectedGraph::from_edges(n, edges);
}

void write_edge_list(std::ostream& out, const UndirectedGraph& graph) {
  out << "# n=" << graph.n() << '\n';
  for (const auto& [u, v] : graph.edges()) out << u << ' ' << v << '\n';
}

UndirectedGraph load_edge_list(const std::string& path) {
  auto in = open_in(path);
  return read_edge_list(in);
}

void save_edge_list(const UndirectedGraph& graph, const std::string& path) {
  auto out = open_out(path);
  write_edge_list(out, graph);
  if (!out) throw IoError("write to '" + path + "' failed");
}

std::vector<int> read_labels(std::istream& in) {
  std::vector<int> out;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view text = trim(line);
    if (text.empty() || text[0] == '#') continue;
    Index value = 0;
    if (!parse_index(text, value)) throw ParseError("expected a block index", line_no);
    out.push_back(static_cast<int>(value));
  }
  return out;
}

void write_labels(std::ostream& out, const std::vector<int>& blocks) {
  for (int b : blocks) out << b << '\n';
}

SbmParams params_from_json(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("pi") || !doc.contains("B")) {
    throw ParseError("SBM parameters need fields \"pi\" and \"B\"", 0);
  }
  SbmParams p;
  try {
    const auto pi = doc.at("pi").get<std::vector<double>>();
    const auto b = doc.at("B").get<std::vector<std::vector<double>>>();
    const auto k = static_cast<Index>(pi.size());
    p.pi = Eigen::Map<const Eigen::VectorXd>(pi.data(), k);
    p.b.resize(static_cast<Index>(b.size()), b.empty() ? 0 : static_cast<Index>(b[0].size()));
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (b[i].size() != b[0].size()) throw ParseError("rows of \"B\" differ in length", 0);
      for (std::size_t j = 0; j < b[i].size(); ++j) {
        p.b(static_cast<Index>(i), static_cast<Index>(j)) = b[i][j];
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed SBM parameters: ") + e.what(), 0);
  }
  validate(p);
  return p;
}

nlohmann::json params_to_json(const SbmParams& params) {
  return {{"pi", to_double_vector(params.pi)}, {"B", matrix_to_json(params.b)}};
}

nlohmann::json load_json(const std::string& path) {
  auto in = open_in(path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("'" + path + "': " + e.what(), 0);
  }
}

SbmParams load_params(const std::string& path) { return params_from_json(load_json(path)); }

nlohmann::json diagnostics_to_json(const PencilDiagnostics& d) {
  return {
      {"degree_eigen_imag", d.degree_eigen_imag},
      {"hankel_condition", d.hankel_condition},
      {"vandermonde_condition", d.vandermonde_condition},
      {"c_plain_singular_values", d.c_plain_singular_values},
      {"c_plain_condition", d.c_plain_condition},
      {"pinv_cutoff", d.pinv_cutoff},
      {"pinv_rank", d.pinv_rank},
      {"used_pseudoinverse", d.used_pseudoinverse},
      {"b_eigenvalues", d.b_eigenvalues},
      {"b_eigen_imag", d.b_eigen_imag},
      {"rayleigh_residuals", d.rayleigh_residuals},
      {"pi_clamped", d.pi_clamped},
      {"b_clamped", d.b_clamped},
      {"warnings", d.warnings},
  };
}

nlohmann::json solution_to_json(const PencilSolution<double>& s) {
  return {
      {"schema_version", kSolutionSchemaVersion},
      {"k", s.pi.size()},
      {"pi", to_double_vector(s.pi)},
      {"d", to_double_vector(s.d)},
      {"B", matrix_to_json(s.b)},
      {"diagnostics", diagnostics_to_json(s.diagnostics)},
  };
}

}  // namespace graphpencil
