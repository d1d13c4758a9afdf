#include "graphpencil/graph.hpp"

#include "graphpencil/error.hpp"

#include <string>

namespace graphpencil {

UndirectedGraph::UndirectedGraph(Index n) {
  if (n < 0) throw ValidationError("node count must be non-negative");
  adjacency_ = AdjacencyMatrix::Zero(n, n);
}

UndirectedGraph::UndirectedGraph(AdjacencyMatrix adjacency) : adjacency_(std::move(adjacency)) {
  if (adjacency_.rows() != adjacency_.cols()) {
    throw ValidationError("adjacency matrix must be square");
  }
  const Index n = adjacency_.rows();
  for (Index j = 0; j < n; ++j) {
    if (adjacency_(j, j) != 0) {
      throw ValidationError("self-loop at node " + std::to_string(j));
    }
    for (Index i = 0; i < n; ++i) {
      const auto v = adjacency_(i, j);
      if (v > 1) {
        throw ValidationError("adjacency entry (" + std::to_string(i) + ", " + std::to_string(j) +
                              ") is not 0/1");
      }
      if (v != adjacency_(j, i)) {
        throw ValidationError("adjacency matrix is not symmetric at (" + std::to_string(i) +
                              ", " + std::to_string(j) + ")");
      }
    }
  }
}

UndirectedGraph UndirectedGraph::from_edges(Index n, const std::vector<Edge>& edges) {
  UndirectedGraph g(n);
  for (const auto& [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n) {
      throw ValidationError("edge (" + std::to_string(u) + ", " + std::to_string(v) +
                            ") references a node outside [0, " + std::to_string(n) + ")");
    }
    if (u == v) throw ValidationError("self-loop at node " + std::to_string(u));
    if (g.adjacency_(u, v) != 0) {
      throw ValidationError("duplicate edge (" + std::to_string(u) + ", " + std::to_string(v) +
                            ")");
    }
    g.adjacency_(u, v) = 1;
    g.adjacency_(v, u) = 1;
  }
  return g;
}

Index UndirectedGraph::degree(Index i) const {
  return adjacency_.col(i).cast<Index>().sum();
}

Index UndirectedGraph::edge_count() const {
  return adjacency_.cast<Index>().sum() / 2;
}

std::vector<Edge> UndirectedGraph::edges() const {
  std::vector<Edge> out;
  const Index n = this->n();
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      if (adjacency_(i, j) != 0) out.emplace_back(i, j);
    }
  }
  return out;
}

UndirectedGraph UndirectedGraph::without_node(Index v) const {
  const Index n = this->n();
  if (v < 0 || v >= n) throw ValidationError("node " + std::to_string(v) + " out of range");
  AdjacencyMatrix a(n - 1, n - 1);
  for (Index j = 0, jj = 0; j < n; ++j) {
    if (j == v) continue;
    for (Index i = 0, ii = 0; i < n; ++i) {
      if (i == v) continue;
      a(ii++, jj) = adjacency_(i, j);
    }
    ++jj;
  }
  UndirectedGraph out;
  out.adjacency_ = std::move(a);
  return out;
}

UndirectedGraph UndirectedGraph::permuted(const std::vector<Index>& perm) const {
  const Index n = this->n();
  if (static_cast<Index>(perm.size()) != n) {
    throw ValidationError("permutation length does not match node count");
  }
  AdjacencyMatrix a(n, n);
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < n; ++i) {
      a(i, j) = adjacency_(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
    }
  }
  return UndirectedGraph(std::move(a));
}

}  // namespace graphpencil
