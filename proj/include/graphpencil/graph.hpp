#pragma once

#include "graphpencil/linalg.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace graphpencil {

using AdjacencyMatrix = Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic>;
using Edge = std::pair<Index, Index>;

/// Simple undirected graph on nodes 0..n-1, stored as a dense symmetric
/// 0/1 adjacency matrix with an empty diagonal. Immutable once built.
class UndirectedGraph {
 public:
  UndirectedGraph() = default;

  /// Graph with n nodes and no edges.
  explicit UndirectedGraph(Index n);

  /// Validates symmetry, the zero diagonal and 0/1 entries.
  explicit UndirectedGraph(AdjacencyMatrix adjacency);

  /// Rejects out-of-range ids, self-loops and duplicate edges.
  static UndirectedGraph from_edges(Index n, const std::vector<Edge>& edges);

  Index n() const { return adjacency_.rows(); }
  const AdjacencyMatrix& adjacency() const { return adjacency_; }
  bool has_edge(Index i, Index j) const { return adjacency_(i, j) != 0; }

  Index degree(Index i) const;
  Index edge_count() const;

  /// Edges (i, j) with i < j in lexicographic order.
  std::vector<Edge> edges() const;

  /// The graph with node v deleted; nodes above v shift down by one.
  UndirectedGraph without_node(Index v) const;

  /// Relabels nodes: node i of the result is node perm[i] of this graph.
  UndirectedGraph permuted(const std::vector<Index>& perm) const;

  template <typename Scalar>
  Matrix<Scalar> adjacency_as() const {
    return adjacency_.cast<Scalar>();
  }

  friend bool operator==(const UndirectedGraph& a, const UndirectedGraph& b) {
    return a.adjacency_.rows() == b.adjacency_.rows() && a.adjacency_ == b.adjacency_;
  }

 private:
  AdjacencyMatrix adjacency_;
};

inline UndirectedGraph complete_graph(Index n) {
  AdjacencyMatrix a = AdjacencyMatrix::Ones(n, n);
  a.diagonal().setZero();
  return UndirectedGraph(std::move(a));
}

inline UndirectedGraph path_graph(Index n) {
  std::vector<Edge> edges;
  for (Index i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return UndirectedGraph::from_edges(n, edges);
}

}  // namespace graphpencil
