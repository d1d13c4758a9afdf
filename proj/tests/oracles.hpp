#pragma once

// Independent reference computations for the tests. Nothing here calls the
// code under test.

#include "graphpencil/graph.hpp"
#include "graphpencil/sbm.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace oracle {

using graphpencil::Index;

inline graphpencil::UndirectedGraph random_graph(Index n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  std::vector<graphpencil::Edge> edges;
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      if (coin(rng)) edges.emplace_back(i, j);
    }
  }
  return graphpencil::UndirectedGraph::from_edges(n, edges);
}

inline graphpencil::SbmParams random_sbm(int k, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  graphpencil::SbmParams p;
  p.pi.resize(k);
  for (int i = 0; i < k; ++i) p.pi(i) = 0.1 + u(rng);
  p.pi /= p.pi.sum();
  p.b.resize(k, k);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j <= i; ++j) p.b(i, j) = p.b(j, i) = u(rng);
  }
  return p;
}

/// Sum over every block assignment of the pattern vertices, with the pattern
/// written as an explicit edge list.
inline double literal_density(const graphpencil::SbmParams& p, int vertices,
                              const std::vector<std::pair<int, int>>& edges) {
  const int k = static_cast<int>(p.k());
  std::vector<int> phi(static_cast<std::size_t>(vertices), 0);
  double total = 0.0;
  while (true) {
    double w = 1.0;
    for (int v : phi) w *= p.pi(v);
    for (auto [a, b] : edges) w *= p.b(phi[a], phi[b]);
    total += w;
    int pos = 0;
    while (pos < vertices && ++phi[pos] == k) phi[pos++] = 0;
    if (pos == vertices) break;
  }
  return total;
}

}  // namespace oracle
