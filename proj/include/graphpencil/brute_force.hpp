#pragma once

#include "graphpencil/error.hpp"
#include "graphpencil/glyph.hpp"
#include "graphpencil/linalg.hpp"
#include "graphpencil/sbm.hpp"

#include <string>
#include <utility>
#include <vector>

namespace graphpencil {

/// Arbitrary small pattern graph given by vertex count and edge list.
struct SmallGraph {
  int vertices = 0;
  std::vector<std::pair<int, int>> edges;
};

/// Pattern graph of a bistar glyph: vertex 0 is the left centre, 1 the
/// right centre, then left pendants, middle vertices and right pendants.
inline SmallGraph to_small_graph(const BistarGlyph& g) {
  SmallGraph out;
  out.vertices = g.vertex_count();
  int next = 2;
  for (int i = 0; i < g.left; ++i) out.edges.emplace_back(0, next++);
  for (int i = 0; i < g.mid; ++i) {
    out.edges.emplace_back(0, next);
    out.edges.emplace_back(next++, 1);
  }
  for (int i = 0; i < g.right; ++i) out.edges.emplace_back(1, next++);
  if (g.bridge) out.edges.emplace_back(0, 1);
  return out;
}

inline constexpr int kBruteForceMaxVertices = 10;
inline constexpr int kBruteForceMaxBlocks = 5;

/// Literal evaluation of the homomorphism density by summing over every
/// assignment of pattern vertices to blocks. Rooted vertices are held fixed
/// and carry no pi weight. Returns a 1x1, Kx1 or KxK matrix for 0, 1 or 2
/// roots (first root indexes rows).
template <typename Scalar>
Matrix<Scalar> brute_force_density(const BasicSbmParams<Scalar>& p, const SmallGraph& g,
                                   const std::vector<int>& roots) {
  const int k = static_cast<int>(p.k());
  if (g.vertices > kBruteForceMaxVertices || k > kBruteForceMaxBlocks) {
    throw BudgetError("brute-force density needs |V(g)| <= " +
                      std::to_string(kBruteForceMaxVertices) + " and K <= " +
                      std::to_string(kBruteForceMaxBlocks) + " (got |V(g)| = " +
                      std::to_string(g.vertices) + ", K = " + std::to_string(k) + ")");
  }
  if (roots.size() > 2) throw ValidationError("at most two rooted vertices are supported");
  for (int r : roots) {
    if (r < 0 || r >= g.vertices) throw ValidationError("root vertex out of range");
  }
  if (roots.size() == 2 && roots[0] == roots[1]) {
    throw ValidationError("the two roots must be distinct");
  }
  for (const auto& [u, v] : g.edges) {
    if (u < 0 || v < 0 || u >= g.vertices || v >= g.vertices) {
      throw ValidationError("pattern edge references a vertex out of range");
    }
  }

  std::vector<bool> is_root(static_cast<std::size_t>(g.vertices), false);
  for (int r : roots) is_root[static_cast<std::size_t>(r)] = true;

  const Index rows = roots.empty() ? 1 : k;
  const Index cols = roots.size() == 2 ? k : 1;
  Matrix<Scalar> out = Matrix<Scalar>::Zero(rows, cols);

  std::vector<int> phi(static_cast<std::size_t>(g.vertices), 0);
  while (true) {
    Scalar weight(1);
    for (int v = 0; v < g.vertices; ++v) {
      if (!is_root[static_cast<std::size_t>(v)]) weight *= p.pi(phi[static_cast<std::size_t>(v)]);
    }
    for (const auto& [u, v] : g.edges) {
      weight *= p.b(phi[static_cast<std::size_t>(u)], phi[static_cast<std::size_t>(v)]);
    }
    const Index row = roots.empty() ? 0 : phi[static_cast<std::size_t>(roots[0])];
    const Index col = roots.size() == 2 ? phi[static_cast<std::size_t>(roots[1])] : 0;
    out(row, col) += weight;

    int pos = 0;
    while (pos < g.vertices && ++phi[static_cast<std::size_t>(pos)] == k) {
      phi[static_cast<std::size_t>(pos)] = 0;
      ++pos;
    }
    if (pos == g.vertices) break;
  }
  return out;
}

/// Brute-force density of a bistar glyph, rooted per its rooting.
template <typename Scalar>
Matrix<Scalar> brute_force_density(const BasicSbmParams<Scalar>& p, const BistarGlyph& g) {
  std::vector<int> roots;
  if (g.rooting == Rooting::LeftRooted) roots = {0};
  if (g.rooting == Rooting::BiRooted) roots = {0, 1};
  return brute_force_density(p, to_small_graph(g), roots);
}

}  // namespace graphpencil
