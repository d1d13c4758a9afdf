#include "graphpencil/estimation.hpp"

namespace graphpencil {

CountingDensitySource::CountingDensitySource(const UndirectedGraph& graph,
                                             const std::vector<BistarGlyph>& glyphs)
    : n_(graph.n()) {
  std::vector<BistarGlyph> keys;
  keys.reserve(glyphs.size());
  for (const auto& g : glyphs) keys.push_back(g.with_rooting(Rooting::Unrooted).canonical());
  for (const auto& g : keys) {
    if (g.vertex_count() > n_) {
      throw BudgetError("glyph " + format_glyph(g) + " has " + std::to_string(g.vertex_count()) +
                        " vertices but the graph has only " + std::to_string(n_) + " nodes");
    }
  }
  const std::vector<CountTotal> totals = count_totals(graph, keys);
  for (std::size_t i = 0; i < keys.size(); ++i) {
    const long double ways = falling_factorial(n_, keys[i].vertex_count());
    densities_[keys[i]] = static_cast<double>(totals[i].value / ways);
  }
}

CountingDensitySource::CountingDensitySource(const UndirectedGraph& graph, int k, bool two_hop)
    : CountingDensitySource(graph, required_glyphs(k, two_hop)) {}

double CountingDensitySource::density(const BistarGlyph& glyph) const {
  const auto key = glyph.with_rooting(Rooting::Unrooted).canonical();
  const auto it = densities_.find(key);
  if (it == densities_.end()) {
    throw MissingGlyphError("density of " + format_glyph(key) + " was not counted");
  }
  return it->second;
}

PencilSolution<double> infer_from_graph(const UndirectedGraph& graph, int k,
                                        const PencilOptions& options) {
  const CountingDensitySource source(graph, k, options.two_hop);
  return infer_sbm(source, k, options);
}

}  // namespace graphpencil
