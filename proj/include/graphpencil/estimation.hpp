#pragma once

#include "graphpencil/counting.hpp"
#include "graphpencil/graph.hpp"
#include "graphpencil/pencil.hpp"

#include <map>
#include <vector>

namespace graphpencil {

/// Unrooted densities estimated from injective counts on an observed graph.
/// All glyphs are counted up front in one streaming pass.
class CountingDensitySource final : public BistarDensitySource<double> {
 public:
  CountingDensitySource(const UndirectedGraph& graph, const std::vector<BistarGlyph>& glyphs);

  /// Counts everything infer_sbm needs for K blocks.
  CountingDensitySource(const UndirectedGraph& graph, int k, bool two_hop);

  using BistarDensitySource<double>::density;
  double density(const BistarGlyph& glyph) const override;

  const std::map<BistarGlyph, double>& densities() const { return densities_; }
  Index graph_n() const { return n_; }

 private:
  Index n_ = 0;
  std::map<BistarGlyph, double> densities_;
};

/// infer_sbm on an observed graph.
PencilSolution<double> infer_from_graph(const UndirectedGraph& graph, int k,
                                        const PencilOptions& options = {});

}  // namespace graphpencil
