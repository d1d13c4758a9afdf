#pragma once

#include "graphpencil/glyph.hpp"
#include "graphpencil/graph.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <tuple>
#include <variant>
#include <vector>

namespace graphpencil {

using CountMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;
using CountVector = Eigen::Matrix<std::int64_t, Eigen::Dynamic, 1>;

/// Sums of count matrices exceed 64 bits long before the entries do.
using BigCount = __int128;

std::string to_string(BigCount value);

/// A^2 = D + Lambda: node degrees on the diagonal, common-neighbour counts
/// (two-hop paths) off it.
struct TwoHopDecomposition {
  CountVector degrees;
  CountMatrix lambda;

  CountMatrix degree_matrix() const { return degrees.asDiagonal(); }
};

TwoHopDecomposition two_hop_decompose(const UndirectedGraph& graph);

/// Total injective count of one glyph over all ordered root placements.
struct CountTotal {
  BigCount exact = 0;
  long double value = 0;
  /// False when 64-bit entries overflowed and the count fell back to
  /// floating-point accumulation.
  bool is_exact = true;
};

/// N x N matrices of rooted injective homomorphism counts for the bistar
/// family: entry (i, j) counts injective placements of the glyph with its
/// left centre on node i and right centre on node j. Immutable after
/// construction apart from the lazily filled edge-marked entries, which are
/// guarded by a mutex.
class CountTable {
 public:
  CountTable(const UndirectedGraph& graph, int max_l, int max_c, int max_r);

  Index graph_n() const { return n_; }
  int max_l() const { return max_l_; }
  int max_c() const { return max_c_; }
  int max_r() const { return max_r_; }

  const CountVector& degrees() const { return two_hop_.degrees; }
  const CountMatrix& lambda() const { return two_hop_.lambda; }
  const CountMatrix& adjacency() const { return adjacency_; }

  /// Whether (left, mid, right) lies inside the table bounds.
  bool contains(const BistarGlyph& g) const;

  /// Exact count matrix; throws MissingGlyphError outside the table and
  /// NumericalError if this entry overflowed 64-bit integers.
  const CountMatrix& matrix(const BistarGlyph& g) const;

  /// Count matrix as doubles; available for every entry.
  Eigen::MatrixXd matrix_as_double(const BistarGlyph& g) const;

  /// Sum of all entries, looking up the mirrored glyph for unrooted
  /// glyphs that fall outside the table only by orientation.
  CountTotal total(const BistarGlyph& g) const;

  /// Glyphs whose counts fell back to floating point.
  std::vector<BistarGlyph> inexact_glyphs() const;

 private:
  using Entry = std::variant<CountMatrix, Eigen::MatrixXd>;
  using Key = std::tuple<int, int, int, bool>;

  const Entry& entry(const BistarGlyph& g) const;
  BistarGlyph resolve(const BistarGlyph& g) const;

  Index n_ = 0;
  int max_l_ = 0;
  int max_c_ = 0;
  int max_r_ = 0;
  CountMatrix adjacency_;
  TwoHopDecomposition two_hop_;
  std::map<Key, Entry> unmarked_;
  mutable std::map<Key, Entry> marked_;
  mutable std::unique_ptr<std::mutex> mutex_ = std::make_unique<std::mutex>();
};

/// Builds all (l <= max_l, c <= max_c, r <= max_r) entries with and
/// without the bridge mark. Requires 2 + max_l + max_c + max_r <= N.
CountTable build_count_table(const UndirectedGraph& graph, int max_l, int max_c, int max_r);

/// Sum of the glyph's count matrix: injective homomorphisms of the
/// unrooted glyph into the graph.
BigCount inj_hom_count(const CountTable& table, const BistarGlyph& glyph);

/// Count divided by N (N-1) ... (N - |V(g)| + 1).
double inj_hom_density(const CountTable& table, const BistarGlyph& glyph);

/// N (N-1) ... (N - v + 1) as a long double.
long double falling_factorial(Index n, int v);

/// Streaming totals: processes row blocks so memory stays
/// O(block_rows * N) per intermediate regardless of how many glyphs are
/// requested. Same recursion as CountTable.
std::vector<CountTotal> count_totals(const UndirectedGraph& graph,
                                     const std::vector<BistarGlyph>& glyphs,
                                     Index block_rows = 256);

inline constexpr int kBruteForceMaxPatternVertices = 6;
inline constexpr Index kBruteForceMaxGraphNodes = 14;

/// Literal enumeration of injective maps from the glyph's vertices into
/// the graph, checking every pattern edge.
std::int64_t brute_force_inj_count(const UndirectedGraph& graph, const BistarGlyph& glyph);

/// Leave-one-node-out variance estimate of the injective density:
///   n/(n-1) * sum_i (mu(G \ i) - mu(G))^2.
/// All leave-one-out counts come from one sweep of matrix products rather
/// than N recounts; agrees with jackknife_variance_rebuild up to rounding.
double jackknife_variance(const UndirectedGraph& graph, const BistarGlyph& glyph);

/// Same estimate for several glyphs in one leave-one-out sweep.
std::vector<double> jackknife_variances(const UndirectedGraph& graph,
                                        const std::vector<BistarGlyph>& glyphs);

/// Reference implementation: deletes each node and rebuilds from scratch.
double jackknife_variance_rebuild(const UndirectedGraph& graph, const BistarGlyph& glyph);

}  // namespace graphpencil
