#pragma once

#include "graphpencil/graph.hpp"
#include "graphpencil/sbm.hpp"

#include <cstdint>
#include <initializer_list>
#include <vector>

namespace graphpencil {

/// Counter-based generator: every draw is a pure function of
/// (seed, stream, counter), so draws can be made in any order or in
/// parallel and still reproduce bit-for-bit. Mixing is SplitMix64.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t bits(std::uint64_t stream, std::uint64_t counter) const;

  /// Uniform on [0, 1) with 53 random bits.
  double uniform(std::uint64_t stream, std::uint64_t counter) const;

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
};

std::uint64_t splitmix64(std::uint64_t x);

/// Derives a child seed from a parent seed and a list of indices.
std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> indices);

struct SampleConfig {
  Index n = 0;
  std::uint64_t seed = 0;
};

/// A sampled graph together with the latent block of every node. The
/// labels are never written into edge-list files.
struct SampledGraph {
  UndirectedGraph graph;
  std::vector<int> blocks;
};

/// Draws each node's block i.i.d. from pi, then links every pair (i, j)
/// independently with probability B[k(i)][k(j)].
SampledGraph sample_graph(const SbmParams& params, const SampleConfig& config);

}  // namespace graphpencil

namespace graphpencil {

/// Random SBM with pi_k proportional to 0.2 + U(0,1) and B_ij ~ U(0,1),
/// redrawn until every pair of block degrees differs by at least min_gap.
SbmParams random_degree_separated_sbm(int k, std::uint64_t seed, double min_gap = 0.05);

}  // namespace graphpencil
