#include "graphpencil/sampling.hpp"

#include "graphpencil/error.hpp"

#include <algorithm>

namespace graphpencil {

namespace {
constexpr std::uint64_t kBlockStream = 0;
constexpr std::uint64_t kEdgeStream = 1;
}  // namespace

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t CounterRng::bits(std::uint64_t stream, std::uint64_t counter) const {
  return splitmix64(splitmix64(splitmix64(seed_) ^ stream) ^ counter);
}

double CounterRng::uniform(std::uint64_t stream, std::uint64_t counter) const {
  return static_cast<double>(bits(stream, counter) >> 11) * 0x1.0p-53;
}

std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> indices) {
  std::uint64_t h = splitmix64(seed);
  for (std::uint64_t i : indices) h = splitmix64(h ^ splitmix64(i + 0x632be59bd9b4e019ULL));
  return h;
}

SampledGraph sample_graph(const SbmParams& params, const SampleConfig& config) {
  validate(params);
  if (config.n < 1) throw ValidationError("sample size n must be at least 1");
  const Index n = config.n;
  const Index k = params.k();
  const CounterRng rng(config.seed);

  std::vector<double> cumulative(static_cast<std::size_t>(k));
  double acc = 0.0;
  for (Index b = 0; b < k; ++b) {
    acc += params.pi(b);
    cumulative[static_cast<std::size_t>(b)] = acc;
  }

  SampledGraph out;
  out.blocks.resize(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) {
    const double u = rng.uniform(kBlockStream, static_cast<std::uint64_t>(i)) * acc;
    int block = static_cast<int>(k - 1);
    for (Index b = 0; b < k; ++b) {
      if (u < cumulative[static_cast<std::size_t>(b)]) {
        block = static_cast<int>(b);
        break;
      }
    }
    // Skip zero-weight blocks that only the rounding fallback could select.
    while (block > 0 && params.pi(block) == 0.0) --block;
    out.blocks[static_cast<std::size_t>(i)] = block;
  }

  AdjacencyMatrix a = AdjacencyMatrix::Zero(n, n);
  for (Index j = 1; j < n; ++j) {
    const int bj = out.blocks[static_cast<std::size_t>(j)];
    for (Index i = 0; i < j; ++i) {
      const double p = params.b(out.blocks[static_cast<std::size_t>(i)], bj);
      const auto pair = static_cast<std::uint64_t>(i) * static_cast<std::uint64_t>(n) +
                        static_cast<std::uint64_t>(j);
      if (rng.uniform(kEdgeStream, pair) < p) {
        a(i, j) = 1;
        a(j, i) = 1;
      }
    }
  }
  out.graph = UndirectedGraph(std::move(a));
  return out;
}

}  // namespace graphpencil

namespace graphpencil {

SbmParams random_degree_separated_sbm(int k, std::uint64_t seed, double min_gap) {
  if (k < 1) throw ValidationError("block count K must be at least 1");
  constexpr int kMaxAttempts = 100000;
  for (std::uint64_t attempt = 0; attempt < kMaxAttempts; ++attempt) {
    const CounterRng rng(derive_seed(seed, {attempt}));
    std::uint64_t counter = 0;
    SbmParams p;
    p.pi.resize(k);
    for (int i = 0; i < k; ++i) p.pi(i) = 0.2 + rng.uniform(0, counter++);
    p.pi /= p.pi.sum();
    p.b.resize(k, k);
    for (int j = 0; j < k; ++j) {
      for (int i = 0; i <= j; ++i) p.b(i, j) = p.b(j, i) = rng.uniform(1, counter++);
    }
    Eigen::VectorXd d = block_degrees(p);
    std::sort(d.data(), d.data() + d.size());
    bool separated = true;
    for (int i = 0; i + 1 < k; ++i) separated = separated && d(i + 1) - d(i) >= min_gap;
    if (separated) return p;
  }
  throw ValidationError("could not draw a degree-separated SBM with gap " +
                        std::to_string(min_gap));
}

}  // namespace graphpencil
