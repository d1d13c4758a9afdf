#include "doctest.h"

#include "graphpencil/counting.hpp"
#include "graphpencil/error.hpp"
#include "oracles.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>

using namespace graphpencil;

namespace {

// Independent count: literal loop over injective maps of the glyph's vertices.
std::int64_t enumerate(const UndirectedGraph& g, const BistarGlyph& glyph) {
  std::vector<std::pair<int, int>> edges;
  int next = 2;
  for (int i = 0; i < glyph.left; ++i) edges.emplace_back(0, next++);
  for (int i = 0; i < glyph.mid; ++i) {
    edges.emplace_back(0, next);
    edges.emplace_back(next++, 1);
  }
  for (int i = 0; i < glyph.right; ++i) edges.emplace_back(1, next++);
  if (glyph.bridge) edges.emplace_back(0, 1);
  const int v = glyph.vertex_count();
  const auto n = static_cast<int>(g.n());
  std::vector<int> phi(static_cast<std::size_t>(v), 0);
  std::int64_t total = 0;
  std::function<void(int)> rec = [&](int pos) {
    if (pos == v) {
      for (auto [a, b] : edges) {
        if (!g.has_edge(phi[a], phi[b])) return;
      }
      ++total;
      return;
    }
    for (int x = 0; x < n; ++x) {
      bool used = false;
      for (int q = 0; q < pos; ++q) used = used || phi[q] == x;
      if (used) continue;
      phi[pos] = x;
      rec(pos + 1);
    }
  };
  rec(0);
  return total;
}

double density_of(const UndirectedGraph& g, const BistarGlyph& glyph) {
  double ff = 1;
  for (int i = 0; i < glyph.vertex_count(); ++i) ff *= static_cast<double>(g.n() - i);
  return static_cast<double>(enumerate(g, glyph)) / ff;
}

}  // namespace

TEST_CASE("two-hop decomposition") {
  const auto k3 = two_hop_decompose(complete_graph(3));
  CHECK(k3.degrees == CountVector::Constant(3, 2));
  CountMatrix expected = CountMatrix::Ones(3, 3);
  expected.diagonal().setZero();
  CHECK(k3.lambda == expected);

  const auto empty = two_hop_decompose(UndirectedGraph(4));
  CHECK(empty.degrees.isZero());
  CHECK(empty.lambda.isZero());

  const auto p3 = two_hop_decompose(path_graph(3));
  CHECK(p3.degrees == (CountVector(3) << 1, 2, 1).finished());
  CHECK(p3.lambda(0, 2) == 1);
  CHECK(p3.lambda(0, 1) == 0);
  CHECK(p3.lambda.diagonal().isZero());
}

TEST_CASE("small hand counts") {
  const CountTable k3 = build_count_table(complete_graph(3), 0, 1, 0);
  CountMatrix off = CountMatrix::Ones(3, 3);
  off.diagonal().setZero();
  CHECK(k3.matrix(BistarGlyph{}) == off);
  CHECK(inj_hom_count(k3, bridge_glyph(Rooting::Unrooted)) == 6);
  CHECK(inj_hom_count(k3, BistarGlyph{0, 1, 0, true}) == 6);  // triangle
  CHECK(inj_hom_count(k3, BistarGlyph{0, 1, 0, false}) == 6);

  const CountTable k4 = build_count_table(complete_graph(4), 1, 0, 0);
  CHECK(inj_hom_count(k4, bridge_glyph(Rooting::Unrooted)) == 12);
  CHECK(inj_hom_count(k4, star(2)) == 24);

  const CountTable p3 = build_count_table(path_graph(3), 1, 0, 0);
  CHECK(inj_hom_count(p3, star(2)) == 2);
  CHECK(inj_hom_density(p3, star(2)) == doctest::Approx(1.0 / 3.0));
  CHECK(inj_hom_density(p3, star(1)) == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("recursion matches literal enumeration on random graphs") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 12; ++trial) {
    const Index n = 6 + trial % 4;
    const UndirectedGraph g = oracle::random_graph(n, 0.3 + 0.05 * (trial % 5), rng);
    const CountTable table = build_count_table(g, 2, 1, 1);
    for (int l = 0; l <= 2; ++l) {
      for (int c = 0; c <= 1; ++c) {
        for (int r = 0; r <= 1; ++r) {
          for (bool e : {false, true}) {
            const BistarGlyph glyph{l, c, r, e};
            CHECK(static_cast<std::int64_t>(inj_hom_count(table, glyph)) == enumerate(g, glyph));
            CHECK(brute_force_inj_count(g, glyph) == enumerate(g, glyph));
          }
        }
      }
    }
  }
}

TEST_CASE("count matrices transpose under mirroring") {
  std::mt19937_64 rng(8);
  const UndirectedGraph g = oracle::random_graph(10, 0.4, rng);
  const CountTable table = build_count_table(g, 2, 1, 2);
  for (const auto& glyph : {BistarGlyph{2, 0, 1, false}, BistarGlyph{1, 1, 2, true}}) {
    CHECK(table.matrix(glyph) == table.matrix(glyph.mirrored()).transpose());
  }
}

TEST_CASE("count table errors") {
  const CountTable t = build_count_table(complete_graph(6), 1, 1, 1);
  CHECK_THROWS_AS(t.matrix(BistarGlyph{2, 0, 0, false}), MissingGlyphError);
  CHECK_THROWS_AS(build_count_table(complete_graph(4), 2, 1, 1), BudgetError);
}

TEST_CASE("streaming totals agree with the table") {
  std::mt19937_64 rng(21);
  const UndirectedGraph g = oracle::random_graph(30, 0.3, rng);
  const CountTable table = build_count_table(g, 3, 1, 2);
  const std::vector<BistarGlyph> glyphs{{3, 0, 0, true}, {1, 1, 2, false}, {2, 1, 1, true}, {0, 0, 0, false}};
  const auto totals = count_totals(g, glyphs, 7);
  for (std::size_t i = 0; i < glyphs.size(); ++i) {
    CHECK(totals[i].is_exact);
    CHECK(totals[i].exact == inj_hom_count(table, glyphs[i]));
  }
}

TEST_CASE("jackknife variance") {
  CHECK(jackknife_variance(complete_graph(8), star(1)) == doctest::Approx(0.0));
  CHECK(jackknife_variance(UndirectedGraph(8), star(2)) == doctest::Approx(0.0));

  std::mt19937_64 rng(13);
  const UndirectedGraph g = oracle::random_graph(14, 0.4, rng);
  for (const auto& glyph : {star(1), star(2), BistarGlyph{1, 1, 0, true}}) {
    // reference by literal deletion and enumeration
    const double mu = density_of(g, glyph);
    double acc = 0;
    for (Index v = 0; v < g.n(); ++v) {
      const double dv = density_of(g.without_node(v), glyph) - mu;
      acc += dv * dv;
    }
    const double expected = static_cast<double>(g.n()) / static_cast<double>(g.n() - 1) * acc;
    CHECK(jackknife_variance(g, glyph) == doctest::Approx(expected).epsilon(1e-9));
    CHECK(jackknife_variance_rebuild(g, glyph) == doctest::Approx(expected).epsilon(1e-9));
  }

  std::vector<Index> perm(static_cast<std::size_t>(g.n()));
  std::iota(perm.begin(), perm.end(), Index{0});
  std::shuffle(perm.begin(), perm.end(), rng);
  CHECK(jackknife_variance(g.permuted(perm), star(2)) ==
        doctest::Approx(jackknife_variance(g, star(2))).epsilon(1e-10));
}
