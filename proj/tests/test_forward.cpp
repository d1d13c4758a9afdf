#include "doctest.h"

#include "graphpencil/brute_force.hpp"
#include "graphpencil/error.hpp"
#include "graphpencil/forward.hpp"
#include "oracles.hpp"

#include <cmath>
#include <random>

using namespace graphpencil;

namespace {

SbmParams two_block() {
  SbmParams p{Eigen::Vector2d(0.5, 0.5), Eigen::Matrix2d()};
  p.b << 0.8, 0.2, 0.2, 0.8;
  return p;
}

std::vector<std::pair<int, int>> bistar_edges(const BistarGlyph& g) {
  std::vector<std::pair<int, int>> e;
  int next = 2;
  for (int i = 0; i < g.left; ++i) e.emplace_back(0, next++);
  for (int i = 0; i < g.mid; ++i) {
    e.emplace_back(0, next);
    e.emplace_back(next++, 1);
  }
  for (int i = 0; i < g.right; ++i) e.emplace_back(1, next++);
  if (g.bridge) e.emplace_back(0, 1);
  return e;
}

}  // namespace

TEST_CASE("erdos-renyi densities are p to the edge count") {
  const SbmParams er = erdos_renyi(0.3);
  for (const auto& g : {BistarGlyph{2, 1, 1, true}, BistarGlyph{0, 0, 0, true}, BistarGlyph{3, 0, 0, false}}) {
    CHECK(unrooted_density(er, g) == doctest::Approx(std::pow(0.3, g.edge_count())).epsilon(1e-14));
  }
  CHECK(unrooted_density(two_block(), BistarGlyph{}) == doctest::Approx(1.0));
}

TEST_CASE("star moments") {
  SbmParams p{Eigen::Vector2d(0.5, 0.5), Eigen::Matrix2d()};
  p.b << 0.1, 0.3, 0.3, 1.0;
  // d = B^T pi = (0.2, 0.65)
  const Eigen::VectorXd m = star_moments(p, 3);
  CHECK(m(0) == doctest::Approx(1.0));
  CHECK(m(1) == doctest::Approx(0.5 * 0.2 + 0.5 * 0.65));
  CHECK(m(2) == doctest::Approx(0.5 * 0.04 + 0.5 * 0.65 * 0.65));
  CHECK(unrooted_density(p, star(2)) == doctest::Approx(m(2)));
}

TEST_CASE("birooted bridge equals B and shapes follow the rooting") {
  const SbmParams p = two_block();
  const auto bridged = std::get<Eigen::MatrixXd>(eval_density(p, bridge_glyph()));
  CHECK(bridged.isApprox(p.b));
  const auto left = std::get<Eigen::VectorXd>(eval_density(p, star(2, Rooting::LeftRooted)));
  CHECK(left.size() == 2);
  CHECK(left(0) == doctest::Approx(0.5 * 0.5));
  CHECK(std::holds_alternative<double>(eval_density(p, star(2))));
}

TEST_CASE("closed form matches both enumerators") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const int k = 1 + trial % 4;
    const SbmParams p = oracle::random_sbm(k, rng);
    const BistarGlyph g{static_cast<int>(rng() % 3), static_cast<int>(rng() % 2),
                        static_cast<int>(rng() % 2), (rng() & 1) != 0};
    const double closed = unrooted_density(p, g);
    CHECK(std::abs(closed - oracle::literal_density(p, g.vertex_count(), bistar_edges(g))) < 1e-12);
    CHECK(std::abs(closed - brute_force_density(p, g)(0, 0)) < 1e-12);
    const BistarGlyph rooted = g.with_rooting(Rooting::BiRooted);
    CHECK((birooted_density(p, rooted) - brute_force_density(p, rooted)).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("gluing is a homomorphism of birooted densities") {
  std::mt19937_64 rng(3);
  const SbmParams p = oracle::random_sbm(3, rng);
  const BistarGlyph a{1, 1, 0, false, Rooting::BiRooted};
  const BistarGlyph b{0, 1, 2, true, Rooting::BiRooted};
  const Eigen::MatrixXd lhs = birooted_density(p, glue(a, b));
  const Eigen::MatrixXd rhs = birooted_density(p, a).cwiseProduct(birooted_density(p, b));
  CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("brute-force density enforces its budget") {
  std::mt19937_64 rng(1);
  CHECK_THROWS_AS(brute_force_density(oracle::random_sbm(2, rng), BistarGlyph{5, 2, 3, false}),
                  BudgetError);
  CHECK_THROWS_AS(brute_force_density(oracle::random_sbm(6, rng), BistarGlyph{}), BudgetError);
}
