#include "doctest.h"

#include "graphpencil/error.hpp"
#include "graphpencil/experiment.hpp"

#include <cmath>
#include <sstream>

using namespace graphpencil;

TEST_CASE("squared error") {
  const Eigen::Matrix2d b = Eigen::Matrix2d::Constant(0.3);
  CHECK(squared_error(b, b, Eigen::Vector2d(0.5, 0.5)) == 0.0);
  CHECK(squared_error(Eigen::MatrixXd::Constant(1, 1, 0.5), Eigen::MatrixXd::Constant(1, 1, 0.6),
                      Eigen::VectorXd::Ones(1)) == doctest::Approx(0.01));
  Eigen::Matrix2d shifted = b;
  shifted(0, 0) += 0.2;
  CHECK(squared_error(b, shifted, Eigen::Vector2d(0.5, 0.5)) == doctest::Approx(0.01));
  // entries outside the support of pi do not count
  CHECK(squared_error(b, shifted, Eigen::Vector2d(0.0, 1.0)) == 0.0);
  CHECK_THROWS_AS(squared_error(b, Eigen::MatrixXd::Zero(3, 3), Eigen::Vector2d(0.5, 0.5)),
                  ValidationError);
}

TEST_CASE("known-blocks baseline") {
  CHECK(known_blocks_baseline(erdos_renyi(0.5), 100) == doctest::Approx(5e-5));
  CHECK(known_blocks_baseline(erdos_renyi(0.0), 100) == 0.0);
  SbmParams p{Eigen::Vector2d(0.3, 0.7), Eigen::Matrix2d()};
  p.b << 0.6, 0.1, 0.1, 0.4;
  CHECK(known_blocks_baseline(p, 200) == doctest::Approx(known_blocks_baseline(p, 100) / 4.0));
}

TEST_CASE("experiment spec validation") {
  ExperimentSpec spec;
  spec.sbm = erdos_renyi(0.5);
  CHECK_NOTHROW(validate(spec));
  spec.sizes = {512, 256};
  CHECK_THROWS_AS(validate(spec), ValidationError);
  spec.sizes = {256};
  spec.replicates = {0};
  CHECK_THROWS_AS(validate(spec), ValidationError);
  spec.replicates = {1, 2};
  CHECK_THROWS_AS(validate(spec), ValidationError);

  const auto parsed = experiment_spec_from_json(nlohmann::json::parse(
      R"({"sbm": {"pi": [1.0], "B": [[0.3]]}, "sizes": [64, 128], "replicates": 3, "methods": ["bistar"], "seed": 9})"));
  CHECK(parsed.sizes == std::vector<Index>{64, 128});
  CHECK(parsed.replicates == std::vector<int>{3, 3});
  CHECK(parsed.methods == std::vector<Method>{Method::Bistar});
  CHECK(parsed.seed == 9);
  CHECK_THROWS_AS(parse_method("three_hop"), ValidationError);
}

TEST_CASE("experiment smoke run is reproducible") {
  ExperimentSpec spec;
  spec.sbm = erdos_renyi(0.5);
  spec.sizes = {128};
  spec.replicates = {4};
  spec.methods = {Method::Bistar};
  spec.seed = 3;
  const ExperimentResult a = run_experiment(spec);
  REQUIRE(a.records.size() == 4);
  for (const auto& r : a.records) {
    CHECK(r.ok);
    CHECK(std::isfinite(r.squared_error));
    CHECK(r.squared_error > 0.0);
  }
  REQUIRE(a.summaries.size() == 1);
  CHECK(a.summaries[0].successes == 4);

  std::ostringstream s1, s2, r1, r2;
  write_summary_csv(s1, a);
  write_raw_csv(r1, a);
  const ExperimentResult b = run_experiment(spec);
  write_summary_csv(s2, b);
  write_raw_csv(r2, b);
  CHECK(s1.str() == s2.str());
  CHECK(r1.str() == r2.str());
}
