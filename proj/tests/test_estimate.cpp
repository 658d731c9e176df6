#include <doctest.h>
#include <stdexcept>

#include <cmath>
#include <vector>

#include "matcon/estimate.hpp"

using namespace matcon;

TEST_CASE("config validation") {
    MCConfig cfg;
    cfg.samples = 1;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg.samples = 200;
    cfg.estimator = EstimatorKind::MedianOfMeans;
    cfg.blocks = 16;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg.blocks = 10;
    CHECK_NOTHROW(cfg.validate());
    cfg.k = -1.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("block count is the largest divisor not above the preference") {
    CHECK(block_count_for(200) == 10);
    CHECK(block_count_for(1000000) == 16);
    CHECK(block_count_for(17) == 1);
    CHECK(block_count_for(12, 5) == 4);
}

TEST_CASE("mean estimator reports the standard error") {
    MCConfig cfg;
    const std::vector<double> x{1.0, 2.0, 3.0, 4.0};
    const Estimate e = summarize(x, cfg);
    CHECK(e.mean == doctest::Approx(2.5));
    // sd = sqrt(5/3), se = sd / 2
    REQUIRE(e.std_error.has_value());
    CHECK(*e.std_error == doctest::Approx(std::sqrt(5.0 / 3.0) / 2.0));
    CHECK(e.spread == *e.std_error);
    CHECK(e.samples == 4);
}

TEST_CASE("constant data has zero spread under both estimators") {
    const std::vector<double> x(20, 3.5);
    MCConfig cfg;
    CHECK(summarize(x, cfg).spread == 0.0);
    cfg.estimator = EstimatorKind::MedianOfMeans;
    cfg.blocks = 5;
    const Estimate e = summarize(x, cfg);
    CHECK(e.mean == 3.5);
    CHECK(e.spread == 0.0);
    CHECK_FALSE(e.std_error.has_value());
}

TEST_CASE("median of means resists a single outlier") {
    std::vector<double> x(100, 1.0);
    x[7] = 1e9;
    MCConfig cfg;
    cfg.estimator = EstimatorKind::MedianOfMeans;
    cfg.blocks = 10;
    const Estimate e = summarize(x, cfg);
    CHECK(e.mean == 1.0);
    CHECK(e.spread == 0.0);
    cfg.blocks = 3;
    CHECK_THROWS_AS(summarize(x, cfg), std::invalid_argument);
    CHECK(estimator_name(EstimatorKind::MedianOfMeans) == "mom");
}
