#include <doctest.h>

#include <random>

#include "oracle.hpp"

using namespace gic;

TEST_CASE("naive nagic of an identity panel is zero") {
    std::vector<WorkerRecord> workers = {{"a", 100, 100}, {"a", 100, 100}, {"b", 300, 300}};
    for (double v : oracle::naive_nagic(workers, 3, GrowthVariant::democratic).values) {
        CHECK(v == 0.0);
    }
}

TEST_CASE("single-fractile naive nagic is the overall mean growth") {
    std::vector<WorkerRecord> workers = {{"a", 100, 110}, {"b", 200, 0}, {"c", 300, 330}, {"d", 0, 50}};
    auto curve = oracle::naive_nagic(workers, 1, GrowthVariant::democratic);
    CHECK(curve.values.front() == doctest::Approx((0.1 - 1.0 + 0.1) / 3.0));
    CHECK(curve.population == 3.0);
}

TEST_CASE("oracle refuses more than 1e5 workers") {
    std::vector<WorkerRecord> workers(oracle::kMaxWorkers + 1, WorkerRecord{"a", 1, 1});
    try {
        oracle::naive_nagic(workers, 5, GrowthVariant::democratic);
        FAIL("expected TooLarge");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::TooLarge);
    }
}

TEST_CASE("empirical Gini edge cases") {
    std::vector<double> equal(10, 4.2);
    CHECK(oracle::empirical_gini(equal) == doctest::Approx(0.0).scale(1));
    std::vector<double> two = {1e-12, 1.0};
    CHECK(oracle::empirical_gini(two) == doctest::Approx(0.5).epsilon(1e-9));
    CHECK_THROWS_AS(oracle::empirical_gini(std::vector<double>{}), Error);
}

TEST_CASE("sorted-rank Gini equals the pairwise definition") {
    std::mt19937_64 rng(4);
    std::lognormal_distribution<double> dist(0.0, 0.8);
    std::vector<double> x(500);
    for (auto& v : x) v = dist(rng);
    CHECK(oracle::empirical_gini(x) == doctest::Approx(oracle::pairwise_gini(x)).epsilon(1e-12));
}

TEST_CASE("exact hypergeometric probabilities sum to one") {
    double total = 0.0;
    for (int k = 0; k <= 10; ++k) total += oracle::hypergeometric_pmf(30, 12, 10, k);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(oracle::hypergeometric_pmf(4, 2, 2, 1) == doctest::Approx(4.0 / 6.0));
}
