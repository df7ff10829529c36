#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "stopsmith/closed_forms.hpp"
#include "stopsmith/engine.hpp"
#include "stopsmith/log_space.hpp"

using namespace stopsmith;

TEST_CASE("classical values") {
    CHECK(classical_exact(2, 0) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(classical_exact(4, 1) == doctest::Approx(11.0 / 24).epsilon(1e-14));
    const auto sweep = classical_sweep(4);
    CHECK(sweep[0] == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(sweep[1] == doctest::Approx(11.0 / 24).epsilon(1e-14));
    CHECK(sweep[2] == doctest::Approx(5.0 / 12).epsilon(1e-14));
    CHECK(sweep[3] == doctest::Approx(0.25).epsilon(1e-14));
    CHECK_THROWS_AS(classical_exact(4, 4), BadThreshold);
    CHECK_THROWS_AS(classical_exact(4, -1), BadThreshold);
}

TEST_CASE("classical optimum approaches 1/e") {
    const ThresholdOptimum best = optimize_threshold(ExactFamily::classical(), 1000);
    CHECK(std::abs(best.value - kInvE) <= 0.01);
    CHECK(std::abs(best.m / 1000.0 - kInvE) <= 0.01);

    const ThresholdOptimum tiny = optimize_threshold(ExactFamily::classical(), 4);
    CHECK(tiny.m == 1);
    CHECK(tiny.value == doctest::Approx(11.0 / 24).epsilon(1e-14));
}

TEST_CASE("mallows max-rank two-item cases") {
    CHECK(mallows_up_exact(2, 1, 2.0) == doctest::Approx(1.0 / 3).epsilon(1e-13));
    CHECK(mallows_up_exact(2, 0, 2.0) == doctest::Approx(2.0 / 3).epsilon(1e-13));
    CHECK(mallows_down_exact(2, 1, 2.0) == doctest::Approx(2.0 / 3).epsilon(1e-13));
    CHECK(mallows_down_exact(2, 0, 2.0) == doctest::Approx(1.0 / 3).epsilon(1e-13));
    CHECK_THROWS_AS(mallows_up_exact(5, 2, -1.0), BadParameter);
    CHECK_THROWS_AS(mallows_up_exact(5, 5, 2.0), BadThreshold);
}

TEST_CASE("q -> 1 recovers the classical values") {
    for (const int n : {3, 10, 57}) {
        for (int m = 0; m <= n - 1; m += 3) {
            const double classical = classical_exact(n, m);
            for (const double q : {1.0 - 1e-8, 1.0 + 1e-8}) {
                CHECK(std::abs(mallows_up_exact(n, m, q) - classical) <= 1e-6);
                CHECK(std::abs(mallows_down_exact(n, m, q) - classical) <= 1e-6);
            }
            CHECK(mallows_up_exact(n, m, 1.0) == classical);
            CHECK(mallows_down_exact(n, m, 1.0) == classical);
        }
    }
}

TEST_CASE("luce-inv min-rank values") {
    CHECK(luce_inv_down_exact(4, 1, WeightVector::unit(4)) ==
          doctest::Approx(11.0 / 24).epsilon(1e-14));
    CHECK(luce_inv_down_exact(2, 1, WeightVector({1.0, 3.0})) ==
          doctest::Approx(0.75).epsilon(1e-14));
    const WeightVector w({2.0, 5.0, 3.0});
    CHECK(luce_inv_down_exact(3, 0, w) == doctest::Approx(0.2).epsilon(1e-14));
    CHECK_THROWS_AS(luce_inv_down_exact(4, 0, w), BadParameter);
}

TEST_CASE("sweeps agree with the single-point evaluators") {
    const WeightVector w = WeightVector::sukhatme(40);
    for (const int n : {2, 7, 40}) {
        const auto classical = classical_sweep(n);
        for (int m = 0; m < n; ++m)
            CHECK(classical[static_cast<std::size_t>(m)] ==
                  doctest::Approx(classical_exact(n, m)).epsilon(1e-13));
        for (const double q : {0.3, 0.95, 1.05, 3.0}) {
            const auto up = mallows_up_sweep(n, q);
            const auto down = mallows_down_sweep(n, q);
            for (int m = 0; m < n; ++m) {
                CHECK(up[static_cast<std::size_t>(m)] ==
                      doctest::Approx(mallows_up_exact(n, m, q)).epsilon(1e-13));
                CHECK(down[static_cast<std::size_t>(m)] ==
                      doctest::Approx(mallows_down_exact(n, m, q)).epsilon(1e-13));
            }
        }
    }
    const auto luce = luce_inv_down_sweep(40, w);
    for (int m = 0; m < 40; ++m)
        CHECK(luce[static_cast<std::size_t>(m)] ==
              doctest::Approx(luce_inv_down_exact(40, m, w)).epsilon(1e-13));
}

TEST_CASE("closed forms match the enumeration oracle on a spot grid") {
    for (const int n : {2, 5, 7}) {
        for (int m = 0; m <= n - 1; ++m) {
            for (const double q : {0.7, 1.5}) {
                const ModelSpec model = ModelSpec::mallows(n, q);
                CHECK(std::abs(mallows_up_exact(n, m, q) -
                               exact_success_by_enumeration(model, m, RankDirection::Max)) <=
                      1e-12);
                CHECK(std::abs(mallows_down_exact(n, m, q) -
                               exact_success_by_enumeration(model, m, RankDirection::Min)) <=
                      1e-12);
            }
            const WeightVector w = WeightVector::geometric(n, 0.6);
            CHECK(std::abs(luce_inv_down_exact(n, m, w) -
                           exact_success_by_enumeration(ModelSpec::luce_inv(w), m,
                                                        RankDirection::Min)) <= 1e-12);
        }
    }
}

TEST_CASE("geometric-weight inverse-Luce coincides with Mallows min-rank") {
    for (const int n : {2, 17, 50, 200}) {
        for (const double q : {0.5, 0.9, 1.1, 2.0}) {
            const auto luce = luce_inv_down_sweep(n, WeightVector::geometric(n, q));
            const auto mallows = mallows_down_sweep(n, q);
            for (int m = 0; m < n; ++m)
                CHECK(std::abs(luce[static_cast<std::size_t>(m)] -
                               mallows[static_cast<std::size_t>(m)]) <= 1e-10);
        }
    }
}

TEST_CASE("min-rank at q equals max-rank at 1/q") {
    for (const int n : {2, 17, 50, 200}) {
        for (const double q : {0.5, 0.9, 1.1, 2.0}) {
            const auto down = mallows_down_sweep(n, q);
            const auto up = mallows_up_sweep(n, 1.0 / q);
            for (int m = 0; m < n; ++m)
                CHECK(std::abs(down[static_cast<std::size_t>(m)] -
                               up[static_cast<std::size_t>(m)]) <= 1e-10);
        }
    }
}

TEST_CASE("optimize_threshold returns the smallest argmax") {
    // flat sweep: everything ties, index 0 wins
    CHECK(best_threshold(std::vector<double>{0.25, 0.25, 0.25}).m == 0);
    CHECK(best_threshold(std::vector<double>{0.1, 0.4, 0.4}).m == 1);

    const ThresholdOptimum fixed = optimize_threshold(ExactFamily::mallows_up(2.0), 50);
    CHECK(fixed.m == 0);
    CHECK(std::abs(fixed.value - 0.5) <= 1e-6);
}

TEST_CASE("sukhatme optima at n=10000") {
    const int n = 10000;
    const auto standard =
        optimize_threshold(ExactFamily::luce_inv_down(WeightVector::sukhatme(n)), n);
    const auto reversed =
        optimize_threshold(ExactFamily::luce_inv_down(WeightVector::reverse_sukhatme(n)), n);
    CHECK(std::abs(standard.m / static_cast<double>(n) - 0.204940) <= 0.005);
    CHECK(std::abs(reversed.m / static_cast<double>(n) - 0.606531) <= 0.005);
    CHECK(std::abs(standard.value - kInvE) <= 0.005);
    CHECK(std::abs(reversed.value - kInvE) <= 0.005);
}

TEST_CASE("tail sums") {
    // sum_{j>=1} 1/(2^j - 1), brute-forced here as the oracle
    double brute = 0.0;
    for (int j = 1; j <= 100; ++j) brute += 1.0 / (std::pow(2.0, j) - 1.0);
    CHECK(tail_sum(2.0, 1) == doctest::Approx(brute).epsilon(1e-13));
    CHECK(tail_sum(2.0, 1) == doctest::Approx(1.6066951524152917).epsilon(1e-12));

    // the q<1 series is the same sum re-indexed
    CHECK(tail_sum(0.5, 1) == tail_sum(2.0, 1));

    // brute force across starting points and parameters
    for (const double q : {1.2, 3.0}) {
        for (int m = 1; m <= 12; m += 3) {
            double reference = 0.0;
            for (int j = m; j <= 4000; ++j) reference += 1.0 / std::expm1(j * std::log(q));
            CHECK(tail_sum(q, m) == doctest::Approx(reference).epsilon(1e-12));
        }
    }
    for (const double q : {0.25, 0.8}) {
        for (int m = 1; m <= 12; m += 3) {
            double reference = 0.0;
            for (int j = m; j <= 4000; ++j) {
                const double p = std::pow(q, j);
                reference += p / (1.0 - p);
            }
            CHECK(tail_sum(q, m) == doctest::Approx(reference).epsilon(1e-12));
        }
    }

    for (int m = 1; m < 10; ++m) CHECK(tail_sum(2.0, m + 1) < tail_sum(2.0, m));
    CHECK_THROWS_AS(tail_sum(1.0, 1), BadParameter);
    CHECK_THROWS_AS(tail_sum(2.0, 0), BadParameter);
}

TEST_CASE("every family clears the 1/e floor at n=2000") {
    const int n = 2000;
    const double floor = kInvE - 0.02;
    for (const double q : {0.3, 0.7, 1.5, 3.0}) {
        CHECK(best_threshold(mallows_up_sweep(n, q)).value >= floor);
        CHECK(best_threshold(mallows_down_sweep(n, q)).value >= floor);
    }
    for (const auto& w : {WeightVector::unit(n), WeightVector::geometric(n, 0.99),
                          WeightVector::sukhatme(n), WeightVector::reverse_sukhatme(n)}) {
        CHECK(best_threshold(luce_inv_down_sweep(n, w)).value >= floor);
    }
}

TEST_CASE("family parsing") {
    CHECK(ExactFamily::parse("classical", std::nullopt, std::nullopt).name() == "classical");
    CHECK(ExactFamily::parse("mallows-up", 2.0, std::nullopt).q() == 2.0);
    CHECK_THROWS_AS(ExactFamily::parse("mallows-up", std::nullopt, std::nullopt), ParseError);
    CHECK_THROWS_AS(ExactFamily::parse("luce-inv-down", std::nullopt, std::nullopt), ParseError);
    CHECK_THROWS_AS(ExactFamily::parse("nope", std::nullopt, std::nullopt), ParseError);
}
