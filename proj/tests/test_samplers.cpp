#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <map>

#include "stopsmith/models.hpp"
#include "test_util.hpp"

using namespace stopsmith;

namespace {

// 4-sigma binomial check of an empirical frequency against p.
void check_frequency(std::int64_t hits, std::int64_t draws, double p, const char* what) {
    const double p_hat = static_cast<double>(hits) / static_cast<double>(draws);
    const double sigma = std::sqrt(p * (1.0 - p) / static_cast<double>(draws));
    INFO(what << ": p_hat=" << p_hat << " p=" << p << " sigma=" << sigma);
    CHECK(std::abs(p_hat - p) <= 4.0 * sigma);
}

double empirical_tv(const SamplerSpec& sampler, const ModelSpec& law, std::int64_t draws,
                    std::uint64_t seed) {
    std::map<std::vector<std::int32_t>, std::pair<double, std::int64_t>> table;
    enumerate_support(law, [&](const Permutation& p, double pmf) {
        table[p.values()] = {pmf, 0};
    });
    Rng rng(seed);
    for (std::int64_t t = 0; t < draws; ++t) ++table.at(sampler.sample(rng).values()).second;
    double tv = 0.0;
    for (const auto& [_, cell] : table)
        tv += std::abs(cell.first - static_cast<double>(cell.second) / static_cast<double>(draws));
    return tv / 2.0;
}

}  // namespace

TEST_CASE("n=1 samplers are deterministic identities") {
    Rng rng(1);
    CHECK(mallows_sample(1, 0.5, rng) == Permutation::identity(1));
    CHECK(luce_sample(WeightVector::unit(1), rng) == Permutation::identity(1));
    CHECK(exponential_reduction_sample(WeightVector::unit(1), rng) == Permutation::identity(1));
    CHECK(sukhatme_gap_sample(1, rng) == Permutation::identity(1));
    CHECK(p_shifted_sample(WeightVector::unit(1), rng) == Permutation::identity(1));
}

TEST_CASE("identical seeds reproduce identical streams") {
    const WeightVector w({1.0, 2.0, 3.0, 4.0, 5.0});
    for (const auto kind : {SamplerKind::Mallows, SamplerKind::Luce, SamplerKind::LuceInv,
                            SamplerKind::PShifted, SamplerKind::Uniform, SamplerKind::ExpReduce,
                            SamplerKind::SukhatmeGap}) {
        const SamplerSpec sampler = SamplerSpec::make(
            kind, 5, 1.3,
            kind == SamplerKind::Mallows || kind == SamplerKind::Uniform ||
                    kind == SamplerKind::SukhatmeGap
                ? std::nullopt
                : std::optional<WeightVector>(w));
        Rng a(42), b(42), c(43);
        bool any_difference = false;
        for (int i = 0; i < 50; ++i) {
            const Permutation pa = sampler.sample(a);
            CHECK(pa == sampler.sample(b));
            if (!(pa == sampler.sample(c))) any_difference = true;
        }
        CHECK(any_difference);  // a different seed actually changes the stream
    }
}

TEST_CASE("luce first pick has weight-proportional marginals") {
    const WeightVector w({1.0, 2.0, 3.0, 4.0});
    const std::int64_t draws = 100000;
    Rng rng(11);
    std::int64_t hits[4] = {0, 0, 0, 0};
    for (std::int64_t t = 0; t < draws; ++t) ++hits[luce_sample(w, rng).at(1) - 1];
    for (int j = 1; j <= 4; ++j)
        check_frequency(hits[j - 1], draws, j / 10.0, "luce sigma_1 marginal");
}

TEST_CASE("p-shifted first value marginals are 1/10, 2/10, 3/10, 4/10") {
    const WeightVector w({1.0, 2.0, 3.0, 4.0});
    const std::int64_t draws = 100000;
    Rng rng(12);
    std::int64_t hits[4] = {0, 0, 0, 0};
    for (std::int64_t t = 0; t < draws; ++t) ++hits[p_shifted_sample(w, rng).at(1) - 1];
    for (int j = 1; j <= 4; ++j)
        check_frequency(hits[j - 1], draws, j / 10.0, "p-shifted sigma_1 marginal");
}

TEST_CASE("unit-weight p-shifted is uniform") {
    const double tv = empirical_tv(
        SamplerSpec::make(SamplerKind::PShifted, 4, 1.0, WeightVector::unit(4)),
        ModelSpec::uniform(4), 200000, 13);
    CHECK(tv < 0.01);
}

TEST_CASE("mallows two-item marginal is q/(1+q)") {
    for (const double q : {0.5, 1.0, 2.0}) {
        const std::int64_t draws = 100000;
        Rng rng(14);
        std::int64_t hits = 0;
        for (std::int64_t t = 0; t < draws; ++t)
            if (mallows_sample(2, q, rng) == test_util::perm({2, 1})) ++hits;
        check_frequency(hits, draws, q / (1.0 + q), "mallows P(21)");
    }
}

TEST_CASE("mallows empirical law matches the pmf at n=4") {
    for (const double q : {0.5, 2.0}) {
        const double tv = empirical_tv(
            SamplerSpec::make(SamplerKind::Mallows, 4, q, std::nullopt),
            ModelSpec::mallows(4, q), 200000, 15);
        CHECK(tv < 0.01);
    }
}

TEST_CASE("exponential reduction puts value 1 at j with probability theta_j / total") {
    const WeightVector w({1.0, 2.0, 3.0});
    const std::int64_t draws = 100000;
    Rng rng(16);
    std::int64_t hits[3] = {0, 0, 0};
    for (std::int64_t t = 0; t < draws; ++t) {
        const Permutation p = exponential_reduction_sample(w, rng);
        for (int j = 1; j <= 3; ++j)
            if (p.at(j) == 1) ++hits[j - 1];
    }
    for (int j = 1; j <= 3; ++j)
        check_frequency(hits[j - 1], draws, w.at(j) / w.total(), "argmin marginal");
}

TEST_CASE("sukhatme gaps match the inverse-Luce law with weights n+1-j") {
    const int n = 4;
    const std::int64_t draws = 200000;
    Rng rng(17);
    std::int64_t hits[4] = {0, 0, 0, 0};
    for (std::int64_t t = 0; t < draws; ++t) {
        const Permutation p = sukhatme_gap_sample(n, rng);
        for (int j = 1; j <= n; ++j)
            if (p.at(j) == 1) ++hits[j - 1];
    }
    for (int j = 1; j <= n; ++j)
        check_frequency(hits[j - 1], draws, (n + 1.0 - j) / (n * (n + 1.0) / 2.0),
                        "gap argmin marginal");

    const double tv = empirical_tv(
        SamplerSpec::make(SamplerKind::SukhatmeGap, n, 1.0, std::nullopt),
        ModelSpec::luce_inv(WeightVector::sukhatme(n)), 200000, 18);
    CHECK(tv < 0.01);
}

TEST_CASE("mean inversions per item approach q/(1-q) at q=0.5, n=500") {
    const int n = 500;
    const double q = 0.5;
    const std::int64_t samples = 100000;
    Rng rng(19);
    double mean = 0.0;
    for (std::int64_t t = 0; t < samples; ++t) {
        mean += static_cast<double>(inversion_count(mallows_sample(n, q, rng))) / n;
    }
    mean /= static_cast<double>(samples);
    CHECK(std::abs(mean - q / (1.0 - q)) <= 0.05);
}
