#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>

#include "stopsmith/closed_forms.hpp"
#include "stopsmith/engine.hpp"
#include "test_util.hpp"

using namespace stopsmith;
using test_util::for_each_permutation;
using test_util::perm;

namespace {

// Direct transcription of the success event: some j > m holds the best
// item while the best of the first j-1 items already appeared within the
// first m. Used as an independent check of the scan in
// run_threshold_strategy.
bool union_event_member(const Permutation& p, int m, RankDirection dir) {
    const int n = p.size();
    const std::int32_t best = dir == RankDirection::Min ? 1 : static_cast<std::int32_t>(n);
    if (m == 0) return p.at(1) == best;
    auto prefix_best = [&](int upto) {
        std::int32_t b = p.at(1);
        for (int i = 2; i <= upto; ++i)
            b = dir == RankDirection::Min ? std::min(b, p.at(i)) : std::max(b, p.at(i));
        return b;
    };
    for (int j = m + 1; j <= n; ++j) {
        if (p.at(j) == best && prefix_best(j - 1) == prefix_best(m)) return true;
    }
    return false;
}

}  // namespace

TEST_CASE("threshold strategy on hand-traced inputs") {
    const StrategyOutcome a = run_threshold_strategy(perm({3, 1, 4, 2}), 1, RankDirection::Min);
    CHECK(a.selected_index == 2);
    CHECK(a.success);

    const StrategyOutcome b = run_threshold_strategy(Permutation::identity(5), 0, RankDirection::Min);
    CHECK(b.selected_index == 1);
    CHECK(b.success);

    const StrategyOutcome c = run_threshold_strategy(perm({1, 3, 2}), 1, RankDirection::Min);
    CHECK(c.selected_index == 3);  // no record after the cutoff: forced acceptance
    CHECK_FALSE(c.success);

    CHECK_THROWS_AS(run_threshold_strategy(perm({1, 2, 3}), 3, RankDirection::Min), BadThreshold);
    CHECK_THROWS_AS(run_threshold_strategy(perm({1, 2, 3}), -1, RankDirection::Min), BadThreshold);
}

TEST_CASE("strategy success coincides with the union-event predicate, n<=6") {
    for (int n = 1; n <= 6; ++n) {
        for (int m = 0; m <= n - 1; ++m) {
            for (const auto dir : {RankDirection::Min, RankDirection::Max}) {
                for_each_permutation(n, [&](const Permutation& p) {
                    CHECK(run_threshold_strategy(p, m, dir).success ==
                          union_event_member(p, m, dir));
                });
            }
        }
    }
}

TEST_CASE("exact success by enumeration") {
    CHECK(exact_success_by_enumeration(ModelSpec::mallows(2, 2.0), 1, RankDirection::Min) ==
          doctest::Approx(2.0 / 3).epsilon(1e-14));
    CHECK(exact_success_by_enumeration(ModelSpec::uniform(4), 1, RankDirection::Min) ==
          doctest::Approx(11.0 / 24).epsilon(1e-14));
    CHECK(exact_success_by_enumeration(ModelSpec::luce_inv(WeightVector({1.0, 3.0})), 1,
                                       RankDirection::Min) == doctest::Approx(0.75).epsilon(1e-14));
    CHECK_THROWS_AS(exact_success_by_enumeration(ModelSpec::uniform(10), 1, RankDirection::Min),
                    TooLarge);
}

TEST_CASE("monte carlo matches enumeration within 4 standard errors") {
    const auto est = monte_carlo_success(ModelSpec::uniform(4), 1, RankDirection::Min,
                                         1000000, 1729);
    CHECK(std::abs(est.p_hat - 11.0 / 24) <= 4.0 * est.std_err);
    CHECK(est.trials == 1000000);
    CHECK(est.successes > 0);
    CHECK(est.std_err == doctest::Approx(std::sqrt(est.p_hat * (1 - est.p_hat) / 1e6)));

    const auto small = monte_carlo_success(ModelSpec::mallows(2, 2.0), 0, RankDirection::Min,
                                           200000, 7);
    CHECK(std::abs(small.p_hat - 1.0 / 3) <= 4.0 * small.std_err);
}

TEST_CASE("single-trial estimates are 0 or 1") {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        const auto est =
            monte_carlo_success(ModelSpec::uniform(5), 2, RankDirection::Min, 1, seed);
        CHECK((est.p_hat == 0.0 || est.p_hat == 1.0));
        CHECK(est.std_err == 0.0);
    }
}

TEST_CASE("monte carlo is reproducible and worker-count independent") {
    const ModelSpec spec = ModelSpec::mallows(6, 0.7);
    const auto a = monte_carlo_success(spec, 2, RankDirection::Min, 100000, 99, 2);
    const auto b = monte_carlo_success(spec, 2, RankDirection::Min, 100000, 99, 2);
    const auto c = monte_carlo_success(spec, 2, RankDirection::Min, 100000, 99, 1);
    const auto d = monte_carlo_success(spec, 2, RankDirection::Min, 100000, 99, 5);
    CHECK(a.successes == b.successes);
    CHECK(a.successes == c.successes);
    CHECK(a.successes == d.successes);
}

TEST_CASE("record joint law for the uniform model at n=3") {
    const RecordJointLaw law = record_joint_law(ModelSpec::uniform(3), RankDirection::Min);
    const auto marginal = law.marginals();
    CHECK(marginal[0] == doctest::Approx(0.5).epsilon(1e-14));        // P(U_2=1)
    CHECK(marginal[1] == doctest::Approx(1.0 / 3).epsilon(1e-14));    // P(U_3=1)
    CHECK(law.probability(0b11) == doctest::Approx(1.0 / 6).epsilon(1e-14));  // only 321
    CHECK(independence_defect(ModelSpec::uniform(3), RankDirection::Min) <= 1e-14);
}

TEST_CASE("inverse-Luce running-min records have marginals theta_j / prefix_j") {
    for (int n = 2; n <= 6; ++n) {
        for (const auto& w : {WeightVector::geometric(n, 0.6), WeightVector::sukhatme(n),
                              WeightVector::reverse_sukhatme(n)}) {
            const auto marginal =
                record_joint_law(ModelSpec::luce_inv(w), RankDirection::Min).marginals();
            for (int j = 2; j <= n; ++j) {
                CHECK(marginal[static_cast<std::size_t>(j) - 2] ==
                      doctest::Approx(w.at(j) / w.prefix()[static_cast<std::size_t>(j)])
                          .epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("independence holds for Mallows and inverse-Luce/min, fails for Luce") {
    CHECK(independence_defect(ModelSpec::mallows(4, 0.5), RankDirection::Min) <= 1e-12);
    CHECK(independence_defect(ModelSpec::mallows(5, 3.0), RankDirection::Max) <= 1e-12);
    CHECK(independence_defect(ModelSpec::luce_inv(WeightVector({1, 2, 3, 4})),
                              RankDirection::Min) <= 1e-12);

    const WeightVector w123({1.0, 2.0, 3.0});
    CHECK(independence_defect(ModelSpec::luce(w123), RankDirection::Max) > 1e-4);
    CHECK(independence_defect(ModelSpec::luce(w123), RankDirection::Min) > 1e-4);
    CHECK(independence_defect(ModelSpec::luce_inv(w123), RankDirection::Max) > 1e-4);
    CHECK_THROWS_AS(record_joint_law(ModelSpec::uniform(8), RankDirection::Min), TooLarge);
}

TEST_CASE("odds algorithm basics") {
    // classical records p_j = 1/j at n=4: odds 1, 1/2, 1/3
    const std::vector<double> uniform4 = {0.5, 1.0 / 3, 0.25};
    const auto sums = odds_suffix_sums(uniform4);
    CHECK(sums[2] == doctest::Approx(1.0 / 3).epsilon(1e-14));
    CHECK(sums[1] == doctest::Approx(5.0 / 6).epsilon(1e-14));
    CHECK(sums[0] == doctest::Approx(11.0 / 6).epsilon(1e-14));
    CHECK(bruss_odds_threshold(uniform4) == 1);

    CHECK(bruss_odds_threshold(std::vector<double>{0.9}) == 1);

    // suffix odds below 1 everywhere: the sure record at position 1 wins
    CHECK(bruss_odds_threshold(std::vector<double>{0.2, 0.1}) == 0);

    CHECK_THROWS_AS(bruss_odds_threshold(std::vector<double>{0.5, 0.0}), BadProbability);
    CHECK_THROWS_AS(bruss_odds_threshold(std::vector<double>{1.1}), BadProbability);
}

TEST_CASE("odds cutoff for uniform records matches the classical optimum") {
    for (const int n : {4, 20, 137, 1000}) {
        std::vector<double> probs;
        for (int j = 2; j <= n; ++j) probs.push_back(1.0 / j);
        const int odds_m = bruss_odds_threshold(probs);
        const ThresholdOptimum best = optimize_threshold(ExactFamily::classical(), n);
        CHECK(odds_m == best.m);
        if (n == 1000) CHECK(std::abs(odds_m - 1000.0 * std::exp(-1.0)) <= 2.0);
    }
}

TEST_CASE("thread count resolution") {
    CHECK(resolve_thread_count(3) == 3);
    setenv("STOPSMITH_THREADS", "2", 1);
    CHECK(resolve_thread_count(0) == 2);
    setenv("STOPSMITH_THREADS", "0", 1);
    CHECK(resolve_thread_count(0) >= 1);
    unsetenv("STOPSMITH_THREADS");
    CHECK(resolve_thread_count(0) >= 1);
}
