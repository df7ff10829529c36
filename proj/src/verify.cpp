#include "stopsmith/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>

#include "stopsmith/asymptotics.hpp"
#include "stopsmith/closed_forms.hpp"
#include "stopsmith/engine.hpp"
#include "stopsmith/log_space.hpp"
#include "stopsmith/models.hpp"

namespace stopsmith {

VerifyLevel parse_verify_level(const std::string& text) {
    if (text == "quick") return VerifyLevel::Quick;
    if (text == "full") return VerifyLevel::Full;
    throw ParseError("unknown level '" + text + "' (expected quick or full)");
}

namespace {

constexpr double kQGrid[] = {0.3, 0.7, 1.5, 3.0};

std::string fmt(double x) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.3g", x);
    return buffer;
}

std::vector<std::pair<std::string, WeightVector>> weight_grid(int n) {
    std::vector<double> linear(static_cast<std::size_t>(n));
    for (int j = 1; j <= n; ++j) linear[static_cast<std::size_t>(j) - 1] = j;
    return {{"unit", WeightVector::unit(n)},
            {"geom(0.6)", WeightVector::geometric(n, 0.6)},
            {"geom(2)", WeightVector::geometric(n, 2.0)},
            {"sukhatme", WeightVector::sukhatme(n)},
            {"rev-sukhatme", WeightVector::reverse_sukhatme(n)},
            {"linear", WeightVector(std::move(linear))}};
}

struct CheckOutcome {
    bool pass = true;
    std::string detail;
};

using CheckFn = std::function<CheckOutcome(VerifyLevel, std::uint64_t, int)>;

// 1. Every closed form agrees with the brute-force enumeration oracle.
CheckOutcome check_oracle_equivalence(VerifyLevel level, std::uint64_t, int) {
    const int n_max = level == VerifyLevel::Full ? 7 : 5;
    const double tol = 1e-12;
    double worst = 0.0;
    std::string worst_at = "-";
    auto note = [&](double gap, const std::string& where) {
        if (gap > worst) {
            worst = gap;
            worst_at = where;
        }
    };
    for (int n = 2; n <= n_max; ++n) {
        for (const double q : kQGrid) {
            const ModelSpec model = ModelSpec::mallows(n, q);
            for (int m = 0; m <= n - 1; ++m) {
                note(std::abs(mallows_up_exact(n, m, q) -
                              exact_success_by_enumeration(model, m, RankDirection::Max)),
                     "mallows-up n=" + std::to_string(n) + " q=" + fmt(q));
                note(std::abs(mallows_down_exact(n, m, q) -
                              exact_success_by_enumeration(model, m, RankDirection::Min)),
                     "mallows-down n=" + std::to_string(n) + " q=" + fmt(q));
            }
        }
        for (const auto& [label, w] : weight_grid(n)) {
            const ModelSpec model = ModelSpec::luce_inv(w);
            for (int m = 0; m <= n - 1; ++m)
                note(std::abs(luce_inv_down_exact(n, m, w) -
                              exact_success_by_enumeration(model, m, RankDirection::Min)),
                     "luce-inv-down n=" + std::to_string(n) + " w=" + label);
        }
        const ModelSpec uniform = ModelSpec::uniform(n);
        for (int m = 0; m <= n - 1; ++m) {
            note(std::abs(classical_exact(n, m) -
                          exact_success_by_enumeration(uniform, m, RankDirection::Min)),
                 "classical/min n=" + std::to_string(n));
            note(std::abs(classical_exact(n, m) -
                          exact_success_by_enumeration(uniform, m, RankDirection::Max)),
                 "classical/max n=" + std::to_string(n));
        }
    }
    return {worst <= tol, "max gap " + fmt(worst) + " at " + worst_at +
                              " (tol " + fmt(tol) + ")"};
}

// 2. Inverse-Luce with geometric weights reproduces the Mallows formula.
CheckOutcome check_mallows_luce_coincidence(VerifyLevel level, std::uint64_t, int) {
    const int n_max = level == VerifyLevel::Full ? 200 : 50;
    const double tol = 1e-10;
    double worst = 0.0;
    for (int n = 2; n <= n_max; ++n) {
        for (const double q : {0.5, 0.9, 1.1, 2.0}) {
            const auto mallows = mallows_down_sweep(n, q);
            const auto luce = luce_inv_down_sweep(n, WeightVector::geometric(n, q));
            for (int m = 0; m < n; ++m)
                worst = std::max(worst, std::abs(mallows[static_cast<std::size_t>(m)] -
                                                 luce[static_cast<std::size_t>(m)]));
        }
    }
    return {worst <= tol, "max gap " + fmt(worst) + " over n<=" + std::to_string(n_max) +
                              " (tol " + fmt(tol) + ")"};
}

// 3. Min-rank at q equals max-rank at 1/q.
CheckOutcome check_duality(VerifyLevel level, std::uint64_t, int) {
    const int n_max = level == VerifyLevel::Full ? 200 : 50;
    const double tol = 1e-10;
    double worst = 0.0;
    for (int n = 2; n <= n_max; ++n) {
        for (const double q : {0.5, 0.9, 1.1, 2.0}) {
            const auto down = mallows_down_sweep(n, q);
            const auto up = mallows_up_sweep(n, 1.0 / q);
            for (int m = 0; m < n; ++m)
                worst = std::max(worst, std::abs(down[static_cast<std::size_t>(m)] -
                                                 up[static_cast<std::size_t>(m)]));
        }
    }
    return {worst <= tol, "max gap " + fmt(worst) + " over n<=" + std::to_string(n_max) +
                              " (tol " + fmt(tol) + ")"};
}

// 4. Uniform baseline: cutoff fraction near 1/e, value near 1/e.
CheckOutcome check_classical_baseline(VerifyLevel level, std::uint64_t, int) {
    const int n = level == VerifyLevel::Full ? 10000 : 1000;
    const ThresholdOptimum best = optimize_threshold(ExactFamily::classical(), n);
    const double fraction = static_cast<double>(best.m) / n;
    const bool pass =
        fraction >= 0.36 && fraction <= 0.38 && std::abs(best.value - kInvE) <= 0.01;
    return {pass, "n=" + std::to_string(n) + ": m*/n=" + fmt(fraction) +
                      ", value=" + fmt(best.value) + " vs 1/e=" + fmt(kInvE)};
}

// 5. Sukhatme and reverse-Sukhatme optimal fractions and values.
CheckOutcome check_sukhatme_limits(VerifyLevel level, std::uint64_t, int) {
    const int n = level == VerifyLevel::Full ? 100000 : 10000;
    const auto standard =
        optimize_threshold(ExactFamily::luce_inv_down(WeightVector::sukhatme(n)), n);
    const auto reversed =
        optimize_threshold(ExactFamily::luce_inv_down(WeightVector::reverse_sukhatme(n)), n);
    const double f_std = static_cast<double>(standard.m) / n;
    const double f_rev = static_cast<double>(reversed.m) / n;
    const bool pass = std::abs(f_std - 0.204887) <= 0.005 &&
                      std::abs(f_rev - 0.606531) <= 0.005 &&
                      std::abs(standard.value - kInvE) <= 0.005 &&
                      std::abs(reversed.value - kInvE) <= 0.005;
    return {pass, "standard m*/n=" + fmt(f_std) + " value=" + fmt(standard.value) +
                      "; reverse m*/n=" + fmt(f_rev) + " value=" + fmt(reversed.value)};
}

// 6. Fixed q = 2, max-rank: immediate acceptance is optimal; value 1/2.
CheckOutcome check_fixed_q_optimum(VerifyLevel, std::uint64_t, int) {
    const ThresholdOptimum finite = optimize_threshold(ExactFamily::mallows_up(2.0), 50);
    const LimitResult limit = fixed_q_optimum(2.0, RankDirection::Max);
    const bool pass = finite.m == 0 && std::abs(finite.value - 0.5) <= 1e-6 &&
                      limit.kind == ThresholdKind::Count && limit.value == 0.0 &&
                      std::abs(limit.limit_prob - 0.5) <= 1e-6;
    return {pass, "finite m*=" + std::to_string(finite.m) + " value=" + fmt(finite.value) +
                      "; limit m*=" + fmt(limit.value) + " prob=" + fmt(limit.limit_prob)};
}

// 7. Critical window q = 1 - 1/n: cutoff fraction log(2 - 1/e), value 1/e.
CheckOutcome check_critical_window(VerifyLevel level, std::uint64_t, int) {
    const int n = level == VerifyLevel::Full ? 100000 : 20000;
    const double q = 1.0 - 1.0 / n;
    const ThresholdOptimum best = optimize_threshold(ExactFamily::mallows_up(q), n);
    const double target =
        critical_window_fraction(1.0, RankDirection::Max, WindowSign::Minus).value;
    const double fraction = static_cast<double>(best.m) / n;
    const bool pass =
        std::abs(fraction - target) <= 0.01 && std::abs(best.value - kInvE) <= 0.01;
    return {pass, "m*/n=" + fmt(fraction) + " vs " + fmt(target) +
                      "; value=" + fmt(best.value) + " vs 1/e"};
}

// 8. Monte Carlo estimates agree with enumeration at 4 standard errors;
//    reruns are bit-identical and worker-count independent.
CheckOutcome check_monte_carlo(VerifyLevel level, std::uint64_t seed, int threads) {
    const std::int64_t trials = level == VerifyLevel::Full ? 1000000 : 10000;
    struct Config {
        std::string label;
        SamplerSpec sampler;
        int m;
        RankDirection dir;
    };
    std::vector<Config> configs;
    auto add = [&](std::string label, SamplerSpec sampler, int m, RankDirection dir) {
        configs.push_back({std::move(label), std::move(sampler), m, dir});
    };
    using SK = SamplerKind;
    add("uniform n=4", SamplerSpec::make(SK::Uniform, 4, 1.0, std::nullopt), 1,
        RankDirection::Min);
    add("uniform n=7", SamplerSpec::make(SK::Uniform, 7, 1.0, std::nullopt), 2,
        RankDirection::Max);
    add("mallows q=2 n=2", SamplerSpec::make(SK::Mallows, 2, 2.0, std::nullopt), 0,
        RankDirection::Min);
    add("mallows q=0.7 n=6", SamplerSpec::make(SK::Mallows, 6, 0.7, std::nullopt), 2,
        RankDirection::Min);
    add("mallows q=1.5 n=6", SamplerSpec::make(SK::Mallows, 6, 1.5, std::nullopt), 1,
        RankDirection::Max);
    add("mallows q=3 n=5", SamplerSpec::make(SK::Mallows, 5, 3.0, std::nullopt), 0,
        RankDirection::Max);
    add("luce-inv geom(0.6) n=5",
        SamplerSpec::make(SK::LuceInv, 5, 1.0, WeightVector::geometric(5, 0.6)), 1,
        RankDirection::Min);
    add("luce-inv sukhatme n=6",
        SamplerSpec::make(SK::LuceInv, 6, 1.0, WeightVector::sukhatme(6)), 2,
        RankDirection::Min);
    add("luce-inv (1,3) n=2",
        SamplerSpec::make(SK::LuceInv, 2, 1.0, WeightVector({1.0, 3.0})), 1,
        RankDirection::Min);
    add("luce (1,2,3,4) n=4",
        SamplerSpec::make(SK::Luce, 4, 1.0, WeightVector({1.0, 2.0, 3.0, 4.0})), 1,
        RankDirection::Min);
    add("p-shifted (1..5) n=5",
        SamplerSpec::make(SK::PShifted, 5, 1.0, WeightVector({1, 2, 3, 4, 5})), 2,
        RankDirection::Max);
    add("exp-reduce rev-sukhatme n=7",
        SamplerSpec::make(SK::ExpReduce, 7, 1.0, WeightVector::reverse_sukhatme(7)), 3,
        RankDirection::Min);

    double worst_sigma = 0.0;
    std::string worst_at = "-";
    int retries = 0;
    for (std::size_t i = 0; i < configs.size(); ++i) {
        const auto& cfg = configs[i];
        const double exact =
            exact_success_by_enumeration(cfg.sampler.law(), cfg.m, cfg.dir);
        const std::uint64_t config_seed = seed + 101 * i;
        MonteCarloEstimate est =
            monte_carlo_success(cfg.sampler, cfg.m, cfg.dir, trials, config_seed, threads);
        if (std::abs(est.p_hat - exact) > 4.0 * est.std_err) {
            ++retries;  // one reseeded retry per configuration
            est = monte_carlo_success(cfg.sampler, cfg.m, cfg.dir, trials,
                                      config_seed + 7919, threads);
        }
        const double sigma =
            est.std_err > 0 ? std::abs(est.p_hat - exact) / est.std_err : 0.0;
        if (sigma > worst_sigma) {
            worst_sigma = sigma;
            worst_at = cfg.label;
        }
        if (sigma > 4.0)
            return {false, cfg.label + ": |p_hat-exact| = " + fmt(sigma) +
                               " sigma after retry"};
    }

    // Determinism: same seed twice, and one worker versus several.
    const auto& cfg = configs[0];
    const auto a = monte_carlo_success(cfg.sampler, cfg.m, cfg.dir, trials, seed, threads);
    const auto b = monte_carlo_success(cfg.sampler, cfg.m, cfg.dir, trials, seed, threads);
    const auto c = monte_carlo_success(cfg.sampler, cfg.m, cfg.dir, trials, seed, 1);
    const auto d = monte_carlo_success(cfg.sampler, cfg.m, cfg.dir, trials, seed, 4);
    if (a.successes != b.successes || a.p_hat != b.p_hat)
        return {false, "estimate not reproducible under a fixed seed"};
    if (c.successes != d.successes)
        return {false, "estimate depends on the worker count"};

    return {true, "12 configs x " + std::to_string(trials) + " trials, worst " +
                      fmt(worst_sigma) + " sigma (" + worst_at + "), " +
                      std::to_string(retries) + " retries"};
}

// 9. Record indicators: independent for Mallows (both directions) and
//    inverse-Luce (min); dependent for the plain Luce model.
CheckOutcome check_independence(VerifyLevel level, std::uint64_t, int) {
    const int n_max = level == VerifyLevel::Full ? 6 : 5;
    const double tol = 1e-12;
    double worst = 0.0;
    std::string worst_at = "-";
    for (int n = 2; n <= n_max; ++n) {
        for (const double q : kQGrid) {
            const ModelSpec model = ModelSpec::mallows(n, q);
            for (const auto dir : {RankDirection::Min, RankDirection::Max}) {
                const double defect = independence_defect(model, dir);
                if (defect > worst) {
                    worst = defect;
                    worst_at = "mallows q=" + fmt(q) + " n=" + std::to_string(n) + "/" +
                               direction_name(dir);
                }
            }
        }
        for (const auto& [label, w] : weight_grid(n)) {
            const double defect =
                independence_defect(ModelSpec::luce_inv(w), RankDirection::Min);
            if (defect > worst) {
                worst = defect;
                worst_at = "luce-inv " + label + " n=" + std::to_string(n);
            }
        }
    }
    if (worst > tol)
        return {false, "independent family has defect " + fmt(worst) + " at " + worst_at};

    const double dependent_defect = independence_defect(
        ModelSpec::luce(WeightVector({1.0, 2.0, 3.0})), RankDirection::Max);
    if (dependent_defect <= 1e-4)
        return {false, "luce/max n=3 defect " + fmt(dependent_defect) +
                           " not above 1e-4"};
    return {true, "independent defect <= " + fmt(worst) + "; luce/max defect " +
                      fmt(dependent_defect)};
}

// 10. Each sampler's empirical law is close to its pmf in total variation.
CheckOutcome check_sampler_laws(VerifyLevel level, std::uint64_t seed, int) {
    const int n = level == VerifyLevel::Full ? 5 : 4;
    const std::int64_t draws = level == VerifyLevel::Full ? 1000000 : 100000;
    const double tol = level == VerifyLevel::Full ? 0.005 : 0.02;

    std::vector<double> linear_w(static_cast<std::size_t>(n));
    for (int j = 1; j <= n; ++j) linear_w[static_cast<std::size_t>(j) - 1] = j;
    using SK = SamplerKind;
    const std::vector<std::pair<std::string, SamplerSpec>> samplers = {
        {"mallows(2)", SamplerSpec::make(SK::Mallows, n, 2.0, std::nullopt)},
        {"luce geom(0.6)",
         SamplerSpec::make(SK::Luce, n, 1.0, WeightVector::geometric(n, 0.6))},
        {"luce-inv geom(0.6)",
         SamplerSpec::make(SK::LuceInv, n, 1.0, WeightVector::geometric(n, 0.6))},
        {"p-shifted geom(2)",
         SamplerSpec::make(SK::PShifted, n, 1.0, WeightVector::geometric(n, 2.0))},
        {"exp-reduce linear",
         SamplerSpec::make(SK::ExpReduce, n, 1.0, WeightVector(linear_w))},
        {"sukhatme-gap", SamplerSpec::make(SK::SukhatmeGap, n, 1.0, std::nullopt)},
    };

    double worst = 0.0;
    std::string worst_at = "-";
    std::uint64_t stream = 0;
    for (const auto& [label, sampler] : samplers) {
        std::map<std::vector<std::int32_t>, std::pair<double, std::int64_t>> table;
        enumerate_support(sampler.law(), [&](const Permutation& p, double pmf) {
            table[p.values()] = {pmf, 0};
        });
        Rng rng = Rng::stream(seed, 777000 + stream++);
        for (std::int64_t t = 0; t < draws; ++t) {
            const Permutation p = sampler.sample(rng);
            ++table.at(p.values()).second;
        }
        double tv = 0.0;
        for (const auto& [_, cell] : table)
            tv += std::abs(cell.first -
                           static_cast<double>(cell.second) / static_cast<double>(draws));
        tv /= 2.0;
        if (tv > worst) {
            worst = tv;
            worst_at = label;
        }
    }
    return {worst <= tol, "worst TV " + fmt(worst) + " (" + worst_at + ") over S_" +
                              std::to_string(n) + ", " + std::to_string(draws) +
                              " draws (tol " + fmt(tol) + ")"};
}

// 11. The odds algorithm applied to the exact record marginals picks an
//     optimal cutoff for the independent-record families.
CheckOutcome check_odds_agreement(VerifyLevel level, std::uint64_t, int) {
    const int n_max = level == VerifyLevel::Full ? 7 : 5;
    int cases = 0;
    for (int n = 2; n <= n_max; ++n) {
        std::vector<std::pair<ModelSpec, RankDirection>> grid;
        for (const double q : kQGrid) {
            grid.emplace_back(ModelSpec::mallows(n, q), RankDirection::Min);
            grid.emplace_back(ModelSpec::mallows(n, q), RankDirection::Max);
        }
        for (const auto& [label, w] : weight_grid(n))
            grid.emplace_back(ModelSpec::luce_inv(w), RankDirection::Min);
        for (const auto& [model, dir] : grid) {
            const auto marginals = record_joint_law(model, dir).marginals();
            const int odds_m = bruss_odds_threshold(marginals);
            std::vector<double> values(static_cast<std::size_t>(n));
            for (int m = 0; m < n; ++m)
                values[static_cast<std::size_t>(m)] =
                    exact_success_by_enumeration(model, m, dir);
            const double top = *std::max_element(values.begin(), values.end());
            const bool in_argmax = values[static_cast<std::size_t>(odds_m)] >= top - 1e-12;
            ++cases;
            if (!in_argmax)
                return {false, family_name(model.family) + "/" + direction_name(dir) +
                                   " n=" + std::to_string(n) + ": odds m=" +
                                   std::to_string(odds_m) + " not in the argmax set"};
        }
    }
    return {true, std::to_string(cases) + " cases, odds cutoff always optimal"};
}

// 12. Window-fraction boundary behaviour in c.
CheckOutcome check_asymptotic_boundaries(VerifyLevel, std::uint64_t, int) {
    struct Case {
        RankDirection dir;
        WindowSign sign;
        bool first_form;
    };
    const Case cases[] = {
        {RankDirection::Max, WindowSign::Minus, true},
        {RankDirection::Min, WindowSign::Plus, true},
        {RankDirection::Max, WindowSign::Plus, false},
        {RankDirection::Min, WindowSign::Minus, false},
    };
    std::ostringstream detail;
    bool pass = true;
    for (const auto& c : cases) {
        const double near_zero = critical_window_fraction(1e-6, c.dir, c.sign).value;
        if (std::abs(near_zero - kInvE) > 1e-4) {
            pass = false;
            detail << "c=1e-6 " << direction_name(c.dir) << "/" << sign_name(c.sign)
                   << " b*=" << fmt(near_zero) << " not within 1e-4 of 1/e; ";
        }
        const double large_c = critical_window_fraction(50.0, c.dir, c.sign).value;
        const double target = c.first_form ? 1.0 : 0.0;
        if (std::abs(large_c - target) > 0.01) {
            pass = false;
            detail << "c=50 " << direction_name(c.dir) << "/" << sign_name(c.sign)
                   << " b*=" << fmt(large_c) << " not within 0.01 of " << fmt(target)
                   << "; ";
        }
    }
    if (pass) return {true, "all four windows match at c=1e-6 and c=50"};
    return {false, detail.str()};
}

const std::vector<std::pair<std::string, CheckFn>>& registry() {
    static const std::vector<std::pair<std::string, CheckFn>> checks = {
        {"oracle-equivalence", check_oracle_equivalence},
        {"mallows-luce-coincidence", check_mallows_luce_coincidence},
        {"duality", check_duality},
        {"classical-baseline", check_classical_baseline},
        {"sukhatme-limits", check_sukhatme_limits},
        {"fixed-q-optimum", check_fixed_q_optimum},
        {"critical-window", check_critical_window},
        {"monte-carlo-consistency", check_monte_carlo},
        {"independence-diagnostics", check_independence},
        {"sampler-laws", check_sampler_laws},
        {"odds-agreement", check_odds_agreement},
        {"asymptotic-boundaries", check_asymptotic_boundaries},
    };
    return checks;
}

}  // namespace

const std::vector<std::string>& verification_check_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& [name, _] : registry()) out.push_back(name);
        return out;
    }();
    return names;
}

CheckResult run_verification_check(const std::string& name, VerifyLevel level,
                                   std::uint64_t seed, int threads) {
    for (const auto& [check_name, fn] : registry()) {
        if (check_name != name) continue;
        const auto start = std::chrono::steady_clock::now();
        CheckResult result;
        result.name = name;
        try {
            const CheckOutcome outcome = fn(level, seed, threads);
            result.pass = outcome.pass;
            result.detail = outcome.detail;
        } catch (const std::exception& e) {
            result.pass = false;
            result.detail = std::string("exception: ") + e.what();
        }
        result.seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        return result;
    }
    throw BadParameter("unknown verification check '" + name + "'");
}

std::vector<CheckResult> run_verification(VerifyLevel level, std::uint64_t seed,
                                          int threads) {
    std::vector<CheckResult> results;
    for (const auto& name : verification_check_names())
        results.push_back(run_verification_check(name, level, seed, threads));
    return results;
}

}  // namespace stopsmith
