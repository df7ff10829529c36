#include "stopsmith/engine.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <thread>

#include "stopsmith/log_space.hpp"

namespace stopsmith {

StrategyOutcome run_threshold_strategy(const Permutation& p, int m, RankDirection dir) {
    const int n = p.size();
    if (m < 0 || m > n - 1)
        throw BadThreshold("threshold m = " + std::to_string(m) +
                           " outside {0.." + std::to_string(n - 1) + "}");
    const std::int32_t best_value = dir == RankDirection::Min ? 1 : static_cast<std::int32_t>(n);
    if (m == 0) return {1, p.at(1) == best_value};

    std::int32_t best_seen = p.at(1);
    for (int i = 2; i <= m; ++i) {
        const std::int32_t v = p.at(i);
        if (dir == RankDirection::Min ? v < best_seen : v > best_seen) best_seen = v;
    }
    for (int j = m + 1; j <= n; ++j) {
        const std::int32_t v = p.at(j);
        if (dir == RankDirection::Min ? v < best_seen : v > best_seen)
            return {j, v == best_value};
        best_seen = dir == RankDirection::Min ? std::min(best_seen, v)
                                              : std::max(best_seen, v);
    }
    return {n, p.at(n) == best_value};  // forced acceptance
}

int resolve_thread_count(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("STOPSMITH_THREADS")) {
        const int parsed = std::atoi(env);
        if (parsed > 0) return parsed;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

MonteCarloEstimate monte_carlo_success(const SamplerSpec& sampler, int m, RankDirection dir,
                                       std::int64_t trials, std::uint64_t seed, int threads) {
    if (trials < 1) throw BadParameter("trials must be >= 1");
    if (m < 0 || m > sampler.n - 1)
        throw BadThreshold("threshold m = " + std::to_string(m) +
                           " outside {0.." + std::to_string(sampler.n - 1) + "}");

    const std::int64_t chunks = (trials + kMonteCarloChunk - 1) / kMonteCarloChunk;
    const int workers =
        static_cast<int>(std::min<std::int64_t>(resolve_thread_count(threads), chunks));

    std::atomic<std::int64_t> next_chunk{0};
    std::atomic<std::int64_t> total_successes{0};
    auto work = [&] {
        std::int64_t local = 0;
        for (;;) {
            const std::int64_t k = next_chunk.fetch_add(1);
            if (k >= chunks) break;
            Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(k));
            const std::int64_t begin = k * kMonteCarloChunk;
            const std::int64_t end = std::min(trials, begin + kMonteCarloChunk);
            for (std::int64_t t = begin; t < end; ++t) {
                const Permutation p = sampler.sample(rng);
                if (run_threshold_strategy(p, m, dir).success) ++local;
            }
        }
        total_successes.fetch_add(local);
    };

    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int i = 0; i < workers; ++i) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }

    MonteCarloEstimate estimate;
    estimate.successes = total_successes.load();
    estimate.trials = trials;
    estimate.seed = seed;
    estimate.p_hat = static_cast<double>(estimate.successes) / static_cast<double>(trials);
    estimate.std_err =
        std::sqrt(estimate.p_hat * (1.0 - estimate.p_hat) / static_cast<double>(trials));
    return estimate;
}

MonteCarloEstimate monte_carlo_success(const ModelSpec& spec, int m, RankDirection dir,
                                       std::int64_t trials, std::uint64_t seed, int threads) {
    SamplerSpec sampler;
    switch (spec.family) {
        case ModelFamily::Mallows:
            sampler = SamplerSpec::make(SamplerKind::Mallows, spec.n, spec.q, std::nullopt);
            break;
        case ModelFamily::Luce:
            sampler = SamplerSpec::make(SamplerKind::Luce, spec.n, 1.0, spec.weights);
            break;
        case ModelFamily::LuceInv:
            sampler = SamplerSpec::make(SamplerKind::LuceInv, spec.n, 1.0, spec.weights);
            break;
        case ModelFamily::PShifted:
            sampler = SamplerSpec::make(SamplerKind::PShifted, spec.n, 1.0, spec.weights);
            break;
        case ModelFamily::Uniform:
            sampler = SamplerSpec::make(SamplerKind::Uniform, spec.n, 1.0, std::nullopt);
            break;
    }
    return monte_carlo_success(sampler, m, dir, trials, seed, threads);
}

double exact_success_by_enumeration(const ModelSpec& spec, int m, RankDirection dir) {
    if (m < 0 || m > spec.n - 1)
        throw BadThreshold("threshold m = " + std::to_string(m) +
                           " outside {0.." + std::to_string(spec.n - 1) + "}");
    KahanSum mass;
    enumerate_support(spec, [&](const Permutation& p, double pmf) {
        if (run_threshold_strategy(p, m, dir).success) mass.add(pmf);
    });
    return mass.value();
}

RecordJointLaw::RecordJointLaw(int n, RankDirection dir, std::vector<double> joint)
    : n_(n), dir_(dir), joint_(std::move(joint)) {}

std::vector<double> RecordJointLaw::marginals() const {
    std::vector<double> out(static_cast<std::size_t>(n_) - 1, 0.0);
    for (std::uint32_t mask = 0; mask < joint_.size(); ++mask) {
        for (int j = 2; j <= n_; ++j)
            if (mask & (1u << (j - 2))) out[static_cast<std::size_t>(j) - 2] += joint_[mask];
    }
    return out;
}

namespace {

constexpr int kMaxRecordLawSize = 7;

}  // namespace

RecordJointLaw record_joint_law(const ModelSpec& spec, RankDirection dir) {
    if (spec.n > kMaxRecordLawSize)
        throw TooLarge("record joint law is capped at n = " +
                       std::to_string(kMaxRecordLawSize));
    std::vector<double> joint(std::size_t{1} << (spec.n - 1), 0.0);
    enumerate_support(spec, [&](const Permutation& p, double pmf) {
        const auto records = record_indicators(p, dir);
        std::uint32_t mask = 0;
        for (int j = 2; j <= spec.n; ++j)
            if (records[static_cast<std::size_t>(j) - 1]) mask |= 1u << (j - 2);
        joint[mask] += pmf;
    });
    return RecordJointLaw(spec.n, dir, std::move(joint));
}

double independence_defect(const ModelSpec& spec, RankDirection dir) {
    const RecordJointLaw law = record_joint_law(spec, dir);
    const std::vector<double> marginal = law.marginals();
    double defect = 0.0;
    for (std::uint32_t mask = 0; mask < law.joint().size(); ++mask) {
        double product = 1.0;
        for (int j = 2; j <= spec.n; ++j) {
            const double p = marginal[static_cast<std::size_t>(j) - 2];
            product *= (mask & (1u << (j - 2))) ? p : 1.0 - p;
        }
        defect = std::max(defect, std::abs(law.probability(mask) - product));
    }
    return defect;
}

std::vector<double> odds_suffix_sums(std::span<const double> record_probs) {
    std::vector<double> sums(record_probs.size());
    double acc = 0.0;
    for (std::size_t k = record_probs.size(); k-- > 0;) {
        const double p = record_probs[k];
        if (!(p > 0.0) || p > 1.0)
            throw BadProbability("record probabilities must lie in (0, 1]");
        acc += p == 1.0 ? std::numeric_limits<double>::infinity() : p / (1.0 - p);
        sums[k] = acc;
    }
    return sums;
}

int bruss_odds_threshold(std::span<const double> record_probs) {
    const std::vector<double> sums = odds_suffix_sums(record_probs);
    // sums[s-2] = R_s for s = 2..n; scan backwards for the last index whose
    // suffix odds reach 1.
    for (std::size_t k = sums.size(); k-- > 0;) {
        if (sums[k] >= 1.0) return static_cast<int>(k) + 1;  // m = s - 1
    }
    return 0;  // island degenerates to the sure record at position 1
}

}  // namespace stopsmith
