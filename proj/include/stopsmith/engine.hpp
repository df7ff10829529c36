#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "stopsmith/models.hpp"

namespace stopsmith {

struct StrategyOutcome {
    int selected_index = 0;  // 1-based; n when no record appears after the cutoff
    bool success = false;
};

// Reject the first m items, then stop on the first later item that beats
// everything seen before it (in the given direction); the final item is
// accepted when no such record shows up. Success means the stopped-on item
// is the overall best. 0 <= m <= n-1.
StrategyOutcome run_threshold_strategy(const Permutation& p, int m, RankDirection dir);

struct MonteCarloEstimate {
    std::int64_t successes = 0;
    std::int64_t trials = 0;
    double p_hat = 0.0;
    double std_err = 0.0;
    std::uint64_t seed = 0;
};

inline constexpr std::int64_t kMonteCarloChunk = 4096;

// Chunked Monte Carlo estimate of the strategy success probability. Chunk k
// draws from substream (seed, k), so the result is a function of (seed,
// trials) alone, independent of the worker count. threads = 0 consults
// STOPSMITH_THREADS, falling back to the hardware count.
MonteCarloEstimate monte_carlo_success(const SamplerSpec& sampler, int m, RankDirection dir,
                                       std::int64_t trials, std::uint64_t seed,
                                       int threads = 0);
MonteCarloEstimate monte_carlo_success(const ModelSpec& spec, int m, RankDirection dir,
                                       std::int64_t trials, std::uint64_t seed,
                                       int threads = 0);

// Sums model mass over the success event; the ground-truth oracle for the
// closed forms (n <= 9).
double exact_success_by_enumeration(const ModelSpec& spec, int m, RankDirection dir);

// Exact joint distribution of the record indicators U_2..U_n under the
// model, by enumeration (n <= 7). U_1 is identically 1 and is omitted.
class RecordJointLaw {
public:
    RecordJointLaw(int n, RankDirection dir, std::vector<double> joint);

    int size() const { return n_; }
    RankDirection direction() const { return dir_; }

    // Probability of the outcome whose bit j-2 gives U_j.
    double probability(std::uint32_t mask) const { return joint_[mask]; }

    const std::vector<double>& joint() const { return joint_; }

    // marginals()[j-2] = P(U_j = 1) for j = 2..n.
    std::vector<double> marginals() const;

private:
    int n_;
    RankDirection dir_;
    std::vector<double> joint_;  // size 2^(n-1)
};

RecordJointLaw record_joint_law(const ModelSpec& spec, RankDirection dir);

// Largest absolute gap between the joint record law and the product of its
// marginals; ~0 exactly when the indicators are independent.
double independence_defect(const ModelSpec& spec, RankDirection dir);

// Odds-algorithm cutoff for independent record indicators with success
// probabilities record_probs = (p_2, ..., p_n), each in (0, 1]. Returns the
// reject count m: the stopping island starts where the suffix odds sum
// first reaches 1 scanning backwards; position 1 is a sure record (infinite
// odds), so the island degenerates to {1} and m = 0 when the sum stays
// below 1.
int bruss_odds_threshold(std::span<const double> record_probs);

// Suffix odds sums R_s = sum_{j=s..n} p_j/(1-p_j); out[s-2] = R_s.
std::vector<double> odds_suffix_sums(std::span<const double> record_probs);

// threads <= 0 resolves STOPSMITH_THREADS (0 or unset = hardware count).
int resolve_thread_count(int requested);

}  // namespace stopsmith
