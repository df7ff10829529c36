#pragma once

#include <functional>
#include <optional>
#include <string>

#include "stopsmith/lehmer.hpp"
#include "stopsmith/permutation.hpp"
#include "stopsmith/rng.hpp"
#include "stopsmith/weights.hpp"

namespace stopsmith {

enum class ModelFamily { Mallows, Luce, LuceInv, PShifted, Uniform };

std::string family_name(ModelFamily family);

// A fully specified permutation distribution on S_n.
struct ModelSpec {
    ModelFamily family = ModelFamily::Uniform;
    int n = 1;
    double q = 1.0;                        // Mallows only
    std::optional<WeightVector> weights;   // weighted families

    static ModelSpec mallows(int n, double q);
    static ModelSpec luce(WeightVector w);
    static ModelSpec luce_inv(WeightVector w);
    static ModelSpec p_shifted(WeightVector w);
    static ModelSpec uniform(int n);

    void validate() const;
};

// ---- normalizer and probability mass functions ----

// log of Z_n(q) = prod_{j=1}^n (1 - q^j)/(1 - q); Z_n(1) = n!.
double mallows_log_normalizer(int n, double q);

// Linear-scale normalizer; overflows to +inf for large n with q > 1, in
// which case use the log form.
double mallows_normalizer(int n, double q);

// q^{inversions}/Z_n(q); log form is exact where the linear value underflows.
double mallows_log_pmf(const Permutation& p, double q);
double mallows_pmf(const Permutation& p, double q);

// Sequential weighted pick without replacement: position k holds the label
// drawn at stage k.
double luce_pmf(const Permutation& p, const WeightVector& w);
double luce_log_pmf(const Permutation& p, const WeightVector& w);

// Pushforward of the above under p -> inverse(p).
double luce_inv_pmf(const Permutation& p, const WeightVector& w);
double luce_inv_log_pmf(const Permutation& p, const WeightVector& w);

// Product law of the insertion code: entry j is i-1 with probability
// theta_i / (theta_1 + ... + theta_j).
double p_shifted_pmf(const Permutation& p, const WeightVector& w);
double p_shifted_log_pmf(const Permutation& p, const WeightVector& w);

double model_pmf(const ModelSpec& spec, const Permutation& p);
double model_log_pmf(const ModelSpec& spec, const Permutation& p);

// ---- exact samplers ----
// All samplers are deterministic functions of the generator state.

Permutation uniform_sample(int n, Rng& rng);

// Weighted sampling without replacement; stage-k label becomes position k.
Permutation luce_sample(const WeightVector& w, Rng& rng);

// Same pick sequence, but stage k becomes the value at the picked label.
Permutation luce_inv_sample(const WeightVector& w, Rng& rng);

// Draws the insertion code entries independently, then decodes. The
// construction only touches theta_1..theta_n, so w may be longer than the
// requested size.
Permutation p_shifted_sample(const WeightVector& w, int n, Rng& rng);
Permutation p_shifted_sample(const WeightVector& w, Rng& rng);

// p-shifted with geometric weights, using a closed-form inverse CDF for the
// code entries so no weight vector is materialised (stable for q near 1).
Permutation mallows_sample(int n, double q, Rng& rng);

// Ranks of independent exponentials with rates theta_j; same law as the
// inverse-Luce model with those weights.
Permutation exponential_reduction_sample(const WeightVector& w, Rng& rng);

// Ranks of the gaps between order statistics of n iid Exp(1) draws; same
// law as inverse-Luce with weights n+1-j.
Permutation sukhatme_gap_sample(int n, Rng& rng);

Permutation model_sample(const ModelSpec& spec, Rng& rng);

// ---- sampler selection (CLI surface) ----

enum class SamplerKind { Mallows, Luce, LuceInv, PShifted, Uniform, ExpReduce, SukhatmeGap };

std::string sampler_name(SamplerKind kind);
SamplerKind parse_sampler(const std::string& text);

struct SamplerSpec {
    SamplerKind kind = SamplerKind::Uniform;
    int n = 1;
    double q = 1.0;
    std::optional<WeightVector> weights;

    static SamplerSpec make(SamplerKind kind, int n, double q,
                            std::optional<WeightVector> weights);

    Permutation sample(Rng& rng) const;

    // The distribution this sampler realises.
    ModelSpec law() const;
};

// ---- brute-force support enumeration ----

inline constexpr int kMaxEnumerationSize = 9;

// Calls visit(sigma, pmf) once for every sigma in S_n, in lexicographic
// order. Throws TooLarge for n > kMaxEnumerationSize.
void enumerate_support(const ModelSpec& spec,
                       const std::function<void(const Permutation&, double)>& visit);

}  // namespace stopsmith
