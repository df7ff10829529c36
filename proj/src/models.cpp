#include "stopsmith/models.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fenwick.hpp"
#include "stopsmith/log_space.hpp"

namespace stopsmith {

std::string family_name(ModelFamily family) {
    switch (family) {
        case ModelFamily::Mallows: return "mallows";
        case ModelFamily::Luce: return "luce";
        case ModelFamily::LuceInv: return "luce-inv";
        case ModelFamily::PShifted: return "p-shifted";
        case ModelFamily::Uniform: return "uniform";
    }
    return "?";
}

ModelSpec ModelSpec::mallows(int n, double q) {
    ModelSpec spec{ModelFamily::Mallows, n, q, std::nullopt};
    spec.validate();
    return spec;
}

ModelSpec ModelSpec::luce(WeightVector w) {
    ModelSpec spec{ModelFamily::Luce, w.size(), 1.0, std::move(w)};
    spec.validate();
    return spec;
}

ModelSpec ModelSpec::luce_inv(WeightVector w) {
    ModelSpec spec{ModelFamily::LuceInv, w.size(), 1.0, std::move(w)};
    spec.validate();
    return spec;
}

ModelSpec ModelSpec::p_shifted(WeightVector w) {
    ModelSpec spec{ModelFamily::PShifted, w.size(), 1.0, std::move(w)};
    spec.validate();
    return spec;
}

ModelSpec ModelSpec::uniform(int n) {
    ModelSpec spec{ModelFamily::Uniform, n, 1.0, std::nullopt};
    spec.validate();
    return spec;
}

void ModelSpec::validate() const {
    if (n < 1) throw BadParameter("model size must be >= 1");
    if (family == ModelFamily::Mallows) {
        if (!(q > 0.0) || !std::isfinite(q)) throw BadParameter("Mallows q must be > 0");
    } else if (family != ModelFamily::Uniform) {
        if (!weights) throw BadParameter(family_name(family) + " model needs weights");
        if (weights->size() != n)
            throw BadParameter("weight length " + std::to_string(weights->size()) +
                               " does not match n = " + std::to_string(n));
    }
}

// ---- normalizer and pmfs ----

double mallows_log_normalizer(int n, double q) {
    if (n < 1) throw BadParameter("n must be >= 1");
    if (!(q > 0.0) || !std::isfinite(q)) throw BadParameter("q must be > 0");
    if (q == 1.0) return std::lgamma(n + 1.0);
    const double log_denominator = log_abs_one_minus_pow(q, 1);
    KahanSum log_z;
    for (int j = 1; j <= n; ++j)
        log_z.add(log_abs_one_minus_pow(q, j) - log_denominator);
    return log_z.value();
}

double mallows_normalizer(int n, double q) {
    return std::exp(mallows_log_normalizer(n, q));
}

double mallows_log_pmf(const Permutation& p, double q) {
    if (!(q > 0.0) || !std::isfinite(q)) throw BadParameter("q must be > 0");
    const double inv = static_cast<double>(inversion_count(p));
    return inv * std::log(q) - mallows_log_normalizer(p.size(), q);
}

double mallows_pmf(const Permutation& p, double q) {
    return std::exp(mallows_log_pmf(p, q));
}

namespace {

void require_matching_weights(const Permutation& p, const WeightVector& w) {
    if (w.size() != p.size())
        throw BadParameter("weight length " + std::to_string(w.size()) +
                           " does not match permutation size " + std::to_string(p.size()));
}

}  // namespace

double luce_pmf(const Permutation& p, const WeightVector& w) {
    require_matching_weights(p, w);
    const int n = p.size();
    KahanSum remaining;
    remaining.add(w.total());
    double probability = 1.0;
    for (int k = 1; k < n; ++k) {  // final factor is theta/theta = 1
        probability *= w.at(p.at(k)) / remaining.value();
        remaining.add(-w.at(p.at(k)));
    }
    return probability;
}

double luce_log_pmf(const Permutation& p, const WeightVector& w) {
    require_matching_weights(p, w);
    const int n = p.size();
    KahanSum remaining;
    remaining.add(w.total());
    KahanSum log_probability;
    for (int k = 1; k < n; ++k) {
        log_probability.add(std::log(w.at(p.at(k))) - std::log(remaining.value()));
        remaining.add(-w.at(p.at(k)));
    }
    return log_probability.value();
}

double luce_inv_pmf(const Permutation& p, const WeightVector& w) {
    return luce_pmf(inverse(p), w);
}

double luce_inv_log_pmf(const Permutation& p, const WeightVector& w) {
    return luce_log_pmf(inverse(p), w);
}

double p_shifted_pmf(const Permutation& p, const WeightVector& w) {
    require_matching_weights(p, w);
    const LehmerCode code = lehmer_encode(p);
    const auto& prefix = w.prefix();
    double probability = 1.0;
    for (int j = 2; j <= p.size(); ++j)
        probability *= w.at(code.entry(j) + 1) / prefix[static_cast<std::size_t>(j)];
    return probability;
}

double p_shifted_log_pmf(const Permutation& p, const WeightVector& w) {
    require_matching_weights(p, w);
    const LehmerCode code = lehmer_encode(p);
    const auto& prefix = w.prefix();
    KahanSum log_probability;
    for (int j = 2; j <= p.size(); ++j)
        log_probability.add(std::log(w.at(code.entry(j) + 1)) -
                            std::log(prefix[static_cast<std::size_t>(j)]));
    return log_probability.value();
}

double model_pmf(const ModelSpec& spec, const Permutation& p) {
    spec.validate();
    if (p.size() != spec.n) throw BadParameter("permutation size does not match model");
    switch (spec.family) {
        case ModelFamily::Mallows: return mallows_pmf(p, spec.q);
        case ModelFamily::Luce: return luce_pmf(p, *spec.weights);
        case ModelFamily::LuceInv: return luce_inv_pmf(p, *spec.weights);
        case ModelFamily::PShifted: return p_shifted_pmf(p, *spec.weights);
        case ModelFamily::Uniform: return std::exp(-std::lgamma(spec.n + 1.0));
    }
    return 0.0;
}

double model_log_pmf(const ModelSpec& spec, const Permutation& p) {
    spec.validate();
    if (p.size() != spec.n) throw BadParameter("permutation size does not match model");
    switch (spec.family) {
        case ModelFamily::Mallows: return mallows_log_pmf(p, spec.q);
        case ModelFamily::Luce: return luce_log_pmf(p, *spec.weights);
        case ModelFamily::LuceInv: return luce_inv_log_pmf(p, *spec.weights);
        case ModelFamily::PShifted: return p_shifted_log_pmf(p, *spec.weights);
        case ModelFamily::Uniform: return -std::lgamma(spec.n + 1.0);
    }
    return 0.0;
}

// ---- samplers ----

Permutation uniform_sample(int n, Rng& rng) {
    if (n < 1) throw BadParameter("n must be >= 1");
    std::vector<std::int32_t> values(static_cast<std::size_t>(n));
    std::iota(values.begin(), values.end(), 1);
    for (int i = 0; i < n - 1; ++i) {
        const auto j = i + static_cast<int>(rng.below(static_cast<std::uint64_t>(n - i)));
        std::swap(values[static_cast<std::size_t>(i)], values[static_cast<std::size_t>(j)]);
    }
    return Permutation::unchecked(std::move(values));
}

namespace {

// Label sequence of weighted sampling without replacement: picks[k] is the
// label drawn at stage k+1. Fenwick prefix search keeps each pick O(log n)
// and the pick marginals exact: stage-one label j has probability
// theta_j / total.
std::vector<std::int32_t> weighted_pick_sequence(const WeightVector& w, Rng& rng) {
    const int n = w.size();
    detail::Fenwick<double> mass(static_cast<std::size_t>(n));
    std::vector<double> current(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) {
        mass.add(static_cast<std::size_t>(i), w.at(i));
        current[static_cast<std::size_t>(i) - 1] = w.at(i);
    }
    std::vector<std::int32_t> picks(static_cast<std::size_t>(n));
    for (int stage = 0; stage < n; ++stage) {
        const double total = mass.prefix(static_cast<std::size_t>(n));
        const double target = rng.uniform_pos() * total;
        std::size_t label = mass.lower_bound(target);
        while (label < static_cast<std::size_t>(n) && current[label - 1] == 0.0) ++label;
        picks[static_cast<std::size_t>(stage)] = static_cast<std::int32_t>(label);
        mass.add(label, -current[label - 1]);
        current[label - 1] = 0.0;
    }
    return picks;
}

// Smallest i in {1..j} with (1 - r^i)/(1 - r^j) >= u, where r = e^l, l < 0.
// That is the inverse CDF of P(i) proportional to r^i. Uses one uniform.
int truncated_geometric(int j, double l, double u) {
    const double t = u * std::expm1(j * l);  // CDF(i) >= u  <=>  expm1(i l) <= t
    int i = 1;
    if (t < 0.0) {
        const double approx = std::log1p(t) / l;
        if (approx >= static_cast<double>(j)) {
            i = j;
        } else if (approx > 1.0) {
            i = static_cast<int>(std::ceil(approx));
        }
        while (i > 1 && std::expm1((i - 1) * l) <= t) --i;
        while (i < j && std::expm1(static_cast<double>(i) * l) > t) ++i;
    }
    return i;
}

}  // namespace

Permutation luce_sample(const WeightVector& w, Rng& rng) {
    return Permutation::unchecked(weighted_pick_sequence(w, rng));
}

Permutation luce_inv_sample(const WeightVector& w, Rng& rng) {
    const auto picks = weighted_pick_sequence(w, rng);
    std::vector<std::int32_t> values(picks.size());
    for (std::size_t stage = 0; stage < picks.size(); ++stage)
        values[static_cast<std::size_t>(picks[stage]) - 1] =
            static_cast<std::int32_t>(stage + 1);
    return Permutation::unchecked(std::move(values));
}

Permutation p_shifted_sample(const WeightVector& w, int n, Rng& rng) {
    if (n < 1) throw BadParameter("n must be >= 1");
    if (n > w.size())
        throw BadParameter("p-shifted sampling needs at least n weights");
    const auto& prefix = w.prefix();
    std::vector<std::int32_t> entries(static_cast<std::size_t>(n) - 1);
    for (int j = 2; j <= n; ++j) {
        const double target = rng.uniform() * prefix[static_cast<std::size_t>(j)];
        const auto begin = prefix.begin() + 1;
        const auto end = prefix.begin() + j + 1;
        const auto it = std::lower_bound(begin, end, target);
        const int i = static_cast<int>(it - begin) + 1;  // smallest i with T_i >= target
        entries[static_cast<std::size_t>(j) - 2] = static_cast<std::int32_t>(std::min(i, j) - 1);
    }
    return lehmer_decode(LehmerCode(n, std::move(entries)));
}

Permutation p_shifted_sample(const WeightVector& w, Rng& rng) {
    return p_shifted_sample(w, w.size(), rng);
}

Permutation mallows_sample(int n, double q, Rng& rng) {
    if (n < 1) throw BadParameter("n must be >= 1");
    if (!(q > 0.0) || !std::isfinite(q)) throw BadParameter("q must be > 0");
    if (q == 1.0) return uniform_sample(n, rng);
    const double lq = std::log(q);
    std::vector<std::int32_t> entries(static_cast<std::size_t>(n) - 1);
    for (int j = 2; j <= n; ++j) {
        const double u = rng.uniform();
        // Code entry is i-1 with probability proportional to q^i, i in {1..j}.
        const int i = q < 1.0 ? truncated_geometric(j, lq, u)
                              : j + 1 - truncated_geometric(j, -lq, u);
        entries[static_cast<std::size_t>(j) - 2] = static_cast<std::int32_t>(i - 1);
    }
    return lehmer_decode(LehmerCode(n, std::move(entries)));
}

Permutation exponential_reduction_sample(const WeightVector& w, Rng& rng) {
    const int n = w.size();
    std::vector<double> draws(static_cast<std::size_t>(n));
    for (int j = 1; j <= n; ++j)
        draws[static_cast<std::size_t>(j) - 1] = rng.exponential(w.at(j));
    return reduce_sequence(draws);
}

Permutation sukhatme_gap_sample(int n, Rng& rng) {
    if (n < 1) throw BadParameter("n must be >= 1");
    std::vector<double> draws(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) draws[static_cast<std::size_t>(j)] = rng.exponential(1.0);
    std::sort(draws.begin(), draws.end());
    std::vector<double> gaps(static_cast<std::size_t>(n));
    gaps[0] = draws[0];
    for (int j = 1; j < n; ++j)
        gaps[static_cast<std::size_t>(j)] =
            draws[static_cast<std::size_t>(j)] - draws[static_cast<std::size_t>(j) - 1];
    return reduce_sequence(gaps);
}

Permutation model_sample(const ModelSpec& spec, Rng& rng) {
    spec.validate();
    switch (spec.family) {
        case ModelFamily::Mallows: return mallows_sample(spec.n, spec.q, rng);
        case ModelFamily::Luce: return luce_sample(*spec.weights, rng);
        case ModelFamily::LuceInv: return luce_inv_sample(*spec.weights, rng);
        case ModelFamily::PShifted: return p_shifted_sample(*spec.weights, rng);
        case ModelFamily::Uniform: return uniform_sample(spec.n, rng);
    }
    throw BadParameter("unknown model family");
}

// ---- sampler selection ----

std::string sampler_name(SamplerKind kind) {
    switch (kind) {
        case SamplerKind::Mallows: return "mallows";
        case SamplerKind::Luce: return "luce";
        case SamplerKind::LuceInv: return "luce-inv";
        case SamplerKind::PShifted: return "p-shifted";
        case SamplerKind::Uniform: return "uniform";
        case SamplerKind::ExpReduce: return "exp-reduce";
        case SamplerKind::SukhatmeGap: return "sukhatme-gap";
    }
    return "?";
}

SamplerKind parse_sampler(const std::string& text) {
    if (text == "mallows") return SamplerKind::Mallows;
    if (text == "luce") return SamplerKind::Luce;
    if (text == "luce-inv") return SamplerKind::LuceInv;
    if (text == "p-shifted") return SamplerKind::PShifted;
    if (text == "uniform") return SamplerKind::Uniform;
    if (text == "exp-reduce") return SamplerKind::ExpReduce;
    if (text == "sukhatme-gap") return SamplerKind::SukhatmeGap;
    throw ParseError("unknown model '" + text + "'");
}

SamplerSpec SamplerSpec::make(SamplerKind kind, int n, double q,
                              std::optional<WeightVector> weights) {
    SamplerSpec spec;
    spec.kind = kind;
    spec.q = q;
    spec.weights = std::move(weights);
    if (spec.weights) {
        if (n > 0 && n != spec.weights->size())
            throw BadParameter("weight length does not match n");
        spec.n = spec.weights->size();
    } else {
        if (n < 1) throw BadParameter("model size must be >= 1");
        spec.n = n;
    }
    spec.law();  // validates the combination
    return spec;
}

Permutation SamplerSpec::sample(Rng& rng) const {
    switch (kind) {
        case SamplerKind::Mallows: return mallows_sample(n, q, rng);
        case SamplerKind::Luce: return luce_sample(*weights, rng);
        case SamplerKind::LuceInv: return luce_inv_sample(*weights, rng);
        case SamplerKind::PShifted: return p_shifted_sample(*weights, rng);
        case SamplerKind::Uniform: return uniform_sample(n, rng);
        case SamplerKind::ExpReduce: return exponential_reduction_sample(*weights, rng);
        case SamplerKind::SukhatmeGap: return sukhatme_gap_sample(n, rng);
    }
    throw BadParameter("unknown sampler");
}

ModelSpec SamplerSpec::law() const {
    switch (kind) {
        case SamplerKind::Mallows: return ModelSpec::mallows(n, q);
        case SamplerKind::Luce: return ModelSpec::luce(*weights);
        case SamplerKind::LuceInv: return ModelSpec::luce_inv(*weights);
        case SamplerKind::PShifted: return ModelSpec::p_shifted(*weights);
        case SamplerKind::Uniform: return ModelSpec::uniform(n);
        case SamplerKind::ExpReduce: return ModelSpec::luce_inv(*weights);
        case SamplerKind::SukhatmeGap: return ModelSpec::luce_inv(WeightVector::sukhatme(n));
    }
    throw BadParameter("unknown sampler");
}

// ---- enumeration ----

void enumerate_support(const ModelSpec& spec,
                       const std::function<void(const Permutation&, double)>& visit) {
    spec.validate();
    const int n = spec.n;
    if (n > kMaxEnumerationSize)
        throw TooLarge("support enumeration is capped at n = " +
                       std::to_string(kMaxEnumerationSize));

    // Per-family evaluator with per-call precomputation hoisted out of the
    // n! loop.
    std::function<double(const Permutation&)> pmf;
    switch (spec.family) {
        case ModelFamily::Mallows: {
            const double lq = std::log(spec.q);
            const double log_z = mallows_log_normalizer(n, spec.q);
            pmf = [lq, log_z](const Permutation& p) {
                return std::exp(static_cast<double>(inversion_count(p)) * lq - log_z);
            };
            break;
        }
        case ModelFamily::Uniform: {
            double factorial = 1.0;
            for (int i = 2; i <= n; ++i) factorial *= i;
            const double mass = 1.0 / factorial;
            pmf = [mass](const Permutation&) { return mass; };
            break;
        }
        case ModelFamily::Luce: {
            const WeightVector& w = *spec.weights;
            pmf = [&w](const Permutation& p) { return luce_pmf(p, w); };
            break;
        }
        case ModelFamily::LuceInv: {
            const WeightVector& w = *spec.weights;
            pmf = [&w](const Permutation& p) { return luce_inv_pmf(p, w); };
            break;
        }
        case ModelFamily::PShifted: {
            const WeightVector& w = *spec.weights;
            pmf = [&w](const Permutation& p) { return p_shifted_pmf(p, w); };
            break;
        }
    }

    std::vector<std::int32_t> values(static_cast<std::size_t>(n));
    std::iota(values.begin(), values.end(), 1);
    do {
        const Permutation p = Permutation::unchecked(values);
        visit(p, pmf(p));
    } while (std::next_permutation(values.begin(), values.end()));
}

}  // namespace stopsmith
