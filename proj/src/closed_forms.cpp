#include "stopsmith/closed_forms.hpp"

#include <cmath>

#include "stopsmith/log_space.hpp"

namespace stopsmith {

namespace {

void check_threshold(int n, int m) {
    if (n < 1) throw BadParameter("n must be >= 1");
    if (m < 0 || m > n - 1)
        throw BadThreshold("threshold m = " + std::to_string(m) +
                           " outside {0.." + std::to_string(n - 1) + "}");
}

void check_q(double q) {
    if (!(q > 0.0) || !std::isfinite(q)) throw BadParameter("q must be > 0");
}

}  // namespace

double classical_exact(int n, int m) {
    check_threshold(n, m);
    if (m == 0) return 1.0 / n;
    KahanSum sum;
    for (int j = n; j >= m + 1; --j) sum.add(1.0 / (j - 1));
    return (static_cast<double>(m) / n) * sum.value();
}

std::vector<double> classical_sweep(int n) {
    check_threshold(n, 0);
    std::vector<double> out(static_cast<std::size_t>(n));
    out[0] = 1.0 / n;
    KahanSum sum;
    for (int m = n - 1; m >= 1; --m) {
        sum.add(1.0 / m);  // the j = m+1 term
        out[static_cast<std::size_t>(m)] = (static_cast<double>(m) / n) * sum.value();
    }
    return out;
}

namespace {

// Branch pieces of the Mallows cutoff formulas. For q < 1 the printed
// forms are used directly; for q > 1 everything is rewritten in powers of
// 1/q so no q^n is ever formed. Sums run backwards so the small terms
// accumulate first.

double mallows_up_prefactor(int n, int m, double q, double lq) {
    if (q < 1.0) {
        // (1-q)/(1-q^n) q^{n-m-1} (1-q^m); the power may underflow to 0 for
        // m far from n, where the true probability is below resolution.
        return (1.0 - q) / (-std::expm1(n * lq)) * std::exp((n - m - 1) * lq) *
               (-std::expm1(m * lq));
    }
    return ((q - 1.0) / q) * (-std::expm1(-m * lq)) / (-std::expm1(-n * lq));
}

double mallows_up_term(int j, double q, double lq) {
    // q < 1: 1/(1-q^{j-1});  q > 1: 1/(q^{j-1}-1)
    return q < 1.0 ? 1.0 / (-std::expm1((j - 1) * lq)) : 1.0 / std::expm1((j - 1) * lq);
}

double mallows_up_m0(int n, double q, double lq) {
    if (q < 1.0) return (1.0 - q) * std::exp((n - 1) * lq) / (-std::expm1(n * lq));
    return ((q - 1.0) / q) / (-std::expm1(-n * lq));
}

double mallows_down_prefactor(int n, int m, double q, double lq) {
    if (q < 1.0)
        return (1.0 - q) * (-std::expm1(m * lq)) / (-std::expm1(n * lq));
    return (q - 1.0) * std::exp((m - n) * lq) * (-std::expm1(-m * lq)) /
           (-std::expm1(-n * lq));
}

double mallows_down_term(int j, double q, double lq) {
    // q < 1: q^{j-1}/(1-q^{j-1}) = 1/(q^{-(j-1)}-1);  q > 1: 1/(1-q^{-(j-1)})
    return q < 1.0 ? 1.0 / std::expm1(-(j - 1) * lq) : 1.0 / (-std::expm1(-(j - 1) * lq));
}

double mallows_down_m0(int n, double q, double lq) {
    if (q < 1.0) return (1.0 - q) / (-std::expm1(n * lq));
    return (q - 1.0) * std::exp(-n * lq) / (-std::expm1(-n * lq));
}

}  // namespace

double mallows_up_exact(int n, int m, double q) {
    check_threshold(n, m);
    check_q(q);
    if (q == 1.0) return classical_exact(n, m);
    const double lq = std::log(q);
    if (m == 0) return mallows_up_m0(n, q, lq);
    KahanSum sum;
    for (int j = n; j >= m + 1; --j) sum.add(mallows_up_term(j, q, lq));
    return mallows_up_prefactor(n, m, q, lq) * sum.value();
}

double mallows_down_exact(int n, int m, double q) {
    check_threshold(n, m);
    check_q(q);
    if (q == 1.0) return classical_exact(n, m);
    const double lq = std::log(q);
    if (m == 0) return mallows_down_m0(n, q, lq);
    KahanSum sum;
    for (int j = n; j >= m + 1; --j) sum.add(mallows_down_term(j, q, lq));
    return mallows_down_prefactor(n, m, q, lq) * sum.value();
}

std::vector<double> mallows_up_sweep(int n, double q) {
    check_threshold(n, 0);
    check_q(q);
    if (q == 1.0) return classical_sweep(n);
    const double lq = std::log(q);
    std::vector<double> out(static_cast<std::size_t>(n));
    out[0] = mallows_up_m0(n, q, lq);
    KahanSum sum;
    for (int m = n - 1; m >= 1; --m) {
        sum.add(mallows_up_term(m + 1, q, lq));
        out[static_cast<std::size_t>(m)] = mallows_up_prefactor(n, m, q, lq) * sum.value();
    }
    return out;
}

std::vector<double> mallows_down_sweep(int n, double q) {
    check_threshold(n, 0);
    check_q(q);
    if (q == 1.0) return classical_sweep(n);
    const double lq = std::log(q);
    std::vector<double> out(static_cast<std::size_t>(n));
    out[0] = mallows_down_m0(n, q, lq);
    KahanSum sum;
    for (int m = n - 1; m >= 1; --m) {
        sum.add(mallows_down_term(m + 1, q, lq));
        out[static_cast<std::size_t>(m)] = mallows_down_prefactor(n, m, q, lq) * sum.value();
    }
    return out;
}

double luce_inv_down_exact(int n, int m, const WeightVector& w) {
    check_threshold(n, m);
    if (w.size() != n) throw BadParameter("weight length does not match n");
    const auto& prefix = w.prefix();
    if (m == 0) return w.at(1) / prefix[static_cast<std::size_t>(n)];
    KahanSum sum;
    for (int j = n; j >= m + 1; --j)
        sum.add(w.at(j) / prefix[static_cast<std::size_t>(j) - 1]);
    return prefix[static_cast<std::size_t>(m)] / prefix[static_cast<std::size_t>(n)] *
           sum.value();
}

std::vector<double> luce_inv_down_sweep(int n, const WeightVector& w) {
    check_threshold(n, 0);
    if (w.size() != n) throw BadParameter("weight length does not match n");
    const auto& prefix = w.prefix();
    const double total = prefix[static_cast<std::size_t>(n)];
    std::vector<double> out(static_cast<std::size_t>(n));
    out[0] = w.at(1) / total;
    KahanSum sum;
    for (int m = n - 1; m >= 1; --m) {
        sum.add(w.at(m + 1) / prefix[static_cast<std::size_t>(m)]);
        out[static_cast<std::size_t>(m)] =
            prefix[static_cast<std::size_t>(m)] / total * sum.value();
    }
    return out;
}

// ---- family selector ----

ExactFamily ExactFamily::classical() { return {Kind::Classical, 1.0, std::nullopt}; }

ExactFamily ExactFamily::mallows_up(double q) {
    check_q(q);
    return {Kind::MallowsUp, q, std::nullopt};
}

ExactFamily ExactFamily::mallows_down(double q) {
    check_q(q);
    return {Kind::MallowsDown, q, std::nullopt};
}

ExactFamily ExactFamily::luce_inv_down(WeightVector w) {
    return {Kind::LuceInvDown, 1.0, std::move(w)};
}

ExactFamily ExactFamily::parse(const std::string& name, std::optional<double> q,
                               std::optional<WeightVector> w) {
    if (name == "classical") return classical();
    if (name == "mallows-up" || name == "mallows-down") {
        if (!q) throw ParseError("family '" + name + "' needs --q");
        return name == "mallows-up" ? mallows_up(*q) : mallows_down(*q);
    }
    if (name == "luce-inv-down") {
        if (!w) throw ParseError("family 'luce-inv-down' needs weights");
        return luce_inv_down(std::move(*w));
    }
    throw ParseError("unknown family '" + name + "'");
}

std::string ExactFamily::name() const {
    switch (kind_) {
        case Kind::Classical: return "classical";
        case Kind::MallowsUp: return "mallows-up";
        case Kind::MallowsDown: return "mallows-down";
        case Kind::LuceInvDown: return "luce-inv-down";
    }
    return "?";
}

double ExactFamily::evaluate(int n, int m) const {
    switch (kind_) {
        case Kind::Classical: return classical_exact(n, m);
        case Kind::MallowsUp: return mallows_up_exact(n, m, q_);
        case Kind::MallowsDown: return mallows_down_exact(n, m, q_);
        case Kind::LuceInvDown: return luce_inv_down_exact(n, m, *weights_);
    }
    return 0.0;
}

std::vector<double> ExactFamily::sweep(int n) const {
    switch (kind_) {
        case Kind::Classical: return classical_sweep(n);
        case Kind::MallowsUp: return mallows_up_sweep(n, q_);
        case Kind::MallowsDown: return mallows_down_sweep(n, q_);
        case Kind::LuceInvDown: return luce_inv_down_sweep(n, *weights_);
    }
    return {};
}

ThresholdOptimum best_threshold(const std::vector<double>& values) {
    if (values.empty()) throw BadParameter("empty sweep");
    ThresholdOptimum best{0, values[0]};
    for (std::size_t m = 1; m < values.size(); ++m) {
        if (values[m] > best.value) best = {static_cast<int>(m), values[m]};
    }
    return best;
}

ThresholdOptimum optimize_threshold(const ExactFamily& family, int n) {
    return best_threshold(family.sweep(n));
}

// ---- q-series tails ----

namespace {

// sum_{j=m}^inf r^j/(1-r^j) for r in (0,1); remainder past J is bounded by
// r^{J+1}/((1-r^{J+1})(1-r)).
double geometric_ratio_tail(double r, int m, double tol) {
    const double lr = std::log(r);
    KahanSum sum;
    for (int j = m;; ++j) {
        sum.add(1.0 / std::expm1(-j * lr));  // r^j/(1-r^j)
        const double next_pow = std::exp((j + 1) * lr);
        const double bound = next_pow / ((1.0 - next_pow) * (1.0 - r));
        if (bound < tol * sum.value()) break;
    }
    return sum.value();
}

}  // namespace

double tail_sum(double q, int m, double tol) {
    check_q(q);
    if (q == 1.0) throw BadParameter("tail series require q != 1");
    if (m < 1) throw BadParameter("tail series start at m >= 1");
    if (!(tol > 0.0)) throw BadParameter("tolerance must be > 0");
    // Identity 1/(q^j - 1) = r^j/(1-r^j) with r = 1/q folds both series
    // into one evaluator.
    return q > 1.0 ? geometric_ratio_tail(1.0 / q, m, tol)
                   : geometric_ratio_tail(q, m, tol);
}

}  // namespace stopsmith
