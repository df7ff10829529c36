#pragma once

#include <optional>
#include <string>
#include <vector>

#include "stopsmith/weights.hpp"

namespace stopsmith {

// Exact success probabilities of the cutoff strategy (reject the first m
// items, then stop on the first later record; formulas below, O(n-m) each).

// Uniform arrival order, either rank direction:
//   m = 0: 1/n;  m >= 1: (m/n) * sum_{j=m+1..n} 1/(j-1).
double classical_exact(int n, int m);

// Mallows(q) arrivals, the largest item is best. For q > 1 the printed
// form q^{n-m-1}(1-q^m)(1-q)/(1-q^n) * sum 1/(1-q^{j-1}) is rearranged as
// ((q-1)/q) (1-q^{-m})/(1-q^{-n}) * sum 1/(q^{j-1}-1) so nothing overflows;
// q = 1 routes to classical_exact.
double mallows_up_exact(int n, int m, double q);

// Mallows(q) arrivals, the smallest item is best. Equals
// mallows_up_exact(n, m, 1/q); evaluated from its own branch forms
//   m = 0: (1-q)/(1-q^n);  m >= 1: (1-q)(1-q^m)/(1-q^n) * sum q^{j-1}/(1-q^{j-1}).
double mallows_down_exact(int n, int m, double q);

// Inverse-Luce arrivals with the given weights, the smallest item is best:
//   m = 0: theta_1/T_n;  m >= 1: (T_m/T_n) * sum_{j=m+1..n} theta_j/T_{j-1},
// where T_j is the weight prefix sum.
double luce_inv_down_exact(int n, int m, const WeightVector& w);

// Whole threshold range at once, O(n) via suffix sums; out[m] is the
// success probability at cutoff m.
std::vector<double> classical_sweep(int n);
std::vector<double> mallows_up_sweep(int n, double q);
std::vector<double> mallows_down_sweep(int n, double q);
std::vector<double> luce_inv_down_sweep(int n, const WeightVector& w);

// A closed-form family with its parameters fixed, as selected on the CLI.
class ExactFamily {
public:
    enum class Kind { Classical, MallowsUp, MallowsDown, LuceInvDown };

    static ExactFamily classical();
    static ExactFamily mallows_up(double q);
    static ExactFamily mallows_down(double q);
    static ExactFamily luce_inv_down(WeightVector w);

    // Names: classical, mallows-up, mallows-down, luce-inv-down.
    static ExactFamily parse(const std::string& name, std::optional<double> q,
                             std::optional<WeightVector> w);

    Kind kind() const { return kind_; }
    double q() const { return q_; }
    const std::optional<WeightVector>& weights() const { return weights_; }
    std::string name() const;

    // For luce-inv-down the weights must match n.
    double evaluate(int n, int m) const;
    std::vector<double> sweep(int n) const;

private:
    ExactFamily(Kind kind, double q, std::optional<WeightVector> w)
        : kind_(kind), q_(q), weights_(std::move(w)) {}

    Kind kind_;
    double q_;
    std::optional<WeightVector> weights_;
};

struct ThresholdOptimum {
    int m = 0;
    double value = 0.0;
};

// Exhaustive argmax over m in {0..n-1}; the smallest maximiser wins ties.
ThresholdOptimum best_threshold(const std::vector<double>& values);
ThresholdOptimum optimize_threshold(const ExactFamily& family, int n);

// q-series tails used by the fixed-q optimum:
//   q > 1:      sum_{j=m}^inf 1/(q^j - 1)
//   q in (0,1): sum_{j=m}^inf q^j/(1 - q^j)
// Truncates once a geometric bound on the remainder drops below
// tol * partial sum. m >= 1.
double tail_sum(double q, int m, double tol = 1e-14);

}  // namespace stopsmith
