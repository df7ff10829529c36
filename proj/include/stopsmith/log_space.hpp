#pragma once

#include <cmath>

namespace stopsmith {

// log(e^x - 1) for x > 0, stable over the whole range.
inline double log_expm1(double x) {
    if (x > 36.7) return x + std::log1p(-std::exp(-x));
    if (x > 1e-8) return std::log(std::expm1(x));
    return std::log(x) + x / 2;  // e^x - 1 ~ x e^{x/2} as x -> 0
}

// 1 - q^k as -expm1(k log q); accurate for q near 1, where the naive
// form cancels.
inline double one_minus_pow(double q, double k) {
    return -std::expm1(k * std::log(q));
}

// log|1 - q^k| for q > 0, q != 1, k > 0.
inline double log_abs_one_minus_pow(double q, double k) {
    const double x = k * std::log(q);
    if (x > 0) return log_expm1(x);       // q > 1: q^k - 1
    return std::log(-std::expm1(x));      // q < 1: 1 - q^k
}

// Compensated accumulator for long sums of same-sign terms.
struct KahanSum {
    double sum = 0.0;
    double carry = 0.0;

    void add(double x) {
        const double y = x - carry;
        const double t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }

    double value() const { return sum; }
};

inline constexpr double kInvE = 0.36787944117144233;  // 1/e

}  // namespace stopsmith
