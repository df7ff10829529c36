#include "stopsmith/asymptotics.hpp"

#include <cmath>

#include "stopsmith/closed_forms.hpp"
#include "stopsmith/log_space.hpp"

namespace stopsmith {

WindowSign parse_sign(const std::string& text) {
    if (text == "plus") return WindowSign::Plus;
    if (text == "minus") return WindowSign::Minus;
    throw ParseError("unknown sign '" + text + "' (expected plus or minus)");
}

std::string sign_name(WindowSign sign) {
    return sign == WindowSign::Plus ? "plus" : "minus";
}

std::string threshold_kind_name(ThresholdKind kind) {
    switch (kind) {
        case ThresholdKind::Fraction: return "fraction";
        case ThresholdKind::Count: return "count";
        case ThresholdKind::Deficiency: return "deficiency";
        case ThresholdKind::ScaledCount: return "scaled-count";
        case ThresholdKind::ScaledDeficiency: return "scaled-deficiency";
    }
    return "?";
}

namespace {

constexpr double kEqualityTol = 1e-12;

// Optimal-cutoff limits never fall below 1/e; enforce the contract on
// every result we hand out.
LimitResult checked(LimitResult result) {
    if (!(result.limit_prob >= kInvE - 1e-9) || !(result.limit_prob <= 1.0 + 1e-12))
        throw DomainError("limiting success probability outside [1/e, 1]");
    return result;
}

// Unique integer in [a, a+1), robust to a sitting on an integer up to
// rounding noise. When a is integral the deficiencies a and a+1 give the
// same limit, so the caller reports co-optimality.
struct DeficiencyWindow {
    int value;
    bool boundary;
};

DeficiencyWindow unique_integer_in(double a) {
    const double rounded = std::round(a);
    if (std::abs(a - rounded) <= 1e-9 * std::max(1.0, std::abs(a)))
        return {static_cast<int>(rounded), true};
    return {static_cast<int>(std::ceil(a)), false};
}

// Largest m >= 1 with tail_sum(q, m) >= threshold (0 when already m = 1
// fails). Forward scan of the decreasing tails; near-equality within
// kEqualityTol counts as reaching the threshold and flags co-optimality.
struct TailScan {
    int m_star;
    bool co_optimal;
};

TailScan scan_tail_criterion(double q, double threshold, double tol) {
    const double lq = std::log(q);
    double tail = tail_sum(q, 1, tol);
    const double slack = kEqualityTol * threshold;
    if (tail < threshold - slack) return {0, false};
    int m = 1;
    for (;;) {
        // drop the leading term: tail_{m+1} = tail_m - r^m/(1-r^m), r = min(q,1/q)
        const double term =
            q > 1.0 ? 1.0 / std::expm1(m * lq) : 1.0 / std::expm1(-m * lq);
        const double next = tail - term;
        if (next < threshold - slack) {
            const bool equal = std::abs(tail_sum(q, m, tol) - threshold) <= slack;
            return {m, equal};
        }
        tail = next;
        ++m;
    }
}

}  // namespace

LimitResult fixed_q_optimum(double q, RankDirection dir, double tol) {
    if (!(q > 0.0) || !std::isfinite(q)) throw BadParameter("q must be > 0");
    if (q == 1.0)
        throw BadParameter("q = 1 is the uniform regime; fixed-q needs q != 1");

    if (dir == RankDirection::Max && q > 1.0) {
        const TailScan scan = scan_tail_criterion(q, q / (q - 1.0), tol);
        if (scan.m_star == 0)
            return checked({ThresholdKind::Count, 0.0, (q - 1.0) / q, false});
        const double limit = ((q - 1.0) / q) * one_minus_pow(1.0 / q, scan.m_star) *
                             tail_sum(q, scan.m_star, tol);
        return checked({ThresholdKind::Count, static_cast<double>(scan.m_star), limit,
                        scan.co_optimal});
    }
    if (dir == RankDirection::Min && q < 1.0) {
        const TailScan scan = scan_tail_criterion(q, 1.0 / (1.0 - q), tol);
        if (scan.m_star == 0) return checked({ThresholdKind::Count, 0.0, 1.0 - q, false});
        const double limit =
            (1.0 - q) * one_minus_pow(q, scan.m_star) * tail_sum(q, scan.m_star, tol);
        return checked({ThresholdKind::Count, static_cast<double>(scan.m_star), limit,
                        scan.co_optimal});
    }
    if (dir == RankDirection::Max) {  // q < 1
        const DeficiencyWindow window = unique_integer_in(q / (1.0 - q));
        const double limit =
            (1.0 - q) * std::pow(q, window.value - 1) * static_cast<double>(window.value);
        return checked({ThresholdKind::Deficiency, static_cast<double>(window.value),
                        limit, window.boundary});
    }
    // Min, q > 1
    const DeficiencyWindow window = unique_integer_in(1.0 / (q - 1.0));
    const double limit =
        (q - 1.0) * static_cast<double>(window.value) / std::pow(q, window.value);
    return checked({ThresholdKind::Deficiency, static_cast<double>(window.value), limit,
                    window.boundary});
}

LimitResult critical_window_fraction(double c, RankDirection dir, WindowSign sign) {
    if (!(c > 0.0) || !std::isfinite(c)) throw BadParameter("c must be > 0");
    const bool first_form = (dir == RankDirection::Max) == (sign == WindowSign::Minus);
    double b;
    if (first_form) {
        // (1/c) log(1 + (e^c-1)/e); rewritten past the expm1 overflow point
        b = c < 708.0 ? std::log1p(std::expm1(c) / std::exp(1.0)) / c
                      : 1.0 - 1.0 / c + std::log1p((std::exp(1.0) - 1.0) * std::exp(-c)) / c;
    } else {
        // (1/c) log(1 + (1-e^{-c})/(e-1+e^{-c}))
        b = std::log1p(-std::expm1(-c) / (std::exp(1.0) - 1.0 + std::exp(-c))) / c;
    }
    return checked({ThresholdKind::Fraction, b, kInvE, false});
}

LimitResult intermediate_regime(double c, double alpha, RankDirection dir,
                                WindowSign sign) {
    if (!(c > 0.0) || !std::isfinite(c)) throw BadParameter("c must be > 0");
    if (!(alpha > 0.0) || !(alpha < 1.0))
        throw BadParameter("alpha must lie in (0, 1)");
    const bool deficiency_form = (dir == RankDirection::Max) == (sign == WindowSign::Minus);
    if (deficiency_form)
        return checked({ThresholdKind::ScaledDeficiency, 1.0 / c, kInvE, false});
    const double coefficient = (1.0 - std::log(std::exp(1.0) - 1.0)) / c;
    return checked({ThresholdKind::ScaledCount, coefficient, kInvE, false});
}

LimitResult sukhatme_optimal_fraction(SukhatmeKind kind) {
    const double b = kind == SukhatmeKind::Standard ? 1.0 - std::sqrt(1.0 - kInvE)
                                                    : std::exp(-0.5);
    return checked({ThresholdKind::Fraction, b, kInvE, false});
}

AsymptoticRegime AsymptoticRegime::fixed_q(double q) {
    AsymptoticRegime r;
    r.kind = Kind::FixedQ;
    r.q = q;
    return r;
}

AsymptoticRegime AsymptoticRegime::critical_window(double c, WindowSign sign) {
    AsymptoticRegime r;
    r.kind = Kind::CriticalWindow;
    r.c = c;
    r.sign = sign;
    return r;
}

AsymptoticRegime AsymptoticRegime::intermediate(double c, double alpha, WindowSign sign) {
    AsymptoticRegime r;
    r.kind = Kind::Intermediate;
    r.c = c;
    r.alpha = alpha;
    r.sign = sign;
    return r;
}

AsymptoticRegime AsymptoticRegime::uniform() { return {}; }

LimitResult regime_optimum(const AsymptoticRegime& regime, RankDirection dir, double tol) {
    switch (regime.kind) {
        case AsymptoticRegime::Kind::FixedQ:
            return fixed_q_optimum(regime.q, dir, tol);
        case AsymptoticRegime::Kind::CriticalWindow:
            return critical_window_fraction(regime.c, dir, regime.sign);
        case AsymptoticRegime::Kind::Intermediate:
            return intermediate_regime(regime.c, regime.alpha, dir, regime.sign);
        case AsymptoticRegime::Kind::Uniform:
            return checked({ThresholdKind::Fraction, kInvE, kInvE, false});
    }
    throw BadParameter("unknown regime");
}

// ---- limit curves ----

double critical_window_curve(double b, double c) {
    if (!(c > 0.0)) throw DomainError("c must be > 0");
    if (!(b > 0.0) || !(b < 1.0)) throw DomainError("b must lie in (0, 1)");
    const double x = -std::expm1(-b * c);  // 1 - e^{-bc}
    const double y = -std::expm1(-c);      // 1 - e^{-c}
    return (x / y) * std::log(y / x);
}

double intermediate_window_curve(double b, double c) {
    if (!(c > 0.0)) throw DomainError("c must be > 0");
    if (!(b > 0.0)) throw DomainError("b must be > 0");
    const double x = -std::expm1(-b * c);
    return -x * std::log(x);
}

double fixed_q_curve(int m, double q) {
    if (!(q > 1.0)) throw DomainError("the fixed-q curve needs q > 1");
    if (m < 0) throw DomainError("m must be >= 0");
    if (m == 0) return 1.0;
    return one_minus_pow(1.0 / q, m) * tail_sum(q, m);
}

double sukhatme_curve(double b) {
    if (!(b > 0.0) || !(b < 1.0)) throw DomainError("b must lie in (0, 1)");
    const double x = 2.0 * b - b * b;
    return -x * std::log(x);
}

double reverse_sukhatme_curve(double b) {
    if (!(b > 0.0) || b > 1.0) throw DomainError("b must lie in (0, 1]");
    return -2.0 * b * b * std::log(b);
}

}  // namespace stopsmith
