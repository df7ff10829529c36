#pragma once

#include <string>

#include "stopsmith/errors.hpp"
#include "stopsmith/permutation.hpp"

namespace stopsmith {

// Sign of the critical/intermediate window q_n = 1 +- c/n^alpha.
enum class WindowSign { Plus, Minus };

WindowSign parse_sign(const std::string& text);
std::string sign_name(WindowSign sign);

enum class ThresholdKind {
    Fraction,           // m* ~ value * n
    Count,              // m* = value, independent of n
    Deficiency,         // m* = n - value
    ScaledCount,        // m* ~ value * n^alpha
    ScaledDeficiency,   // n - m* ~ value * n^alpha
};

std::string threshold_kind_name(ThresholdKind kind);

// Limiting optimal cutoff and success probability for one asymptotic regime.
struct LimitResult {
    ThresholdKind kind = ThresholdKind::Fraction;
    double value = 0.0;
    double limit_prob = 0.0;
    bool co_optimal = false;  // the next-smaller cutoff attains the same limit
};

// Fixed q != 1, Mallows arrivals. Four cases by (direction, q vs 1):
//  - Max, q > 1: finite m* from the tail-sum criterion; limit
//    ((q-1)/q)(1-q^{-m*}) tail_sum(q, m*), or (q-1)/q when m* = 0.
//  - Max, q < 1: m* = n - L with L the unique integer in
//    [q/(1-q), 1/(1-q)); limit (1-q) q^{L-1} L.
//  - Min, q < 1: finite m* from the mirrored tail criterion; limit
//    (1-q)(1-q^{m*}) tail_sum(q, m*), or 1-q when m* = 0.
//  - Min, q > 1: m* = n - L with L in [1/(q-1), q/(q-1)); limit (q-1) L / q^L.
// tol controls the tail-sum truncation.
LimitResult fixed_q_optimum(double q, RankDirection dir, double tol = 1e-14);

// q_n = 1 +- c/n. The optimal cutoff fraction is
//   (1/c) log(1 + (e^c-1)/e)                 for (Max,-) and (Min,+),
//   (1/c) log(1 + (1-e^{-c})/(e-1+e^{-c}))   for (Max,+) and (Min,-),
// and the limiting success probability is 1/e in all four cases.
LimitResult critical_window_fraction(double c, RankDirection dir, WindowSign sign);

// q_n = 1 +- c/n^alpha with alpha in (0,1). (Max,+) and (Min,-): cutoff
// ~ (1-log(e-1)) n^alpha / c; (Max,-) and (Min,+): n - cutoff ~ n^alpha/c.
// The limit is 1/e throughout.
LimitResult intermediate_regime(double c, double alpha, RankDirection dir, WindowSign sign);

enum class SukhatmeKind { Standard, Reverse };

// Smallest item best, inverse-Luce arrivals with weights n+1-j (standard)
// or j (reverse): cutoff fractions 1-sqrt(1-1/e) and e^{-1/2}, limit 1/e.
LimitResult sukhatme_optimal_fraction(SukhatmeKind kind);

// One parameter regime of q_n for the Mallows cutoff problem.
struct AsymptoticRegime {
    enum class Kind { FixedQ, CriticalWindow, Intermediate, Uniform };

    Kind kind = Kind::Uniform;
    double q = 1.0;           // FixedQ
    double c = 1.0;           // windows
    double alpha = 0.5;       // Intermediate
    WindowSign sign = WindowSign::Minus;

    static AsymptoticRegime fixed_q(double q);
    static AsymptoticRegime critical_window(double c, WindowSign sign);
    static AsymptoticRegime intermediate(double c, double alpha, WindowSign sign);
    static AsymptoticRegime uniform();
};

// Dispatches to the regime-specific optimum; the uniform regime is the
// classical fraction 1/e with limit 1/e.
LimitResult regime_optimum(const AsymptoticRegime& regime, RankDirection dir,
                           double tol = 1e-14);

// ---- limiting success-probability curves ----
// The finite-n exact formulas converge to these pointwise; the tests pin
// that convergence.

// Cutoff fraction b in (0,1) under q_n = 1 + c/n (and, by duality, the
// matching window of the other sign/direction):
//   ((1-e^{-bc})/(1-e^{-c})) log((1-e^{-c})/(1-e^{-bc})).
double critical_window_curve(double b, double c);

// Scaled cutoff b in (0,inf) under q_n = 1 +- c/n^alpha:
//   -(1-e^{-cb}) log(1-e^{-cb}).
double intermediate_window_curve(double b, double c);

// Fixed cutoff m >= 0 under fixed q > 1 (Max): the unimodal factor
//   G(0) = 1,  G(m) = (1-q^{-m}) sum_{j=m}^inf 1/(q^j-1) for m >= 1;
// the limiting success probability is ((q-1)/q) G(m).
double fixed_q_curve(int m, double q);

// Cutoff fraction b in (0,1), Sukhatme weights:
//   -(2b-b^2) log(2b-b^2).
// The prefactor is 2(1-(1-b)^2)/2 = 2b-b^2 from the integral form; it is
// pinned against luce_inv_down_exact at n = 1e5 in the asymptotics tests
// (the alternative prefactor 2b-2b^2 misses by ~0.06 at b = 0.3).
double sukhatme_curve(double b);

// Cutoff fraction b in (0,1], reverse Sukhatme weights: -2 b^2 log b.
double reverse_sukhatme_curve(double b);

}  // namespace stopsmith
