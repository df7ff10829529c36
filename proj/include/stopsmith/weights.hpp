#pragma once

#include <string>
#include <vector>

#include "stopsmith/errors.hpp"

namespace stopsmith {

// Positive item weights with cached total and prefix sums. Immutable.
class WeightVector {
public:
    // Every entry must be finite and > 0.
    explicit WeightVector(std::vector<double> theta);

    static WeightVector unit(int n);               // theta_i = 1
    static WeightVector geometric(int n, double q);  // theta_i = q^i
    static WeightVector sukhatme(int n);           // theta_j = n + 1 - j
    static WeightVector reverse_sukhatme(int n);   // theta_j = j

    int size() const { return static_cast<int>(theta_.size()); }
    double total() const { return total_; }

    // 1-based.
    double at(int i) const { return theta_[static_cast<std::size_t>(i) - 1]; }

    const std::vector<double>& theta() const { return theta_; }

    // prefix()[j] = theta_1 + ... + theta_j, with prefix()[0] = 0.
    const std::vector<double>& prefix() const { return prefix_; }

    bool operator==(const WeightVector& other) const {
        return theta_ == other.theta_;
    }

private:
    std::vector<double> theta_;
    std::vector<double> prefix_;
    double total_ = 0.0;
};

// Accepts "1,2,3"-style inline lists and the shorthands unit, geom:<q>,
// sukhatme, rev-sukhatme. Shorthands require n >= 1; inline lists take
// their length from the list (n = 0) or must match n when it is given.
WeightVector parse_weights(const std::string& text, int n);

// One weight per line; blank lines are ignored.
WeightVector load_weights_file(const std::string& path);

}  // namespace stopsmith
