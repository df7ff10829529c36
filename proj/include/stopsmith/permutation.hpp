#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "stopsmith/errors.hpp"

namespace stopsmith {

// Which end of the scale is the highest rank: Min means item 1 is best,
// Max means item n is best.
enum class RankDirection { Min, Max };

RankDirection parse_direction(const std::string& text);
std::string direction_name(RankDirection dir);

// A permutation of {1,...,n} in one-line notation, 1-based values.
class Permutation {
public:
    // Validates that values is a bijection of {1..n}, n >= 1.
    explicit Permutation(std::vector<std::int32_t> values);

    static Permutation identity(int n);

    // Parses space-separated 1-based values, e.g. "3 1 4 2".
    static Permutation from_one_line(const std::string& text);

    // Skips bijection validation; for samplers whose output is valid by
    // construction.
    static Permutation unchecked(std::vector<std::int32_t> values);

    int size() const { return static_cast<int>(values_.size()); }

    // Value at 1-based position i.
    std::int32_t at(int i) const {
        return values_[static_cast<std::size_t>(i) - 1];
    }

    const std::vector<std::int32_t>& values() const { return values_; }

    bool operator==(const Permutation& other) const = default;

private:
    Permutation() = default;

    std::vector<std::int32_t> values_;
};

Permutation inverse(const Permutation& p);

// complement(p)_i = n + 1 - p_i.
Permutation complement(const Permutation& p);

// reverse(p) = p_n ... p_1.
Permutation reverse(const Permutation& p);

// Number of pairs i < j with p_j < p_i. 0 for the identity, n(n-1)/2 for
// the reversal. O(n log n).
std::int64_t inversion_count(const Permutation& p);

// Rank vector of a sequence of distinct reals: entry i is the rank of
// values[i], with 1 for the smallest. Throws DuplicateEntries when two
// entries compare equal.
Permutation reduce_sequence(std::span<const double> values);

// Running-record flags: out[j-1] is true iff p_j strictly beats every
// earlier entry in the given direction. Position 1 is always a record.
std::vector<bool> record_indicators(const Permutation& p, RankDirection dir);

// Space-separated 1-based values on one line.
std::string to_one_line(const Permutation& p);

}  // namespace stopsmith
