#pragma once

#include <cstdint>
#include <vector>

#include "stopsmith/permutation.hpp"

namespace stopsmith {

// Insertion code of a permutation. Entry j (for j = 2..n) counts how many
// smaller values stand to the right of j in one-line notation, so each
// entry lies in {0..j-1} and the entries total the inversion count.
class LehmerCode {
public:
    // entries[j-2] holds the count for value j; validates the ranges.
    LehmerCode(int n, std::vector<std::int32_t> entries);

    int size() const { return n_; }

    // Count for value j, j in {2..n}.
    std::int32_t entry(int j) const {
        return entries_[static_cast<std::size_t>(j) - 2];
    }

    const std::vector<std::int32_t>& entries() const { return entries_; }

    // Sum of the entries; equals inversion_count of the decoded permutation.
    std::int64_t total() const;

private:
    int n_;
    std::vector<std::int32_t> entries_;
};

// Rebuilds the permutation: place 1, then for j = 2..n insert j so that
// exactly entry(j) existing values are to its right. O(n log n) via an
// order-statistic tree over the final slots.
Permutation lehmer_decode(const LehmerCode& code);

LehmerCode lehmer_encode(const Permutation& p);

}  // namespace stopsmith
