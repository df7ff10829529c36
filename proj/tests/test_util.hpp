#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <vector>

#include "stopsmith/permutation.hpp"

namespace test_util {

// Visits all n! permutations of {1..n} in lexicographic order.
inline void for_each_permutation(int n,
                                 const std::function<void(const stopsmith::Permutation&)>& fn) {
    std::vector<std::int32_t> values(static_cast<std::size_t>(n));
    std::iota(values.begin(), values.end(), 1);
    do {
        fn(stopsmith::Permutation::unchecked(values));
    } while (std::next_permutation(values.begin(), values.end()));
}

inline stopsmith::Permutation perm(std::initializer_list<std::int32_t> values) {
    return stopsmith::Permutation(std::vector<std::int32_t>(values));
}

}  // namespace test_util
