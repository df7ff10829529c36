#include "stopsmith/lehmer.hpp"

#include <numeric>

#include "fenwick.hpp"

namespace stopsmith {

LehmerCode::LehmerCode(int n, std::vector<std::int32_t> entries) : n_(n) {
    if (n < 1) throw BadParameter("code size must be >= 1");
    if (entries.size() != static_cast<std::size_t>(n - 1))
        throw BadParameter("code must have n-1 entries");
    for (int j = 2; j <= n; ++j) {
        const std::int32_t x = entries[static_cast<std::size_t>(j) - 2];
        if (x < 0 || x > j - 1)
            throw BadParameter("code entry for value " + std::to_string(j) +
                               " outside {0.." + std::to_string(j - 1) + "}");
    }
    entries_ = std::move(entries);
}

std::int64_t LehmerCode::total() const {
    return std::accumulate(entries_.begin(), entries_.end(), std::int64_t{0});
}

Permutation lehmer_decode(const LehmerCode& code) {
    const int n = code.size();
    std::vector<std::int32_t> values(static_cast<std::size_t>(n));
    // Peel insertions in reverse: value j was inserted with entry(j) of the
    // values 1..j-1 to its right, i.e. at rank j - entry(j) among the slots
    // still free at that point.
    detail::Fenwick<std::int32_t> free_slots(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) free_slots.add(static_cast<std::size_t>(i), 1);
    for (int j = n; j >= 2; --j) {
        const std::int32_t rank = j - code.entry(j);
        const std::size_t slot = free_slots.lower_bound(rank);
        values[slot - 1] = static_cast<std::int32_t>(j);
        free_slots.add(slot, -1);
    }
    const std::size_t slot = free_slots.lower_bound(1);
    values[slot - 1] = 1;
    return Permutation::unchecked(std::move(values));
}

LehmerCode lehmer_encode(const Permutation& p) {
    const int n = p.size();
    std::vector<std::int32_t> position(static_cast<std::size_t>(n) + 1);
    for (int i = 1; i <= n; ++i) position[p.at(i)] = static_cast<std::int32_t>(i);
    // Insert positions of values 1..j-1, then count how many lie right of j.
    detail::Fenwick<std::int32_t> placed(static_cast<std::size_t>(n));
    std::vector<std::int32_t> entries(static_cast<std::size_t>(n) - 1);
    placed.add(static_cast<std::size_t>(position[1]), 1);
    for (int j = 2; j <= n; ++j) {
        const std::int32_t pos = position[j];
        entries[static_cast<std::size_t>(j) - 2] =
            static_cast<std::int32_t>((j - 1) - placed.prefix(static_cast<std::size_t>(pos)));
        placed.add(static_cast<std::size_t>(pos), 1);
    }
    return LehmerCode(n, std::move(entries));
}

}  // namespace stopsmith
