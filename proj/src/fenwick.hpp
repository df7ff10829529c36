#pragma once

#include <cstddef>
#include <vector>

namespace stopsmith::detail {

// Fenwick tree over 1-based indices with prefix-search. T is a count type
// (order statistics) or double (weighted picking).
template <typename T>
class Fenwick {
public:
    explicit Fenwick(std::size_t n) : n_(n), tree_(n + 1, T{}) {
        top_ = 1;
        while (top_ * 2 <= n_) top_ *= 2;
    }

    void add(std::size_t i, T delta) {
        for (; i <= n_; i += i & (~i + 1)) tree_[i] += delta;
    }

    // Sum of entries 1..i.
    T prefix(std::size_t i) const {
        T s{};
        for (; i > 0; i -= i & (~i + 1)) s += tree_[i];
        return s;
    }

    // Smallest index i with prefix(i) >= target (target > 0, target <= total).
    std::size_t lower_bound(T target) const {
        std::size_t pos = 0;
        T remaining = target;
        for (std::size_t step = top_; step > 0; step >>= 1) {
            const std::size_t next = pos + step;
            if (next <= n_ && tree_[next] < remaining) {
                pos = next;
                remaining -= tree_[next];
            }
        }
        return pos + 1;
    }

    std::size_t size() const { return n_; }

private:
    std::size_t n_;
    std::size_t top_;
    std::vector<T> tree_;
};

}  // namespace stopsmith::detail
