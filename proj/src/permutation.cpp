#include "stopsmith/permutation.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "fenwick.hpp"

namespace stopsmith {

RankDirection parse_direction(const std::string& text) {
    if (text == "min") return RankDirection::Min;
    if (text == "max") return RankDirection::Max;
    throw ParseError("unknown direction '" + text + "' (expected min or max)");
}

std::string direction_name(RankDirection dir) {
    return dir == RankDirection::Min ? "min" : "max";
}

Permutation::Permutation(std::vector<std::int32_t> values) {
    const auto n = values.size();
    if (n == 0) throw BadParameter("permutation must have size >= 1");
    std::vector<bool> seen(n, false);
    for (const auto v : values) {
        if (v < 1 || static_cast<std::size_t>(v) > n || seen[v - 1])
            throw BadParameter("values are not a bijection of {1..n}");
        seen[v - 1] = true;
    }
    values_ = std::move(values);
}

Permutation Permutation::identity(int n) {
    if (n < 1) throw BadParameter("permutation must have size >= 1");
    std::vector<std::int32_t> v(static_cast<std::size_t>(n));
    std::iota(v.begin(), v.end(), 1);
    return unchecked(std::move(v));
}

Permutation Permutation::from_one_line(const std::string& text) {
    std::istringstream in(text);
    std::vector<std::int32_t> v;
    std::int64_t x = 0;
    while (in >> x) {
        if (x < 1 || x > (1 << 30)) throw ParseError("permutation entry out of range");
        v.push_back(static_cast<std::int32_t>(x));
    }
    if (!in.eof()) throw ParseError("permutation must be space-separated integers");
    if (v.empty()) throw ParseError("empty permutation");
    return Permutation(std::move(v));
}

Permutation Permutation::unchecked(std::vector<std::int32_t> values) {
    Permutation p;
    p.values_ = std::move(values);
    return p;
}

Permutation inverse(const Permutation& p) {
    const int n = p.size();
    std::vector<std::int32_t> inv(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) inv[p.at(i) - 1] = static_cast<std::int32_t>(i);
    return Permutation::unchecked(std::move(inv));
}

Permutation complement(const Permutation& p) {
    const int n = p.size();
    std::vector<std::int32_t> out(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i) out[i - 1] = static_cast<std::int32_t>(n + 1 - p.at(i));
    return Permutation::unchecked(std::move(out));
}

Permutation reverse(const Permutation& p) {
    std::vector<std::int32_t> out(p.values().rbegin(), p.values().rend());
    return Permutation::unchecked(std::move(out));
}

std::int64_t inversion_count(const Permutation& p) {
    const int n = p.size();
    detail::Fenwick<std::int32_t> seen(static_cast<std::size_t>(n));
    std::int64_t inversions = 0;
    for (int i = 1; i <= n; ++i) {
        const std::int32_t v = p.at(i);
        // earlier values greater than v
        inversions += (i - 1) - seen.prefix(static_cast<std::size_t>(v));
        seen.add(static_cast<std::size_t>(v), 1);
    }
    return inversions;
}

Permutation reduce_sequence(std::span<const double> values) {
    const std::size_t n = values.size();
    if (n == 0) throw BadParameter("sequence must have size >= 1");
    std::vector<std::int32_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::int32_t a, std::int32_t b) {
        return values[static_cast<std::size_t>(a)] < values[static_cast<std::size_t>(b)];
    });
    for (std::size_t k = 1; k < n; ++k) {
        if (values[static_cast<std::size_t>(order[k - 1])] ==
            values[static_cast<std::size_t>(order[k])])
            throw DuplicateEntries("sequence entries must be pairwise distinct");
    }
    std::vector<std::int32_t> ranks(n);
    for (std::size_t k = 0; k < n; ++k)
        ranks[static_cast<std::size_t>(order[k])] = static_cast<std::int32_t>(k + 1);
    return Permutation::unchecked(std::move(ranks));
}

std::vector<bool> record_indicators(const Permutation& p, RankDirection dir) {
    const int n = p.size();
    std::vector<bool> records(static_cast<std::size_t>(n), false);
    records[0] = true;
    std::int32_t best = p.at(1);
    for (int j = 2; j <= n; ++j) {
        const std::int32_t v = p.at(j);
        const bool beat = dir == RankDirection::Min ? v < best : v > best;
        if (beat) {
            records[static_cast<std::size_t>(j) - 1] = true;
            best = v;
        }
    }
    return records;
}

std::string to_one_line(const Permutation& p) {
    std::string out;
    for (int i = 1; i <= p.size(); ++i) {
        if (i > 1) out += ' ';
        out += std::to_string(p.at(i));
    }
    return out;
}

}  // namespace stopsmith
