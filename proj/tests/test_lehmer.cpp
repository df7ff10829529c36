#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "stopsmith/lehmer.hpp"
#include "stopsmith/rng.hpp"
#include "test_util.hpp"

using namespace stopsmith;
using test_util::for_each_permutation;
using test_util::perm;

TEST_CASE("code entry ranges are validated") {
    CHECK_THROWS_AS(LehmerCode(3, {2, 0}), BadParameter);   // X_2 > 1
    CHECK_THROWS_AS(LehmerCode(3, {0, 3}), BadParameter);   // X_3 > 2
    CHECK_THROWS_AS(LehmerCode(3, {0}), BadParameter);      // wrong length
    CHECK(LehmerCode(3, {1, 0}).total() == 1);
    CHECK(LehmerCode(1, {}).size() == 1);
}

TEST_CASE("decode examples") {
    CHECK(lehmer_decode(LehmerCode(3, {1, 0})) == perm({2, 1, 3}));
    CHECK(lehmer_decode(LehmerCode(1, {})) == Permutation::identity(1));

    for (int n = 1; n <= 8; ++n) {
        std::vector<std::int32_t> zeros(static_cast<std::size_t>(n) - 1, 0);
        CHECK(lehmer_decode(LehmerCode(n, zeros)) == Permutation::identity(n));

        std::vector<std::int32_t> maxed;
        for (int j = 2; j <= n; ++j) maxed.push_back(static_cast<std::int32_t>(j - 1));
        const Permutation descending = lehmer_decode(LehmerCode(n, maxed));
        for (int i = 1; i <= n; ++i) CHECK(descending.at(i) == n + 1 - i);
    }
}

TEST_CASE("encode examples") {
    CHECK(lehmer_encode(Permutation::identity(5)).total() == 0);
    CHECK(lehmer_encode(perm({2, 1, 3})).entries() == std::vector<std::int32_t>{1, 0});
    CHECK(lehmer_encode(perm({3, 2, 1})).entries() == std::vector<std::int32_t>{1, 2});
}

TEST_CASE("decode inverts encode on all of S_n, n<=7") {
    for (int n = 1; n <= 7; ++n) {
        for_each_permutation(n, [](const Permutation& p) {
            CHECK(lehmer_decode(lehmer_encode(p)) == p);
        });
    }
}

TEST_CASE("code total equals the inversion count, random codes up to n=1000") {
    Rng rng(97);
    for (const int n : {2, 3, 10, 137, 1000}) {
        for (int round = 0; round < 5; ++round) {
            std::vector<std::int32_t> entries;
            for (int j = 2; j <= n; ++j)
                entries.push_back(static_cast<std::int32_t>(rng.below(static_cast<std::uint64_t>(j))));
            const LehmerCode code(n, std::move(entries));
            const Permutation p = lehmer_decode(code);
            CHECK(inversion_count(p) == code.total());
            CHECK(lehmer_encode(p).entries() == code.entries());
        }
    }
}
