#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "doctest.h"
#include "tightpow/rng.hpp"

using namespace tightpow;

TEST_CASE("philox known-answer vectors") {
    using C = std::array<std::uint32_t, 4>;
    using K = std::array<std::uint32_t, 2>;
    CHECK(philox4x32(C{0, 0, 0, 0}, K{0, 0}) == C{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
    CHECK(philox4x32(C{0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, K{0xffffffff, 0xffffffff}) ==
          C{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
    CHECK(philox4x32(C{0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, K{0xa4093822, 0x299f31d0}) ==
          C{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("streams are pure functions of seed and id") {
    RngStream a(42, 9), b(42, 9), c(42, 10), d(43, 9);
    std::vector<std::uint64_t> va, vb, vc, vd;
    for (int i = 0; i < 64; ++i) {
        va.push_back(a());
        vb.push_back(b());
        vc.push_back(c());
        vd.push_back(d());
    }
    CHECK(va == vb);
    CHECK(va != vc);
    CHECK(va != vd);
    CHECK(a.derive(1).next_u64() == b.derive(1).next_u64());
    CHECK(a.derive(1).next_u64() != a.derive(2).next_u64());
    CHECK(hash_string("absorbers") == hash_string("absorbers"));
    CHECK(hash_string("absorbers") != hash_string("connectors"));
}

TEST_CASE("uniform lies in [0,1) with the right mean") {
    RngStream r(1, 2);
    double sum = 0;
    const int N = 200000;
    for (int i = 0; i < N; ++i) {
        const double u = r.uniform();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        sum += u;
    }
    // sd of the mean is 1/sqrt(12 N) ~ 6.5e-4.
    CHECK(std::fabs(sum / N - 0.5) < 4e-3);
    CHECK(r.uniform_open0() > 0.0);
}

TEST_CASE("below is unbiased and in range") {
    RngStream r(7, 0);
    for (std::uint64_t bound : {1ull, 2ull, 3ull, 7ull, 10ull}) {
        std::vector<int> hits(bound, 0);
        const int N = 20000 * static_cast<int>(bound);
        for (int i = 0; i < N; ++i) {
            auto x = r.below(bound);
            REQUIRE(x < bound);
            ++hits[x];
        }
        // Each cell ~ Binomial(N, 1/bound); allow 5 sd.
        const double sd = std::sqrt(N * (1.0 / bound) * (1 - 1.0 / bound));
        for (int h : hits) CHECK(std::fabs(h - N / double(bound)) <= 5 * sd + 1e-9);
    }
}

TEST_CASE("shuffle is a permutation") {
    RngStream r(3, 3);
    std::vector<int> v(50);
    std::iota(v.begin(), v.end(), 0);
    r.shuffle(v);
    CHECK(std::set<int>(v.begin(), v.end()).size() == 50);
    std::vector<int> sorted = v;
    std::sort(sorted.begin(), sorted.end());
    CHECK(sorted.front() == 0);
    CHECK(sorted.back() == 49);
}
