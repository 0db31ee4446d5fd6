#include <cmath>
#include <set>
#include <sstream>

#include "doctest.h"
#include "tightpow/combinatorics.hpp"

using namespace tightpow;

TEST_CASE("binomial matches Pascal's triangle") {
    std::vector<std::vector<std::uint64_t>> pascal(61, std::vector<std::uint64_t>(61, 0));
    for (int a = 0; a <= 60; ++a) {
        pascal[a][0] = 1;
        for (int b = 1; b <= a; ++b) pascal[a][b] = pascal[a - 1][b - 1] + (b <= a - 1 ? pascal[a - 1][b] : 0);
    }
    for (int a = 0; a <= 60; ++a)
        for (int b = 0; b <= 60; ++b) CHECK(binomial(a, b) == pascal[a][b]);
}

TEST_CASE("binomial overflow is reported") {
    CHECK(binomial(66, 33) == 7219428434016265740ull);
    CHECK_THROWS_AS(binomial(68, 34), std::overflow_error);
    CHECK(binomial(1'000'000, 1) == 1'000'000);
}

TEST_CASE("log helpers agree with direct products") {
    CHECK(log_binomial(10, 3) == doctest::Approx(std::log(120.0)).epsilon(1e-12));
    double direct = 0;
    for (int i = 0; i < 5; ++i) direct += std::log(30.0 - i);
    CHECK(log_falling_factorial(30, 5) == doctest::Approx(direct).epsilon(1e-12));
    CHECK(log_falling_factorial(30, 0) == 0.0);
    // Large b goes through lgamma.
    CHECK(log_falling_factorial(200, 100) ==
          doctest::Approx(std::lgamma(201.0) - std::lgamma(101.0)).epsilon(1e-10));
}

TEST_CASE("for_each_combination enumerates every subset once in lexicographic order") {
    std::vector<std::vector<int>> seen;
    for_each_combination(5, 3, [&](std::span<const int> idx) {
        seen.emplace_back(idx.begin(), idx.end());
        return true;
    });
    CHECK(seen.size() == 10);
    CHECK(std::is_sorted(seen.begin(), seen.end()));
    CHECK(std::set<std::vector<int>>(seen.begin(), seen.end()).size() == 10);
    int calls = 0;
    CHECK_FALSE(for_each_combination(6, 2, [&](std::span<const int>) { return ++calls < 4; }));
    CHECK(calls == 4);
    calls = 0;
    for_each_combination(4, 0, [&](std::span<const int> idx) {
        CHECK(idx.empty());
        ++calls;
        return true;
    });
    CHECK(calls == 1);
}

TEST_CASE("colex rank is a bijection onto [0, C(n,k)) and increases in colex order") {
    for (int k = 1; k <= 4; ++k) {
        const std::uint32_t n = 9;
        BinomialTable t(n, k);
        std::vector<std::vector<Vertex>> sets;
        for_each_combination(n, k, [&](std::span<const int> idx) {
            sets.emplace_back(idx.begin(), idx.end());
            return true;
        });
        // Colex: compare from the largest element down.
        std::sort(sets.begin(), sets.end(), [](const auto& a, const auto& b) {
            return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
        });
        for (std::size_t i = 0; i < sets.size(); ++i) {
            CHECK(t.rank(sets[i].data()) == i);
            std::vector<Vertex> back(k);
            t.unrank(i, back.data());
            CHECK(back == sets[i]);
        }
    }
}

TEST_CASE("Rational normalizes and compares exactly") {
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(-3, -6) == Rational(1, 2));
    CHECK(Rational(1, -2).den() > 0);
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(min(Rational(2, 3), Rational(3, 5)) == Rational(3, 5));
    CHECK_THROWS_AS(Rational(1, 0), std::invalid_argument);
    std::ostringstream os;
    os << Rational(6, 8);
    CHECK(os.str() == "3/4");
}
