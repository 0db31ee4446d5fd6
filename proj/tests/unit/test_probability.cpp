#include "doctest.h"
#include "oracles.hpp"
#include "tightpow/power.hpp"
#include "tightpow/probability.hpp"

using namespace tightpow;

namespace {

// Random pattern with at most max_edges edges on v vertices (at least one edge).
KGraph random_pattern(int k, std::uint32_t v, int max_edges, RngStream& rng) {
    std::vector<std::vector<Vertex>> edges;
    const int want = 1 + static_cast<int>(rng.below(max_edges));
    for (int i = 0; i < want; ++i) {
        std::vector<Vertex> all(v);
        std::iota(all.begin(), all.end(), 0u);
        rng.shuffle(all);
        edges.emplace_back(all.begin(), all.begin() + k);
    }
    return KGraph::build(k, v, edges);
}

}  // namespace

TEST_CASE("phi agrees with the all-subgraph oracle") {
    RngStream rng(2024, 7);
    for (int trial = 0; trial < 150; ++trial) {
        const int k = 2 + trial % 3;
        const std::uint32_t v = static_cast<std::uint32_t>(k + 1 + rng.below(4));
        KGraph f = random_pattern(k, v, 5, rng);
        const std::uint64_t n = v + rng.below(200);
        const double p = 0.001 + 0.999 * rng.uniform();
        auto rep = phi(f, n, p);
        CHECK(rep.phi.log() == doctest::Approx(oracle::log_phi_all_subgraphs(f, n, p)).epsilon(1e-12));
        // The witness evaluates to the reported value.
        const double witness = rep.argmin_vertices.size() * std::log(double(n)) +
                               rep.argmin_edges.size() * std::log(p);
        CHECK(witness == doctest::Approx(rep.phi.log()).epsilon(1e-12));
        CHECK_FALSE(rep.argmin_edges.empty());
    }
}

TEST_CASE("phi at p = 1 is the smallest single edge support") {
    KGraph f = power_path(3, 2, 6);
    auto rep = phi(f, 100, 1.0);
    CHECK(rep.phi.log() == doctest::Approx(3 * std::log(100.0)));
    CHECK_THROWS_AS(phi(KGraph(2, 4), 10, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(phi(f, 100, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(phi(f, 5, 0.5), std::invalid_argument);
}

TEST_CASE("expected copies is the falling factorial times p^e") {
    KGraph f = power_path(2, 2, 4);  // 5 edges
    const double l = expected_labelled_copies(f, 30, 0.3).log();
    CHECK(std::exp(l) == doctest::Approx(30.0 * 29 * 28 * 27 * std::pow(0.3, 5)));
    CHECK(std::exp(l) == doctest::Approx(1598.2596).epsilon(1e-6));
    CHECK(expected_labelled_copies(f, 30, 0.0).is_zero());
}

TEST_CASE("delta bound and tails") {
    KGraph f = power_path(2, 2, 4);
    const std::uint64_t n = 30;
    const double p = 0.3;
    auto ph = phi(f, n, p);
    const double want = oracle::log_factorial(4) + 8 * std::log(2.0) + 8 * std::log(30.0) + 10 * std::log(p) - ph.phi.log();
    LogValue delta = delta_bound(f, n, p);
    CHECK(delta.log() == doctest::Approx(want).epsilon(1e-12));

    LogValue lambda = expected_labelled_copies(f, n, p);
    const double lam = lambda.linear();
    CHECK(janson_tail(lambda, lam / 2, delta) ==
          doctest::Approx(std::exp(-(lam / 2) * (lam / 2) / (2 * delta.linear()))));
    CHECK(janson_tail(lambda, 0.0, delta) == 1.0);
    CHECK_THROWS_AS(janson_tail(lambda, 2 * lam, delta), std::invalid_argument);
    CHECK(chebyshev_tail(lambda, delta) == doctest::Approx(std::min(1.0, delta.linear() / (lam * lam))));
    CHECK(chebyshev_tail(LogValue::from_linear(10), LogValue::from_linear(1)) == doctest::Approx(0.01));
    CHECK(chebyshev_tail(LogValue::from_linear(1), LogValue::from_linear(5)) == 1.0);
    CHECK_THROWS_AS(chebyshev_tail(LogValue::zero(), delta), std::invalid_argument);
}

TEST_CASE("epsilon cap") {
    // (2,2): g(4) = 5, C(3,2) = 3 -> min(1/10, 1/9).
    CHECK(epsilon_cap(2, 2, 4) == Rational(1, 10));
    // (3,2), b = h = 4: g = 4 and C(4,3) = 4 -> min(1/8, 1/12).
    CHECK(epsilon_cap(3, 2, 4) == Rational(1, 12));
    CHECK_THROWS_AS(epsilon_cap(3, 2, 3), std::invalid_argument);
}

TEST_CASE("phi threshold check matches direct comparison") {
    RngStream rng(3, 3);
    for (int i = 0; i < 40; ++i) {
        const int k = 2 + i % 2;
        const int r = 2;
        const std::int64_t b = k + r - 1 + static_cast<std::int64_t>(rng.below(3));
        const double cap = epsilon_cap(k, r, b).to_double();
        const double eps = cap * (0.05 + 0.9 * rng.uniform());
        const std::uint64_t n = 50 + rng.below(5000);
        const double C = 0.1 + 10 * rng.uniform();
        auto res = phi_threshold_check(k, r, b, C, n, eps);
        const double p = std::pow(double(n), -(threshold_exponent(k, r).to_double() + eps));
        CHECK(res.p == doctest::Approx(p).epsilon(1e-12));
        const double direct = oracle::log_phi_all_subgraphs(power_path(k, r, b), n, p);
        CHECK(res.holds == (direct >= std::log(C * n)));
    }
    CHECK_THROWS_AS(phi_threshold_check(2, 2, 4, 1.0, 100, 0.2), std::invalid_argument);
    CHECK_THROWS_AS(phi_threshold_check(2, 2, 4, 0.0, 100, 0.05), std::invalid_argument);
}

TEST_CASE("first moment") {
    // Square path on n vertices has 2n-3 edges.
    CHECK(first_moment_log(2, 2, 20, 0.5) ==
          doctest::Approx(oracle::log_factorial(20) + 37 * std::log(0.5)).epsilon(1e-12));
    CHECK(first_moment_log(2, 2, 20, 0.5, true) ==
          doctest::Approx(oracle::log_factorial(20) + 40 * std::log(0.5)).epsilon(1e-12));
    CHECK(std::isinf(first_moment_log(3, 1, 20, 0.0)));
    CHECK(first_moment_log(3, 1, 20, 1.0) == doctest::Approx(oracle::log_factorial(20)));
    double prev = -INFINITY;
    for (double p = 0.05; p <= 1.0; p += 0.05) {
        const double v = first_moment_log(3, 2, 30, p);
        CHECK(v > prev);
        prev = v;
    }
    CHECK_THROWS_AS(first_moment_log(2, 2, 5, 0.5), std::invalid_argument);
}

TEST_CASE("split probability") {
    CHECK(split_probability(0.75, 2) == 0.5);
    CHECK(split_probability(0.3, 1) == 0.3);
    CHECK(split_probability(0.0, 4) == 0.0);
    for (int rounds = 1; rounds <= 6; ++rounds)
        for (double p : {0.01, 0.2, 0.5, 0.9, 0.999}) {
            const double q = split_probability(p, rounds);
            CHECK(1.0 - std::pow(1.0 - q, rounds) == doctest::Approx(p).epsilon(1e-12));
        }
    CHECK_THROWS_AS(split_probability(1.0, 2), std::invalid_argument);
    CHECK_THROWS_AS(split_probability(0.5, 0), std::invalid_argument);
}

TEST_CASE("log value arithmetic") {
    LogValue a = LogValue::from_linear(6), b = LogValue::from_linear(3);
    CHECK((a / b).linear() == doctest::Approx(2));
    CHECK((a * b).linear() == doctest::Approx(18));
    CHECK(b.pow(2).linear() == doctest::Approx(9));
    CHECK(LogValue::zero().pow(0).linear() == 1.0);
    CHECK_THROWS_AS(LogValue::zero().pow(-1), std::domain_error);
    CHECK_THROWS_AS(a / LogValue::zero(), std::domain_error);
    CHECK(LogValue::from_log(1000).representable() == false);
    CHECK(LogValue::zero().approx_equal(LogValue::from_linear(0)));
}
