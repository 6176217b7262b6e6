#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include "mhankel/bohr.hpp"
#include "mhankel/rng.hpp"

using namespace mhankel;

TEST_CASE("prime sieve by count") {
    PrimeTable t5 = sieve_primes(5);
    REQUIRE(t5.size() == 5);
    CHECK(t5.values() == std::vector<u64>{2, 3, 5, 7, 11});
    CHECK(sieve_primes(1).values() == std::vector<u64>{2});
    PrimeTable t10 = sieve_primes(10);
    REQUIRE(t10.size() == 10);
    CHECK(t10.prime(10) == 29);
    CHECK(t10.prime(1) == 2);  // 1-based indexing
    CHECK(t10.index_of(29) == 10);
}

TEST_CASE("factorize") {
    CHECK(factorize(1).exponents().empty());
    CHECK(factorize(12).exponents() == std::vector<std::uint32_t>{2, 1});
    CHECK(factorize(45000).exponents() == std::vector<std::uint32_t>{3, 2, 4});
    CHECK_THROWS_AS(factorize(0), std::invalid_argument);
    // large prime cofactor after trial division
    CHECK(factorize(104729).exponents().back() == 1);
    CHECK(bohr_drop(factorize(104729)) == 104729);
}

TEST_CASE("omega and divisor_count") {
    CHECK(omega(1) == 0);
    CHECK(omega(12) == 3);
    for (u64 p : {2, 3, 5, 97}) CHECK(omega(p) == 1);
    CHECK_THROWS_AS(omega(0), std::invalid_argument);

    CHECK(divisor_count(1) == 1);
    CHECK(divisor_count(12) == 6);
    CHECK(divisor_count(49) == 3);  // p^2
    CHECK_THROWS_AS(divisor_count(0), std::invalid_argument);
}

TEST_CASE("divisor_pairs") {
    using pairs = std::vector<std::pair<u64, u64>>;
    CHECK(divisor_pairs(6, 1) == pairs{{1, 6}, {2, 3}, {3, 2}, {6, 1}});
    CHECK(divisor_pairs(6, 2) == pairs{{2, 3}, {3, 2}});
    CHECK(divisor_pairs(13, 2).empty());
    CHECK(divisor_pairs(1, 1) == pairs{{1, 1}});

    for (u64 n = 1; n <= 2000; ++n) {
        auto d1 = divisor_pairs(n, 1);
        REQUIRE(d1.size() == divisor_count(n));
        for (auto [m, q] : d1) CHECK(m * q == n);
        for (std::size_t i = 1; i < d1.size(); ++i) CHECK(d1[i - 1].first < d1[i].first);
    }
    // distinct primes: the two-factor split is exactly the ordered pair and its swap
    auto pq = divisor_pairs(11 * 17, 2);
    CHECK(pq == pairs{{11, 17}, {17, 11}});
}

TEST_CASE("bohr lift and drop") {
    CHECK(bohr_drop(MultiIndex({1, 1})) == 6);
    CHECK(bohr_drop(MultiIndex(std::vector<std::uint32_t>{})) == 1);
    CHECK(bohr_lift(6) == MultiIndex({1, 1}));

    for (std::uint64_t trial = 0; trial < 1000; ++trial) {
        std::uint64_t seed = rng::derive_seed(7, trial);
        std::size_t dim = 1 + rng::draw_u64(seed, 0) % 6;
        std::vector<std::uint32_t> exps(dim);
        for (std::size_t j = 0; j < dim; ++j) {
            exps[j] = static_cast<std::uint32_t>(rng::draw_u64(seed, 1 + j) % 4);
        }
        MultiIndex kappa(exps);
        CHECK(bohr_lift(bohr_drop(kappa)) == kappa);
    }
}

TEST_CASE("factorization invariants up to one million") {
    // independent oracle: smallest-prime-factor sieve
    const u64 limit = 1000000;
    std::vector<std::uint32_t> spf(limit + 1, 0);
    for (u64 i = 2; i <= limit; ++i) {
        if (spf[i] == 0) {
            for (u64 j = i; j <= limit; j += i) {
                if (spf[j] == 0) spf[j] = static_cast<std::uint32_t>(i);
            }
        }
    }
    PrimeTable table = sieve_primes(80000);  // covers all primes below 10^6

    // aggregate per property: five million inline assertions swamp the runtime
    u64 bad_rebuild = 0, bad_order = 0, bad_divisors = 0, bad_drop = 0, bad_spf = 0;
    u64 first_bad = 0;
    for (u64 n = 1; n <= limit; ++n) {
        MultiIndex kappa = factorize(n);
        u64 rebuilt = 1;
        u64 order = 0;
        u64 divisors = 1;
        for (std::size_t j = 0; j < kappa.dimension(); ++j) {
            u64 p = table.prime(j + 1);
            for (std::uint32_t e = 0; e < kappa.exponents()[j]; ++e) rebuilt *= p;
            order += kappa.exponents()[j];
            divisors *= kappa.exponents()[j] + 1;
        }
        bool ok = true;
        if (rebuilt != n) ++bad_rebuild, ok = false;
        if (omega(n) != order) ++bad_order, ok = false;
        if (divisor_count(n) != divisors) ++bad_divisors, ok = false;
        if (bohr_drop(kappa) != n) ++bad_drop, ok = false;

        // oracle agreement on the smallest prime factor
        if (n >= 2) {
            u64 smallest = 0;
            for (std::size_t j = 0; j < kappa.dimension(); ++j) {
                if (kappa.exponents()[j] > 0) {
                    smallest = table.prime(j + 1);
                    break;
                }
            }
            if (smallest != spf[n]) ++bad_spf, ok = false;
        }
        if (!ok && first_bad == 0) first_bad = n;
    }
    INFO("first mismatching n = " << first_bad);
    CHECK(bad_rebuild == 0);
    CHECK(bad_order == 0);
    CHECK(bad_divisors == 0);
    CHECK(bad_drop == 0);
    CHECK(bad_spf == 0);
}

TEST_CASE("factorization logs") {
    // additivity is exact by construction: same summation grouping
    CHECK(natural_log(1) == 0.0);
    CHECK(natural_log(2) == std::log(2.0));
    CHECK(natural_log(6) == doctest::Approx(std::log(6.0)).epsilon(1e-14));
    for (u64 n = 2; n <= 10000; ++n) {
        CHECK(std::abs(natural_log(n) - std::log(static_cast<double>(n))) <=
              1e-12 * std::log(static_cast<double>(n)));
    }
    // log(p^k) accumulates k identical terms
    CHECK(natural_log(8) == std::log(2.0) + std::log(2.0) + std::log(2.0));
}

TEST_CASE("multi-index accessors") {
    MultiIndex kappa({2, 0, 1});
    CHECK(kappa.order() == 3);
    CHECK(kappa.divisor_count() == 6);
    CHECK(kappa.exponent(1) == 2);
    CHECK(kappa.exponent(2) == 0);
    CHECK(kappa.exponent(3) == 1);
    CHECK(kappa.exponent(9) == 0);  // beyond the stored range
    CHECK(MultiIndex({1, 1, 0}).exponents() == std::vector<std::uint32_t>{1, 1});
}
