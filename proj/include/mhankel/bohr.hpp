#pragma once

// Integer arithmetic behind the Bohr correspondence: primes, factorization,
// multi-indices, divisor structure. Everything here is exact; logs of integers
// are always assembled from factorizations so that log(mn) = log m + log n
// holds at the bit level wherever both sides use the same prime-log table.

#include <cstdint>
#include <utility>
#include <vector>

namespace mhankel {

using u64 = std::uint64_t;

// Exponent vector kappa(n) with 1-based prime positions (p_1 = 2).
// exponents[j-1] is the power of p_j; trailing zeros are trimmed.
class MultiIndex {
public:
    MultiIndex() = default;
    explicit MultiIndex(std::vector<std::uint32_t> exps);

    const std::vector<std::uint32_t>& exponents() const { return exps_; }
    std::size_t dimension() const { return exps_.size(); }  // largest prime index used
    std::uint32_t exponent(std::size_t prime_index) const;  // 1-based, 0 beyond the stored range

    u64 order() const;          // Omega(n) = sum of exponents
    u64 divisor_count() const;  // d(n) = prod (kappa_j + 1)

    bool operator==(const MultiIndex& other) const { return exps_ == other.exps_; }

private:
    std::vector<std::uint32_t> exps_;
};

class PrimeTable {
public:
    explicit PrimeTable(u64 limit);  // all primes <= limit, increasing

    std::size_t size() const { return primes_.size(); }
    u64 limit() const { return limit_; }
    u64 prime(std::size_t index) const;  // 1-based: prime(1) = 2
    // 1-based index of p in the table, 0 if p is not an entry
    std::size_t index_of(u64 p) const;
    const std::vector<u64>& values() const { return primes_; }

private:
    std::vector<u64> primes_;
    u64 limit_ = 0;
};

// First `count` primes. count >= 1.
PrimeTable sieve_primes(std::size_t count);

// kappa(n); kappa(1) is empty. Rejects n = 0.
MultiIndex factorize(u64 n);

u64 omega(u64 n);          // Omega(n), n >= 1
u64 divisor_count(u64 n);  // d(n), n >= 1

// All ordered factorizations n = m * (n/m) with both factors >= min_factor,
// sorted by m. min_factor must be 1 or 2. Divisor lists are enumerated from
// the exponent lattice of kappa(n) and memoized per n: Hankel assembly asks
// for the same n many times.
std::vector<std::pair<u64, u64>> divisor_pairs(u64 n, u64 min_factor);

// The bijection n <-> kappa(n).
MultiIndex bohr_lift(u64 n);
u64 bohr_drop(const MultiIndex& kappa);

// log n = sum kappa_j log p_j, accumulated in increasing prime order.
double log_from_factorization(const MultiIndex& kappa);
double natural_log(u64 n);  // log_from_factorization(factorize(n)); log 1 = 0

}  // namespace mhankel
