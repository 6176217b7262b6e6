#include "mhankel/bohr.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <unordered_map>

namespace mhankel {

MultiIndex::MultiIndex(std::vector<std::uint32_t> exps) : exps_(std::move(exps)) {
    while (!exps_.empty() && exps_.back() == 0) exps_.pop_back();
}

std::uint32_t MultiIndex::exponent(std::size_t prime_index) const {
    if (prime_index == 0) throw std::invalid_argument("MultiIndex: prime indices are 1-based");
    if (prime_index > exps_.size()) return 0;
    return exps_[prime_index - 1];
}

u64 MultiIndex::order() const {
    u64 s = 0;
    for (auto e : exps_) s += e;
    return s;
}

u64 MultiIndex::divisor_count() const {
    u64 d = 1;
    for (auto e : exps_) d *= (u64)e + 1;
    return d;
}

PrimeTable::PrimeTable(u64 limit) : limit_(limit) {
    if (limit < 2) return;
    std::vector<bool> composite(limit + 1, false);
    for (u64 i = 2; i * i <= limit; ++i) {
        if (composite[i]) continue;
        for (u64 j = i * i; j <= limit; j += i) composite[j] = true;
    }
    for (u64 i = 2; i <= limit; ++i)
        if (!composite[i]) primes_.push_back(i);
}

u64 PrimeTable::prime(std::size_t index) const {
    if (index == 0 || index > primes_.size())
        throw std::out_of_range("PrimeTable: prime index out of range");
    return primes_[index - 1];
}

std::size_t PrimeTable::index_of(u64 p) const {
    auto it = std::lower_bound(primes_.begin(), primes_.end(), p);
    if (it == primes_.end() || *it != p) return 0;
    return (std::size_t)(it - primes_.begin()) + 1;
}

PrimeTable sieve_primes(std::size_t count) {
    if (count < 1) throw std::invalid_argument("sieve_primes: count must be >= 1");
    // p_n < n(log n + log log n) for n >= 6
    u64 limit = 15;
    if (count >= 6) {
        double n = (double)count;
        limit = (u64)(n * (std::log(n) + std::log(std::log(n)))) + 1;
    }
    for (;;) {
        PrimeTable table(limit);
        if (table.size() >= count) {
            PrimeTable trimmed(table.prime(count));
            return trimmed;
        }
        limit *= 2;
    }
}

namespace {

// Shared growable table backing factorize(); grows geometrically so repeated
// calls near the current limit do not re-sieve every time. Snapshots are
// shared pointers: the table may be swapped concurrently but never mutated.
class SharedPrimes {
public:
    std::shared_ptr<const PrimeTable> snapshot_upto(u64 value) {
        std::lock_guard<std::mutex> lock(mu_);
        if (value > limit_) {
            u64 next = std::max<u64>(value, limit_ < 2048 ? 4096 : limit_ * 2);
            table_ = std::make_shared<const PrimeTable>(next);
            limit_ = next;
        }
        return table_;
    }

private:
    std::mutex mu_;
    std::shared_ptr<const PrimeTable> table_ = std::make_shared<const PrimeTable>(4096);
    u64 limit_ = 4096;
};

SharedPrimes& shared_primes() {
    static SharedPrimes sp;
    return sp;
}

double prime_log(std::size_t index_1based) {
    // small cache of log p_j; index range stays modest (p_j <= ~1e5 in practice)
    static std::mutex mu;
    static std::vector<double> logs;  // logs[j-1] = log p_j
    std::lock_guard<std::mutex> lock(mu);
    if (index_1based > logs.size()) {
        PrimeTable t = sieve_primes(std::max<std::size_t>(index_1based, logs.size() * 2 + 16));
        logs.resize(t.size());
        for (std::size_t j = 0; j < t.size(); ++j) logs[j] = std::log((double)t.values()[j]);
    }
    return logs[index_1based - 1];
}

}  // namespace

MultiIndex factorize(u64 n) {
    if (n == 0) throw std::invalid_argument("factorize: n must be positive");
    std::vector<std::uint32_t> exps;
    if (n == 1) return MultiIndex(exps);

    u64 root = (u64)std::sqrt((double)n) + 2;
    auto table = shared_primes().snapshot_upto(root);
    const std::vector<u64>& primes = table->values();
    u64 rest = n;
    for (std::size_t j = 0; j < primes.size() && primes[j] * primes[j] <= rest; ++j) {
        u64 p = primes[j];
        if (rest % p) continue;
        std::uint32_t e = 0;
        while (rest % p == 0) { rest /= p; ++e; }
        if (exps.size() < j + 1) exps.resize(j + 1, 0);
        exps[j] = e;
    }
    if (rest > 1) {
        // remaining cofactor is prime; locate its 1-based index
        auto big_table = shared_primes().snapshot_upto(rest);
        const std::vector<u64>& big = big_table->values();
        auto it = std::lower_bound(big.begin(), big.end(), rest);
        std::size_t j = (std::size_t)(it - big.begin());
        if (exps.size() < j + 1) exps.resize(j + 1, 0);
        exps[j] += 1;
    }
    return MultiIndex(std::move(exps));
}

u64 omega(u64 n) {
    if (n == 0) throw std::invalid_argument("omega: n must be positive");
    return factorize(n).order();
}

u64 divisor_count(u64 n) {
    if (n == 0) throw std::invalid_argument("divisor_count: n must be positive");
    return factorize(n).divisor_count();
}

namespace {

std::shared_ptr<const std::vector<u64>> divisors_of(u64 n) {
    static std::mutex mu;
    static std::unordered_map<u64, std::shared_ptr<const std::vector<u64>>> cache;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(n);
        if (it != cache.end()) return it->second;
    }
    MultiIndex kappa = factorize(n);  // extends the shared table as far as needed
    auto table = shared_primes().snapshot_upto(2);
    const std::vector<u64>& primes = table->values();
    std::vector<u64> divs{1};
    for (std::size_t j = 0; j < kappa.dimension(); ++j) {
        std::uint32_t e = kappa.exponents()[j];
        if (e == 0) continue;
        if (j >= primes.size()) throw std::logic_error("divisors_of: prime table out of sync");
        u64 p = primes[j];
        std::size_t base = divs.size();
        u64 pk = 1;
        for (std::uint32_t k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < base; ++i) divs.push_back(divs[i] * pk);
        }
    }
    std::sort(divs.begin(), divs.end());
    auto entry = std::make_shared<const std::vector<u64>>(std::move(divs));
    std::lock_guard<std::mutex> lock(mu);
    cache.emplace(n, entry);
    return entry;
}

}  // namespace

std::vector<std::pair<u64, u64>> divisor_pairs(u64 n, u64 min_factor) {
    if (n == 0) throw std::invalid_argument("divisor_pairs: n must be positive");
    if (min_factor != 1 && min_factor != 2)
        throw std::invalid_argument("divisor_pairs: min_factor must be 1 or 2");
    auto divs = divisors_of(n);
    std::vector<std::pair<u64, u64>> pairs;
    pairs.reserve(divs->size());
    for (u64 m : *divs) {
        u64 q = n / m;
        if (m >= min_factor && q >= min_factor) pairs.emplace_back(m, q);
    }
    return pairs;
}

MultiIndex bohr_lift(u64 n) { return factorize(n); }

u64 bohr_drop(const MultiIndex& kappa) {
    auto table = shared_primes().snapshot_upto(2);
    u64 n = 1;
    for (std::size_t j = 0; j < kappa.dimension(); ++j) {
        std::uint32_t e = kappa.exponents()[j];
        if (e == 0) continue;
        while (table->values().size() <= j)
            table = shared_primes().snapshot_upto(table->values().back() * 2);
        for (std::uint32_t k = 0; k < e; ++k) n *= table->values()[j];
    }
    return n;
}

double log_from_factorization(const MultiIndex& kappa) {
    double s = 0.0;
    for (std::size_t j = 0; j < kappa.dimension(); ++j) {
        std::uint32_t e = kappa.exponents()[j];
        if (e == 0) continue;
        s += (double)e * prime_log(j + 1);
    }
    return s;
}

double natural_log(u64 n) { return log_from_factorization(factorize(n)); }

}  // namespace mhankel
