#include "mhankel/montecarlo.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "mhankel/rng.hpp"

namespace mhankel {

namespace {

constexpr std::uint64_t kChunk = 1 << 16;

// coordinate j of sample i consumes stream counter i*d + j; this layout is the
// reproducibility contract of TorusSampler and of every MC loop below
void fill_point(std::vector<cdouble>& out, std::uint64_t seed, std::uint64_t index,
                std::size_t d) {
    out.resize(d);
    for (std::size_t j = 0; j < d; ++j) {
        double theta =
            2.0 * std::numbers::pi * rng::draw_u01(seed, index * (std::uint64_t)d + j);
        out[j] = cdouble(std::cos(theta), std::sin(theta));
    }
}

struct CompiledTerm {
    cdouble coeff;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> powers;  // (coordinate, exponent)
};

std::vector<CompiledTerm> compile_terms(const DirichletPolynomial& F) {
    std::vector<CompiledTerm> terms;
    terms.reserve(F.support_size());
    for (const auto& [n, a] : F.coefficients()) {
        CompiledTerm t;
        t.coeff = a;
        MultiIndex kappa = factorize(n);
        for (std::size_t j = 0; j < kappa.dimension(); ++j)
            if (kappa.exponents()[j] > 0)
                t.powers.emplace_back((std::uint32_t)j, kappa.exponents()[j]);
        terms.push_back(std::move(t));
    }
    return terms;
}

cdouble eval_terms(const std::vector<CompiledTerm>& terms, const std::vector<cdouble>& z) {
    cdouble s(0.0, 0.0);
    for (const auto& t : terms) {
        cdouble v = t.coeff;
        for (auto [j, e] : t.powers) {
            cdouble base = z[j];
            for (std::uint32_t r = 0; r < e; ++r) v *= base;
        }
        s += v;
    }
    return s;
}

// Kahan-compensated accumulator; chunk partials are folded in in chunk order
struct Kahan {
    double sum = 0.0, c = 0.0;
    void add(double x) {
        double y = x - c;
        double t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
};

struct MeanVar {
    double mean;
    double sem;  // standard error of the mean
};

// generic chunked MC mean of a per-sample statistic X(i) >= 0
template <typename SampleFn>
MeanVar chunked_mean(std::uint64_t samples, SampleFn&& sample_value) {
    Kahan s1, s2;
    std::uint64_t done = 0;
    while (done < samples) {
        std::uint64_t stop = std::min(samples, done + kChunk);
        double c1 = 0.0, c2 = 0.0;
        for (std::uint64_t i = done; i < stop; ++i) {
            double x = sample_value(i);
            c1 += x;
            c2 += x * x;
        }
        s1.add(c1);
        s2.add(c2);
        done = stop;
    }
    double n = (double)samples;
    double mean = s1.sum / n;
    double var = (s2.sum / n - mean * mean) * (n / (n - 1.0));
    if (var < 0.0) var = 0.0;  // roundoff on zero-variance statistics
    return {mean, std::sqrt(var / n)};
}

McEstimate root_estimate(MeanVar mv, double p, std::uint64_t samples, std::uint64_t seed) {
    McEstimate e;
    e.samples = samples;
    e.seed = seed;
    if (mv.mean <= 0.0) return e;
    e.mean = std::pow(mv.mean, 1.0 / p);
    // delta method for the p-th root
    e.stderr_ = (1.0 / p) * std::pow(mv.mean, 1.0 / p - 1.0) * mv.sem;
    return e;
}

double slice_power_mean(const SlicePolynomial& s, double p, std::size_t grid) {
    double acc = 0.0;
    for (std::size_t t = 0; t < grid; ++t) {
        double theta = 2.0 * std::numbers::pi * (double)t / (double)grid;
        cdouble w(std::cos(theta), std::sin(theta));
        acc += std::pow(std::norm(s.evaluate(w)), 0.5 * p);
    }
    return acc / (double)grid;
}

}  // namespace

CharacterPoint TorusSampler::point(std::uint64_t sample_index) const {
    CharacterPoint z;
    fill_point(z.values, seed_, sample_index, dim_);
    return z;
}

McEstimate mc_hp_norm(const DirichletPolynomial& F, double p, std::uint64_t samples,
                      std::uint64_t seed) {
    if (!(p > 0.0)) throw std::invalid_argument("mc_hp_norm: p must be positive");
    McEstimate e;
    e.seed = seed;
    if (F.is_zero()) return e;

    std::size_t d = F.prime_dimension();
    if (d == 0) {  // constant: |F| is deterministic on the torus
        e.mean = std::abs(F.coefficient(1));
        return e;
    }
    if (samples < 2) throw std::invalid_argument("mc_hp_norm: samples must be >= 2");

    auto terms = compile_terms(F);
    std::vector<cdouble> z;
    MeanVar mv = chunked_mean(samples, [&](std::uint64_t i) {
        fill_point(z, seed, i, d);
        return std::pow(std::norm(eval_terms(terms, z)), 0.5 * p);
    });
    return root_estimate(mv, p, samples, seed);
}

double slice_hp_norm(const DirichletPolynomial& F, double p, const CharacterPoint& z,
                     std::size_t grid) {
    if (!(p > 0.0)) throw std::invalid_argument("slice_hp_norm: p must be positive");
    SlicePolynomial s = slice(F, z);
    if (grid < 8 * (s.degree() + 1))
        throw std::invalid_argument("slice_hp_norm: grid must be >= 8*(degree+1)");
    return std::pow(slice_power_mean(s, p, grid), 1.0 / p);
}

McEstimate nested_hp_norm(const DirichletPolynomial& F, double p, std::uint64_t samples,
                          std::size_t grid, std::uint64_t seed) {
    if (!(p > 0.0)) throw std::invalid_argument("nested_hp_norm: p must be positive");
    McEstimate e;
    e.seed = seed;
    if (F.is_zero()) return e;

    std::size_t d = F.prime_dimension();
    if (d == 0) {
        e.mean = std::abs(F.coefficient(1));
        return e;
    }
    if (samples < 2) throw std::invalid_argument("nested_hp_norm: samples must be >= 2");
    u64 max_m = F.max_order();
    if (grid < 8 * ((std::size_t)max_m + 1))
        throw std::invalid_argument("nested_hp_norm: grid must be >= 8*(degree+1)");

    // per-level term lists; the slice coefficient c_m(z) is the level-m value
    std::vector<std::vector<CompiledTerm>> levels(max_m + 1);
    for (u64 m = 0; m <= max_m; ++m) levels[m] = compile_terms(homogeneous_project(F, m));

    std::vector<cdouble> z;
    SlicePolynomial s;
    s.coeffs.resize(max_m + 1);
    MeanVar mv = chunked_mean(samples, [&](std::uint64_t i) {
        fill_point(z, seed, i, d);
        for (u64 m = 0; m <= max_m; ++m) s.coeffs[m] = eval_terms(levels[m], z);
        return slice_power_mean(s, p, grid);
    });
    return root_estimate(mv, p, samples, seed);
}

double helson_lower(const DirichletPolynomial& f) {
    double s = 0.0;
    for (const auto& [n, a] : f.coefficients()) s += std::norm(a) / (double)divisor_count(n);
    return std::sqrt(s);
}

McEstimate hardy_homog_sum(const DirichletPolynomial& f, std::uint64_t samples,
                           std::uint64_t seed) {
    McEstimate total;
    total.samples = samples;
    total.seed = seed;
    double var = 0.0;
    u64 max_m = f.max_order();
    for (u64 m = 0; m <= max_m; ++m) {
        DirichletPolynomial part = homogeneous_project(f, m);
        if (part.is_zero()) continue;
        McEstimate est = mc_hp_norm(part, 1.0, samples, rng::derive_seed(seed, m));
        double w = 1.0 / (double)(m + 1);
        total.mean += w * est.mean;
        var += (w * est.stderr_) * (w * est.stderr_);
    }
    total.stderr_ = std::sqrt(var);
    return total;
}

}  // namespace mhankel
