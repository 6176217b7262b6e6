#pragma once

// H^p norm estimation on the polytorus: Monte Carlo with a counter-based
// deterministic sampler, one-variable slice quadrature, and the inequality
// ingredients that need them (Helson lower bound, Hardy-homogeneous sum).

#include <cstdint>
#include <vector>

#include "mhankel/dirichlet.hpp"

namespace mhankel {

// Uniform points on T^d. Reproducibility contract: point(i) is a pure function
// of (seed, d, i); consumers may partition index ranges freely (chunked or
// parallel) without changing any drawn value.
class TorusSampler {
public:
    TorusSampler(std::size_t dimension, std::uint64_t seed)
        : dim_(dimension), seed_(seed) {}

    std::size_t dimension() const { return dim_; }
    std::uint64_t seed() const { return seed_; }

    CharacterPoint point(std::uint64_t sample_index) const;
    CharacterPoint next() { return point(counter_++); }

private:
    std::size_t dim_;
    std::uint64_t seed_;
    std::uint64_t counter_ = 0;
};

struct McEstimate {
    double mean = 0.0;
    double stderr_ = 0.0;  // sample standard deviation / sqrt(samples), delta-method adjusted
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
};

// || F ||_{H^p} = (mean of |F(z)|^p over T^d)^{1/p}, d = largest prime index
// of the support. The zero polynomial returns exact 0; polynomials supported
// on {1} return |a_1| with zero stderr (no sampling, the integrand is
// constant). samples >= 2 otherwise.
McEstimate mc_hp_norm(const DirichletPolynomial& F, double p, std::uint64_t samples,
                      std::uint64_t seed);

// ((1/grid) sum over grid-th roots of unity of |F_z(w)|^p)^{1/p}. Exact for
// even integer p once grid > p*degree; an estimate otherwise. Requires
// grid >= 8*(degree of slice + 1).
double slice_hp_norm(const DirichletPolynomial& F, double p, const CharacterPoint& z,
                     std::size_t grid);

// Monte Carlo over z of slice_hp_norm(F, p, z)^p, then the p-th root: the
// right-hand side of the slice-norm identity.
McEstimate nested_hp_norm(const DirichletPolynomial& F, double p, std::uint64_t samples,
                          std::size_t grid, std::uint64_t seed);

// (sum |a_n|^2 / d(n))^{1/2}: lower bound for ||f||_{H^1}
double helson_lower(const DirichletPolynomial& f);

// sum over nonempty homogeneity levels of ||P_m f||_{H^1} / (m+1), each norm
// estimated by mc_hp_norm with a level-derived sub-seed; stderrs combined in
// quadrature. Bounded by pi * ||f||_{H^1}.
McEstimate hardy_homog_sum(const DirichletPolynomial& f, std::uint64_t samples,
                           std::uint64_t seed);

}  // namespace mhankel
