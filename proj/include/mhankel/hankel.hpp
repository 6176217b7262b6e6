#pragma once

// Truncated multiplicative Hankel matrices (rho_{mn}) from finitely supported
// symbols, spectral norms by power iteration (dense and matrix-free), Schatten
// norms by full SVD, Schur-multiplier weight patterns, and the named
// constructions: prime-pair matrix embedding, phi_d, Hilbert-type matrices,
// Nehari symbol Fourier coefficients.

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "mhankel/dirichlet.hpp"

namespace mhankel {

// Coefficient sequence rho_n of a Hankel form rho(a,b) = sum a_m b_n rho_{mn}.
// Convention: the analytic symbol is phi(s) = sum conj(rho_n) n^{-s}, so that
// H_phi(fg) = <fg, phi> = rho(a, b); conversion is entrywise conjugation.
struct Symbol {
    std::map<u64, cdouble> rho;

    static Symbol from_analytic(const DirichletPolynomial& phi);
    DirichletPolynomial analytic() const;
    cdouble at(u64 n) const;
};

struct HankelMatrix {
    std::vector<u64> index_set;  // sorted, distinct, positive
    Eigen::MatrixXcd entries;    // entries(i,j) = rho_{index_i * index_j}
};

// Index set constructions. divisor-closed sets make the truncated form norm
// exact for finitely supported symbols: the form only reads coefficients at
// two-part factorizations of support elements.
std::vector<u64> index_range_full(u64 n);  // {1..n}
std::vector<u64> index_range_zero(u64 n);  // {2..n}
// factors of ordered factorizations n0 = m * q with m, q >= threshold, over
// all support elements n0; threshold in {1, 2}
std::vector<u64> index_divisor_closed(const Symbol& symbol, u64 threshold);

HankelMatrix build_hankel(const Symbol& symbol, std::vector<u64> index_set);

struct SpectralResult {
    double value = 0.0;
    std::size_t iterations = 0;
    double residual = 0.0;
    bool converged = false;
};

struct SpectralOptions {
    double tol = 1e-10;
    std::size_t max_iter = 100000;
    std::uint64_t seed = 0x5eed;  // start-vector stream
};

// Largest singular value by power iteration on M*M with a deterministic
// pseudo-random start vector. The value sequence is nondecreasing and
// converges from below; stop when |value_k - value_{k-1}| <= tol*max(1, value).
SpectralResult spectral_norm(const Eigen::MatrixXcd& M, const SpectralOptions& opt = {});
SpectralResult spectral_norm(const HankelMatrix& M, const SpectralOptions& opt = {});

// Same iteration for a symmetric real operator given only by y = Kx.
SpectralResult spectral_norm_matfree(std::size_t n,
                                     const std::function<void(const double*, double*)>& apply,
                                     const SpectralOptions& opt = {});

// (sum_k sigma_k^p)^{1/p} over all singular values, full SVD. p > 0.
double schatten_norm(const Eigen::MatrixXcd& M, double p);
double schatten_norm(const HankelMatrix& M, double p);

// sqrt(sum (d(n)-2) |rho_n|^2); equals the Frobenius norm of the exact
// threshold-2 divisor-closed matrix. Support must satisfy Omega(n) >= 2.
double frobenius_via_divisors(const Symbol& symbol);

// Entrywise weights w(m, n) for Schur multiplication.
struct WeightPattern {
    enum class Kind { constant, skew_log, skew_radial, homog_mask };
    Kind kind = Kind::constant;
    double value = 1.0;  // constant weight
    u64 level = 0;       // homog_mask level

    static WeightPattern constant(double c);
    static WeightPattern skew_log();     // log n / (log m + log n), 0 at m = n = 1
    static WeightPattern skew_radial();  // Omega(n) / (Omega(m) + Omega(n)), 0 at m = n = 1
    static WeightPattern homog_mask(u64 m);  // indicator of Omega(mn) = m

    double weight(u64 m, u64 n) const;
};

Eigen::MatrixXcd schur_apply(const HankelMatrix& M, const WeightPattern& pattern);

// rho_{p_{2j-1} p_{2k}} = C(j,k); rows use odd-indexed primes, columns even.
Symbol embed_matrix(const Eigen::MatrixXcd& C);

// phi_d(s) = prod_{j=1..d} (p_{2j-1}^{-s} + p_{2j}^{-s})
DirichletPolynomial phi_d_symbol(u64 d);

// rho_n = 1/(sqrt(n) log n) for 2 <= n <= N, rho_1 = 0
Symbol mult_hilbert_symbol(u64 n_max);

enum class HilbertVariant {
    mult,       // 1/(sqrt(mn) log mn), indices {2..N}
    mult_full,  // same entries on {1..N} with rho_1 = 0 (open-question sweep)
    add,        // 1/(m+n), m,n >= 1
    add_shifted,  // 1/(m+n+1), m,n >= 0
    add_zero,     // 1/(m+n), m,n >= 0, entry 0 at m = n = 0
    mult_half,    // 1/(sqrt((m+1/2)(n+1/2)) log((m+1/2)(n+1/2))), m,n >= 1
};

HilbertVariant hilbert_variant_from_name(const std::string& name);
std::string hilbert_variant_name(HilbertVariant v);

// The four variants indexed by integer position rather than by n; rejects
// mult/mult_full (those are Hankel matrices of mult_hilbert_symbol).
Eigen::MatrixXd additive_hilbert_matrix(HilbertVariant variant, std::size_t n);

// Dense N x N section for any variant, for the SVD sweep. Multiplicative
// entries use 1/(sqrt(m) sqrt(n) (log m + log n)) with factorization logs.
Eigen::MatrixXd hilbert_matrix(HilbertVariant variant, std::size_t n);

// Streaming y = Kx for the same section, for the matrix-free sweep. The
// returned closure owns its precomputed tables and is thread-safe.
struct HilbertKernel {
    std::size_t size = 0;
    std::function<void(const double*, double*)> apply;
};
HilbertKernel hilbert_kernel(HilbertVariant variant, std::size_t n);

// Fourier coefficients c_k, k = 1..k_max, of Phi(theta) = i(pi - theta) on
// [0, 2pi), by composite Simpson on the uniform grid (grid_size intervals).
// grid_size must be a power of two >= 4*k_max. Analytic value is 1/k.
std::vector<cdouble> nehari_symbol_coefficients(std::size_t k_max, std::size_t grid_size);

// a^T M b, no conjugation: the bilinear pairing rho(a, b).
cdouble bilinear_eval(const HankelMatrix& M, const Eigen::VectorXcd& a,
                      const Eigen::VectorXcd& b);

// coefficient vector of f over an index set (zero where absent)
Eigen::VectorXcd coefficient_vector(const DirichletPolynomial& f,
                                    const std::vector<u64>& index_set);

}  // namespace mhankel
