#include "mhankel/hankel.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "mhankel/rng.hpp"

namespace mhankel {

Symbol Symbol::from_analytic(const DirichletPolynomial& phi) {
    Symbol s;
    for (const auto& [n, a] : phi.coefficients()) s.rho[n] = std::conj(a);
    return s;
}

DirichletPolynomial Symbol::analytic() const {
    std::map<u64, cdouble> coeffs;
    for (const auto& [n, r] : rho) coeffs[n] = std::conj(r);
    return DirichletPolynomial(std::move(coeffs));
}

cdouble Symbol::at(u64 n) const {
    auto it = rho.find(n);
    return it == rho.end() ? cdouble(0.0, 0.0) : it->second;
}

std::vector<u64> index_range_full(u64 n) {
    if (n < 1) throw std::invalid_argument("index_range_full: n must be >= 1");
    std::vector<u64> out(n);
    for (u64 i = 0; i < n; ++i) out[i] = i + 1;
    return out;
}

std::vector<u64> index_range_zero(u64 n) {
    if (n < 2) throw std::invalid_argument("index_range_zero: n must be >= 2");
    std::vector<u64> out(n - 1);
    for (u64 i = 0; i < n - 1; ++i) out[i] = i + 2;
    return out;
}

std::vector<u64> index_divisor_closed(const Symbol& symbol, u64 threshold) {
    if (threshold != 1 && threshold != 2)
        throw std::invalid_argument("index_divisor_closed: threshold must be 1 or 2");
    std::unordered_set<u64> seen;
    for (const auto& [n0, r] : symbol.rho)
        for (const auto& [m, q] : divisor_pairs(n0, threshold)) seen.insert(m);
    std::vector<u64> out(seen.begin(), seen.end());
    std::sort(out.begin(), out.end());
    return out;
}

HankelMatrix build_hankel(const Symbol& symbol, std::vector<u64> index_set) {
    if (index_set.empty()) throw std::invalid_argument("build_hankel: empty index set");
    if (!std::is_sorted(index_set.begin(), index_set.end()) ||
        std::adjacent_find(index_set.begin(), index_set.end()) != index_set.end() ||
        index_set.front() < 1)
        throw std::invalid_argument("build_hankel: index set must be sorted, distinct, positive");

    std::unordered_map<u64, std::size_t> pos;
    pos.reserve(index_set.size() * 2);
    for (std::size_t i = 0; i < index_set.size(); ++i) pos[index_set[i]] = i;

    HankelMatrix M;
    M.entries = Eigen::MatrixXcd::Zero((Eigen::Index)index_set.size(),
                                       (Eigen::Index)index_set.size());
    // fill by two-part factorizations of each support element rather than by
    // all index pairs: O(sum d(n0)) instead of O(|index|^2) product lookups
    for (const auto& [n0, r] : symbol.rho) {
        for (const auto& [m, q] : divisor_pairs(n0, 1)) {
            auto im = pos.find(m);
            if (im == pos.end()) continue;
            auto iq = pos.find(q);
            if (iq == pos.end()) continue;
            M.entries((Eigen::Index)im->second, (Eigen::Index)iq->second) = r;
        }
    }
    M.index_set = std::move(index_set);
    return M;
}

namespace {

Eigen::VectorXcd start_vector_complex(Eigen::Index n, std::uint64_t seed) {
    Eigen::VectorXcd v(n);
    for (Eigen::Index i = 0; i < n; ++i)
        v(i) = cdouble(rng::draw_symmetric(seed, (std::uint64_t)(2 * i)),
                       rng::draw_symmetric(seed, (std::uint64_t)(2 * i + 1)));
    double nv = v.norm();
    return v / nv;
}

}  // namespace

SpectralResult spectral_norm(const Eigen::MatrixXcd& M, const SpectralOptions& opt) {
    SpectralResult res;
    if (M.rows() == 0 || M.cols() == 0) {
        res.converged = true;
        return res;
    }
    Eigen::VectorXcd v = start_vector_complex(M.cols(), opt.seed);
    Eigen::VectorXcd w(M.rows());
    double prev = 0.0;
    for (std::size_t it = 1; it <= opt.max_iter; ++it) {
        w.noalias() = M * v;
        double wn = w.norm();
        res.iterations = it;
        if (wn == 0.0) {  // v in the kernel: norm is 0 along this start
            res.value = 0.0;
            res.residual = 0.0;
            res.converged = true;
            return res;
        }
        res.value = wn;
        v.noalias() = M.adjoint() * w;
        v /= v.norm();
        res.residual = std::abs(res.value - prev);
        if (it >= 2 && res.residual <= opt.tol * std::max(1.0, res.value)) {
            res.converged = true;
            return res;
        }
        prev = res.value;
    }
    res.converged = false;
    return res;
}

SpectralResult spectral_norm(const HankelMatrix& M, const SpectralOptions& opt) {
    return spectral_norm(M.entries, opt);
}

SpectralResult spectral_norm_matfree(std::size_t n,
                                     const std::function<void(const double*, double*)>& apply,
                                     const SpectralOptions& opt) {
    SpectralResult res;
    if (n == 0) {
        res.converged = true;
        return res;
    }
    std::vector<double> v(n), w(n);
    double nv = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        v[i] = rng::draw_symmetric(opt.seed, i);
        nv += v[i] * v[i];
    }
    nv = std::sqrt(nv);
    for (auto& x : v) x /= nv;

    double prev = 0.0;
    for (std::size_t it = 1; it <= opt.max_iter; ++it) {
        apply(v.data(), w.data());
        double wn = 0.0;
        for (double x : w) wn += x * x;
        wn = std::sqrt(wn);
        res.iterations = it;
        if (wn == 0.0) {
            res.value = 0.0;
            res.residual = 0.0;
            res.converged = true;
            return res;
        }
        res.value = wn;
        apply(w.data(), v.data());  // symmetric kernel: K^T = K
        double vn = 0.0;
        for (double x : v) vn += x * x;
        vn = std::sqrt(vn);
        for (auto& x : v) x /= vn;
        res.residual = std::abs(res.value - prev);
        if (it >= 2 && res.residual <= opt.tol * std::max(1.0, res.value)) {
            res.converged = true;
            return res;
        }
        prev = res.value;
    }
    res.converged = false;
    return res;
}

double schatten_norm(const Eigen::MatrixXcd& M, double p) {
    if (!(p > 0.0)) throw std::invalid_argument("schatten_norm: p must be positive");
    if (M.rows() == 0 || M.cols() == 0) return 0.0;
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(M);
    const auto& sigma = svd.singularValues();
    double s = 0.0;
    for (Eigen::Index k = 0; k < sigma.size(); ++k) s += std::pow(sigma(k), p);
    return std::pow(s, 1.0 / p);
}

double schatten_norm(const HankelMatrix& M, double p) { return schatten_norm(M.entries, p); }

double frobenius_via_divisors(const Symbol& symbol) {
    double s = 0.0;
    for (const auto& [n, r] : symbol.rho) {
        if (omega(n) < 2)
            throw std::invalid_argument("frobenius_via_divisors: support must have Omega(n) >= 2");
        s += (double)(divisor_count(n) - 2) * std::norm(r);
    }
    return std::sqrt(s);
}

WeightPattern WeightPattern::constant(double c) {
    WeightPattern w;
    w.kind = Kind::constant;
    w.value = c;
    return w;
}

WeightPattern WeightPattern::skew_log() {
    WeightPattern w;
    w.kind = Kind::skew_log;
    return w;
}

WeightPattern WeightPattern::skew_radial() {
    WeightPattern w;
    w.kind = Kind::skew_radial;
    return w;
}

WeightPattern WeightPattern::homog_mask(u64 m) {
    WeightPattern w;
    w.kind = Kind::homog_mask;
    w.level = m;
    return w;
}

double WeightPattern::weight(u64 m, u64 n) const {
    switch (kind) {
        case Kind::constant:
            return value;
        case Kind::skew_log: {
            double lm = natural_log(m), ln = natural_log(n);
            double den = lm + ln;
            return den == 0.0 ? 0.0 : ln / den;  // den = 0 only at m = n = 1
        }
        case Kind::skew_radial: {
            double om = (double)omega(m), on = (double)omega(n);
            double den = om + on;
            return den == 0.0 ? 0.0 : on / den;
        }
        case Kind::homog_mask:
            return omega(m) + omega(n) == level ? 1.0 : 0.0;
    }
    return 0.0;
}

Eigen::MatrixXcd schur_apply(const HankelMatrix& M, const WeightPattern& pattern) {
    const auto& idx = M.index_set;
    Eigen::Index n = M.entries.rows();
    Eigen::MatrixXcd out(n, n);

    if (pattern.kind == WeightPattern::Kind::constant) {
        out = M.entries * pattern.value;
        return out;
    }

    // one factorization per index; the per-entry weight then reuses the exact
    // same log/Omega values the scalar weight() would produce
    std::vector<double> key(idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i)
        key[i] = pattern.kind == WeightPattern::Kind::skew_log ? natural_log(idx[i])
                                                               : (double)omega(idx[i]);

    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            double w;
            if (pattern.kind == WeightPattern::Kind::homog_mask) {
                w = key[(std::size_t)i] + key[(std::size_t)j] == (double)pattern.level ? 1.0 : 0.0;
            } else {
                double den = key[(std::size_t)i] + key[(std::size_t)j];
                w = den == 0.0 ? 0.0 : key[(std::size_t)j] / den;
            }
            out(i, j) = M.entries(i, j) * w;
        }
    }
    return out;
}

Symbol embed_matrix(const Eigen::MatrixXcd& C) {
    std::size_t jmax = (std::size_t)C.rows(), kmax = (std::size_t)C.cols();
    Symbol s;
    if (jmax == 0 || kmax == 0) return s;
    PrimeTable primes = sieve_primes(2 * std::max(jmax, kmax));
    for (std::size_t j = 1; j <= jmax; ++j) {
        for (std::size_t k = 1; k <= kmax; ++k) {
            cdouble c = C((Eigen::Index)(j - 1), (Eigen::Index)(k - 1));
            if (c == cdouble(0.0, 0.0)) continue;
            s.rho[primes.prime(2 * j - 1) * primes.prime(2 * k)] = c;
        }
    }
    return s;
}

DirichletPolynomial phi_d_symbol(u64 d) {
    if (d < 1) throw std::invalid_argument("phi_d_symbol: d must be >= 1");
    PrimeTable primes = sieve_primes(2 * (std::size_t)d);
    DirichletPolynomial phi = DirichletPolynomial::constant(1.0);
    for (u64 j = 1; j <= d; ++j) {
        DirichletPolynomial factor = add(DirichletPolynomial::monomial(primes.prime(2 * j - 1)),
                                         DirichletPolynomial::monomial(primes.prime(2 * j)));
        phi = multiply(phi, factor);
    }
    return phi;
}

Symbol mult_hilbert_symbol(u64 n_max) {
    if (n_max < 2) throw std::invalid_argument("mult_hilbert_symbol: cutoff must be >= 2");
    Symbol s;
    for (u64 n = 2; n <= n_max; ++n) s.rho[n] = 1.0 / (std::sqrt((double)n) * natural_log(n));
    return s;
}

HilbertVariant hilbert_variant_from_name(const std::string& name) {
    if (name == "mult") return HilbertVariant::mult;
    if (name == "mult-full") return HilbertVariant::mult_full;
    if (name == "add") return HilbertVariant::add;
    if (name == "add-shifted") return HilbertVariant::add_shifted;
    if (name == "add-zero") return HilbertVariant::add_zero;
    if (name == "mult-half") return HilbertVariant::mult_half;
    throw std::invalid_argument("unknown hilbert variant: " + name);
}

std::string hilbert_variant_name(HilbertVariant v) {
    switch (v) {
        case HilbertVariant::mult: return "mult";
        case HilbertVariant::mult_full: return "mult-full";
        case HilbertVariant::add: return "add";
        case HilbertVariant::add_shifted: return "add-shifted";
        case HilbertVariant::add_zero: return "add-zero";
        case HilbertVariant::mult_half: return "mult-half";
    }
    return "?";
}

namespace {

struct HilbertTables {
    // multiplicative variants: first_index..n with u = 1/sqrt(index),
    // lam = factorization log (or half-integer log for mult_half)
    std::vector<double> u, lam;
};

HilbertTables hilbert_tables(HilbertVariant variant, std::size_t n) {
    HilbertTables t;
    if (variant == HilbertVariant::mult || variant == HilbertVariant::mult_full) {
        u64 first = variant == HilbertVariant::mult ? 2 : 1;
        t.u.reserve(n - first + 1);
        t.lam.reserve(n - first + 1);
        for (u64 m = first; m <= n; ++m) {
            t.u.push_back(1.0 / std::sqrt((double)m));
            t.lam.push_back(natural_log(m));
        }
    } else if (variant == HilbertVariant::mult_half) {
        for (u64 m = 1; m <= n; ++m) {
            double x = (double)m + 0.5;
            t.u.push_back(1.0 / std::sqrt(x));
            t.lam.push_back(std::log(x));
        }
    }
    return t;
}

double hilbert_entry(HilbertVariant variant, const HilbertTables& t, std::size_t i,
                     std::size_t j) {
    switch (variant) {
        case HilbertVariant::mult:
        case HilbertVariant::mult_full:
        case HilbertVariant::mult_half: {
            double den = t.lam[i] + t.lam[j];
            return den == 0.0 ? 0.0 : t.u[i] * t.u[j] / den;  // 0 only at index pair (1,1)
        }
        case HilbertVariant::add:
            return 1.0 / (double)(i + j + 2);
        case HilbertVariant::add_shifted:
            return 1.0 / (double)(i + j + 1);
        case HilbertVariant::add_zero:
            return i + j == 0 ? 0.0 : 1.0 / (double)(i + j);
    }
    return 0.0;
}

}  // namespace

Eigen::MatrixXd additive_hilbert_matrix(HilbertVariant variant, std::size_t n) {
    if (variant == HilbertVariant::mult || variant == HilbertVariant::mult_full)
        throw std::invalid_argument(
            "additive_hilbert_matrix: multiplicative-indexed variants are Hankel matrices of "
            "mult_hilbert_symbol; use hilbert_matrix");
    return hilbert_matrix(variant, n);
}

Eigen::MatrixXd hilbert_matrix(HilbertVariant variant, std::size_t n) {
    if (n < 1) throw std::invalid_argument("hilbert_matrix: n must be >= 1");
    std::size_t size = variant == HilbertVariant::mult ? n - 1 : n;
    if (variant == HilbertVariant::mult && n < 2)
        throw std::invalid_argument("hilbert_matrix: mult variant needs n >= 2");
    HilbertTables t = hilbert_tables(variant, n);
    Eigen::MatrixXd M((Eigen::Index)size, (Eigen::Index)size);
    for (std::size_t i = 0; i < size; ++i)
        for (std::size_t j = 0; j < size; ++j)
            M((Eigen::Index)i, (Eigen::Index)j) = hilbert_entry(variant, t, i, j);
    return M;
}

HilbertKernel hilbert_kernel(HilbertVariant variant, std::size_t n) {
    if (n < 1) throw std::invalid_argument("hilbert_kernel: n must be >= 1");
    if (variant == HilbertVariant::mult && n < 2)
        throw std::invalid_argument("hilbert_kernel: mult variant needs n >= 2");
    std::size_t size = variant == HilbertVariant::mult ? n - 1 : n;

    HilbertKernel k;
    k.size = size;
    if (variant == HilbertVariant::mult || variant == HilbertVariant::mult_full ||
        variant == HilbertVariant::mult_half) {
        auto tables = std::make_shared<HilbertTables>(hilbert_tables(variant, n));
        k.apply = [tables, size](const double* x, double* y) {
            const double* u = tables->u.data();
            const double* lam = tables->lam.data();
            // ux[j] hoisted so the inner loop is a single fused multiply-divide pass
            std::vector<double> ux(size);
            for (std::size_t j = 0; j < size; ++j) ux[j] = u[j] * x[j];
            for (std::size_t i = 0; i < size; ++i) {
                const double li = lam[i];
                double s = 0.0;
                if (li == 0.0) {
                    // index 1 row of mult_full: entry (1,1) is 0
                    for (std::size_t j = 0; j < size; ++j)
                        s += lam[j] == 0.0 ? 0.0 : ux[j] / lam[j];
                } else {
                    for (std::size_t j = 0; j < size; ++j) s += ux[j] / (li + lam[j]);
                }
                y[i] = u[i] * s;
            }
        };
    } else {
        HilbertVariant v = variant;
        k.apply = [v, size](const double* x, double* y) {
            for (std::size_t i = 0; i < size; ++i) {
                double s = 0.0;
                switch (v) {
                    case HilbertVariant::add: {
                        double base = (double)(i + 2);
                        for (std::size_t j = 0; j < size; ++j) s += x[j] / (base + (double)j);
                        break;
                    }
                    case HilbertVariant::add_shifted: {
                        double base = (double)(i + 1);
                        for (std::size_t j = 0; j < size; ++j) s += x[j] / (base + (double)j);
                        break;
                    }
                    case HilbertVariant::add_zero: {
                        double base = (double)i;
                        std::size_t j0 = i == 0 ? 1 : 0;
                        for (std::size_t j = j0; j < size; ++j) s += x[j] / (base + (double)j);
                        break;
                    }
                    default:
                        break;
                }
                y[i] = s;
            }
        };
    }
    return k;
}

std::vector<cdouble> nehari_symbol_coefficients(std::size_t k_max, std::size_t grid_size) {
    if (k_max < 1) throw std::invalid_argument("nehari_symbol_coefficients: k_max must be >= 1");
    if (grid_size < 4 || (grid_size & (grid_size - 1)) != 0 || grid_size < 4 * k_max)
        throw std::invalid_argument(
            "nehari_symbol_coefficients: grid_size must be a power of two >= 4*k_max");

    const double two_pi = 2.0 * std::numbers::pi;
    const std::size_t G = grid_size;

    std::vector<cdouble> out(k_max);
    for (std::size_t k = 1; k <= k_max; ++k) {
        // composite Simpson over [0, 2pi] of (1/2pi) i(pi - theta) e^{-ik theta};
        // the integrand is the smooth polynomial branch, endpoint value -i pi.
        // Kahan compensation keeps 65k-term roundoff below the 1e-10 Im budget.
        double sr = 0.0, cr = 0.0, si = 0.0, ci = 0.0;
        for (std::size_t t = 0; t <= G; ++t) {
            double theta = two_pi * (double)t / (double)G;
            double amp = std::numbers::pi - theta;
            double w = (t == 0 || t == G) ? 1.0 : (t % 2 == 1 ? 4.0 : 2.0);
            double re = w * amp * std::sin((double)k * theta);
            double im = w * amp * std::cos((double)k * theta);
            double yr = re - cr, tr = sr + yr;
            cr = (tr - sr) - yr;
            sr = tr;
            double yi = im - ci, ti = si + yi;
            ci = (ti - si) - yi;
            si = ti;
        }
        double h = two_pi / (double)G;
        out[k - 1] = cdouble(sr, si) * (h / 3.0) / two_pi;
    }
    return out;
}

cdouble bilinear_eval(const HankelMatrix& M, const Eigen::VectorXcd& a,
                      const Eigen::VectorXcd& b) {
    if (a.size() != M.entries.rows() || b.size() != M.entries.cols())
        throw std::invalid_argument("bilinear_eval: vector length does not match the index set");
    return (a.transpose() * (M.entries * b)).value();
}

Eigen::VectorXcd coefficient_vector(const DirichletPolynomial& f,
                                    const std::vector<u64>& index_set) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero((Eigen::Index)index_set.size());
    for (std::size_t i = 0; i < index_set.size(); ++i) v(i) = f.coefficient(index_set[i]);
    return v;
}

}  // namespace mhankel
