#include "mhankel/dirichlet.hpp"

#include <cmath>
#include <stdexcept>

namespace mhankel {

CharacterPoint CharacterPoint::from_angles(const std::vector<double>& theta) {
    CharacterPoint chi;
    chi.values.reserve(theta.size());
    for (double t : theta) chi.values.emplace_back(std::cos(t), std::sin(t));
    return chi;
}

CharacterPoint CharacterPoint::ones(std::size_t d) {
    CharacterPoint chi;
    chi.values.assign(d, cdouble(1.0, 0.0));
    return chi;
}

cdouble CharacterPoint::power(const MultiIndex& kappa) const {
    if (kappa.dimension() > values.size())
        throw std::invalid_argument("CharacterPoint: point does not cover all primes of the support");
    cdouble r(1.0, 0.0);
    for (std::size_t j = 0; j < kappa.dimension(); ++j) {
        std::uint32_t e = kappa.exponents()[j];
        for (std::uint32_t k = 0; k < e; ++k) r *= values[j];
    }
    return r;
}

cdouble SlicePolynomial::evaluate(cdouble w) const {
    cdouble r(0.0, 0.0);
    for (std::size_t m = coeffs.size(); m-- > 0;) r = r * w + coeffs[m];
    return r;
}

namespace {

void drop_zeros(std::map<u64, cdouble>& m) {
    for (auto it = m.begin(); it != m.end();) {
        if (it->second == cdouble(0.0, 0.0))
            it = m.erase(it);
        else
            ++it;
    }
}

}  // namespace

DirichletPolynomial::DirichletPolynomial(std::map<u64, cdouble> coeffs)
    : coeffs_(std::move(coeffs)) {
    if (!coeffs_.empty() && coeffs_.begin()->first == 0)
        throw std::invalid_argument("DirichletPolynomial: indices must be positive");
    drop_zeros(coeffs_);
}

DirichletPolynomial DirichletPolynomial::monomial(u64 n, cdouble a) {
    if (n == 0) throw std::invalid_argument("DirichletPolynomial: indices must be positive");
    std::map<u64, cdouble> m;
    if (a != cdouble(0.0, 0.0)) m[n] = a;
    return DirichletPolynomial(std::move(m));
}

cdouble DirichletPolynomial::coefficient(u64 n) const {
    auto it = coeffs_.find(n);
    return it == coeffs_.end() ? cdouble(0.0, 0.0) : it->second;
}

std::size_t DirichletPolynomial::prime_dimension() const {
    std::size_t d = 0;
    for (const auto& [n, a] : coeffs_) d = std::max(d, factorize(n).dimension());
    return d;
}

u64 DirichletPolynomial::max_order() const {
    u64 m = 0;
    for (const auto& [n, a] : coeffs_) m = std::max(m, omega(n));
    return m;
}

DirichletPolynomial add(const DirichletPolynomial& f, const DirichletPolynomial& g) {
    std::map<u64, cdouble> out = f.coefficients();
    for (const auto& [n, a] : g.coefficients()) out[n] += a;
    return DirichletPolynomial(std::move(out));
}

DirichletPolynomial scale(const DirichletPolynomial& f, cdouble c) {
    std::map<u64, cdouble> out;
    if (c == cdouble(0.0, 0.0)) return DirichletPolynomial(std::move(out));
    for (const auto& [n, a] : f.coefficients()) out[n] = c * a;
    return DirichletPolynomial(std::move(out));
}

DirichletPolynomial multiply(const DirichletPolynomial& f, const DirichletPolynomial& g) {
    std::map<u64, cdouble> out;
    for (const auto& [m, a] : f.coefficients())
        for (const auto& [n, b] : g.coefficients()) out[m * n] += a * b;
    return DirichletPolynomial(std::move(out));
}

DirichletPolynomial homogeneous_project(const DirichletPolynomial& f, u64 m) {
    std::map<u64, cdouble> out;
    for (const auto& [n, a] : f.coefficients())
        if (omega(n) == m) out[n] = a;
    return DirichletPolynomial(std::move(out));
}

DirichletPolynomial derivative_halfplane(const DirichletPolynomial& f) {
    std::map<u64, cdouble> out;
    for (const auto& [n, a] : f.coefficients())
        if (n > 1) out[n] = -a * natural_log(n);
    return DirichletPolynomial(std::move(out));
}

DirichletPolynomial primitive_halfplane(const DirichletPolynomial& f) {
    if (f.coefficient(1) != cdouble(0.0, 0.0))
        throw std::invalid_argument("primitive_halfplane: constant term must be zero");
    std::map<u64, cdouble> out;
    for (const auto& [n, a] : f.coefficients()) out[n] = -a / natural_log(n);
    return DirichletPolynomial(std::move(out));
}

DirichletPolynomial radial_derivative(const DirichletPolynomial& f) {
    std::map<u64, cdouble> out;
    for (const auto& [n, a] : f.coefficients())
        if (n > 1) out[n] = a * (double)omega(n);
    return DirichletPolynomial(std::move(out));
}

DirichletPolynomial radial_primitive(const DirichletPolynomial& f) {
    if (f.coefficient(1) != cdouble(0.0, 0.0))
        throw std::invalid_argument("radial_primitive: constant term must be zero");
    std::map<u64, cdouble> out;
    for (const auto& [n, a] : f.coefficients()) out[n] = a / (double)omega(n);
    return DirichletPolynomial(std::move(out));
}

DirichletPolynomial twist(const DirichletPolynomial& f, const CharacterPoint& chi) {
    std::map<u64, cdouble> out;
    for (const auto& [n, a] : f.coefficients()) out[n] = a * chi.power(factorize(n));
    return DirichletPolynomial(std::move(out));
}

cdouble evaluate(const DirichletPolynomial& f, const CharacterPoint& z) {
    cdouble r(0.0, 0.0);
    for (const auto& [n, a] : f.coefficients()) r += a * z.power(factorize(n));
    return r;
}

SlicePolynomial slice(const DirichletPolynomial& f, const CharacterPoint& z) {
    SlicePolynomial s;
    if (f.is_zero()) {
        s.coeffs.assign(1, cdouble(0.0, 0.0));
        return s;
    }
    s.coeffs.assign(f.max_order() + 1, cdouble(0.0, 0.0));
    for (const auto& [n, a] : f.coefficients()) s.coeffs[omega(n)] += a * z.power(factorize(n));
    return s;
}

double h2_norm(const DirichletPolynomial& f) {
    double s = 0.0;
    for (const auto& [n, a] : f.coefficients()) s += std::norm(a);
    return std::sqrt(s);
}

cdouble inner_product(const DirichletPolynomial& f, const DirichletPolynomial& g) {
    // conjugate-linear in the second argument
    cdouble s(0.0, 0.0);
    for (const auto& [n, a] : f.coefficients()) {
        cdouble b = g.coefficient(n);
        if (b != cdouble(0.0, 0.0)) s += a * std::conj(b);
    }
    return s;
}

LinearFreeDecomposition linear_free_decompose(const DirichletPolynomial& F, std::size_t d) {
    if (F.coefficient(1) != cdouble(0.0, 0.0))
        throw std::invalid_argument("linear_free_decompose: constant term must be zero");
    std::vector<std::map<u64, cdouble>> parts(d);
    PrimeTable primes = sieve_primes(std::max<std::size_t>(d, 1));
    for (const auto& [n, a] : F.coefficients()) {
        MultiIndex kappa = factorize(n);
        if (kappa.order() == 1)
            throw std::invalid_argument("linear_free_decompose: linear part must be zero");
        if (kappa.dimension() > d)
            throw std::invalid_argument("linear_free_decompose: support uses primes beyond p_d");
        std::size_t j = 0;
        while (kappa.exponents()[j] == 0) ++j;  // smallest prime factor index (0-based)
        parts[j][n / primes.prime(j + 1)] = a;
    }
    LinearFreeDecomposition out;
    out.parts.reserve(d);
    for (auto& m : parts) {
        DirichletPolynomial fj(std::move(m));
        out.weak_product_cost += h2_norm(fj);
        out.parts.push_back(std::move(fj));
    }
    return out;
}

}  // namespace mhankel
