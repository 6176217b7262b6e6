#pragma once

// Finitely supported Dirichlet polynomials f(s) = sum a_n n^{-s}, the
// half-plane derivative D and the radial operator R with their primitives,
// homogeneous projections, character twists, Bohr-lift evaluation on the
// polytorus and one-variable slices.

#include <complex>
#include <map>
#include <vector>

#include "mhankel/bohr.hpp"

namespace mhankel {

using cdouble = std::complex<double>;

// A point (chi_1, ..., chi_d) of the polytorus; values must be unimodular.
struct CharacterPoint {
    std::vector<cdouble> values;

    std::size_t dimension() const { return values.size(); }
    static CharacterPoint from_angles(const std::vector<double>& theta);
    static CharacterPoint ones(std::size_t d);
    // chi^kappa = prod chi_j^{kappa_j}; throws if kappa needs more coordinates
    cdouble power(const MultiIndex& kappa) const;
};

// Coefficients c_0..c_M of the slice F_z(w) = sum_m P_m F(z) w^m.
struct SlicePolynomial {
    std::vector<cdouble> coeffs;

    std::size_t degree() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }
    cdouble evaluate(cdouble w) const;
};

class DirichletPolynomial {
public:
    DirichletPolynomial() = default;
    // entries with coefficient exactly zero are dropped
    explicit DirichletPolynomial(std::map<u64, cdouble> coeffs);

    static DirichletPolynomial monomial(u64 n, cdouble a = 1.0);
    static DirichletPolynomial constant(cdouble c) { return monomial(1, c); }

    const std::map<u64, cdouble>& coefficients() const { return coeffs_; }
    cdouble coefficient(u64 n) const;
    bool is_zero() const { return coeffs_.empty(); }
    std::size_t support_size() const { return coeffs_.size(); }
    u64 max_support() const { return coeffs_.empty() ? 1 : coeffs_.rbegin()->first; }
    // largest prime index appearing in the support (0 for constants)
    std::size_t prime_dimension() const;
    // max Omega(n) over the support (0 for constants and the zero polynomial)
    u64 max_order() const;

    bool operator==(const DirichletPolynomial& other) const { return coeffs_ == other.coeffs_; }

private:
    std::map<u64, cdouble> coeffs_;  // ordered by n: deterministic float accumulation
};

DirichletPolynomial add(const DirichletPolynomial& f, const DirichletPolynomial& g);
DirichletPolynomial scale(const DirichletPolynomial& f, cdouble c);
// Dirichlet convolution (fg)_n = sum_{d|n} f_d g_{n/d}
DirichletPolynomial multiply(const DirichletPolynomial& f, const DirichletPolynomial& g);

// P_m f: coefficients restricted to {n : Omega(n) = m}
DirichletPolynomial homogeneous_project(const DirichletPolynomial& f, u64 m);

// Df = -sum a_n log(n) n^{-s}; primitive inverts D on polynomials with a_1 = 0
DirichletPolynomial derivative_halfplane(const DirichletPolynomial& f);
DirichletPolynomial primitive_halfplane(const DirichletPolynomial& f);

// Rf = sum Omega(n) a_n n^{-s}; radial_primitive inverts R, constant term must be 0
DirichletPolynomial radial_derivative(const DirichletPolynomial& f);
DirichletPolynomial radial_primitive(const DirichletPolynomial& f);

// f_chi = sum a_n chi^{kappa(n)} n^{-s}; chi must cover the support
DirichletPolynomial twist(const DirichletPolynomial& f, const CharacterPoint& chi);

// Bohr-lift value Bf(z) = sum a_n z^{kappa(n)}
cdouble evaluate(const DirichletPolynomial& f, const CharacterPoint& z);

SlicePolynomial slice(const DirichletPolynomial& f, const CharacterPoint& z);

double h2_norm(const DirichletPolynomial& f);
cdouble inner_product(const DirichletPolynomial& f, const DirichletPolynomial& g);

// F = sum_j p_j^{-s} F_j by smallest-prime-factor assignment; supports of the
// F_j lift to disjoint monomial sets so sum ||F_j||^2 = ||F||^2 exactly.
struct LinearFreeDecomposition {
    std::vector<DirichletPolynomial> parts;  // F_1, ..., F_d
    double weak_product_cost = 0.0;          // sum_j ||F_j||, bounded by sqrt(d)||F||
};
LinearFreeDecomposition linear_free_decompose(const DirichletPolynomial& F, std::size_t d);

}  // namespace mhankel
