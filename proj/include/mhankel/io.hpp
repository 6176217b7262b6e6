#pragma once

// File formats shared across modules and the CLI:
//   symbols / polynomials : CSV `n,re,im`, one row per nonzero coefficient,
//                           n strictly increasing, LF line endings
//   matrices              : CSV `i,j,re,im`, nonzeros only, row-major, 0-based
//   norm / MC results     : JSON records (built on nlohmann::json)

#include <Eigen/Dense>
#include <map>
#include <string>

#include <json.hpp>

#include "mhankel/hankel.hpp"
#include "mhankel/montecarlo.hpp"

namespace mhankel {

void write_coefficients_csv(const std::string& path, const std::map<u64, cdouble>& coeffs);
void write_symbol_csv(const std::string& path, const Symbol& symbol);
void write_polynomial_csv(const std::string& path, const DirichletPolynomial& f);

std::map<u64, cdouble> read_coefficients_csv(const std::string& path);
Symbol read_symbol_csv(const std::string& path);
DirichletPolynomial read_polynomial_csv(const std::string& path);

void write_matrix_csv(const std::string& path, const Eigen::MatrixXcd& M);
Eigen::MatrixXcd read_matrix_csv(const std::string& path);

// {"operation", "parameters", "value", "residual", "iterations", "seed"}
nlohmann::json norm_record(const std::string& operation, const nlohmann::json& parameters,
                           const SpectralResult& result, std::uint64_t seed);

// {"mean", "stderr", "samples", "seed"}
nlohmann::json mc_record(const McEstimate& estimate);

}  // namespace mhankel
