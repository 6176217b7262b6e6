#pragma once

// Reproducible experiment runners behind the CLI subcommands. Each run_*
// takes a config whose every field is echoed into the report, computes a row
// table, evaluates pass/fail verdicts from tolerances present in the config,
// and returns a single JSON document (schema 1). Exit-code policy and file
// output live in the CLI driver; these functions are pure given their config.

#include <string>
#include <vector>

#include <json.hpp>

#include "mhankel/hankel.hpp"

namespace mhankel::experiments {

using json = nlohmann::ordered_json;

struct Verdict {
    std::string name;
    bool pass = false;
    std::string detail;
};

json make_report(const std::string& subcommand, const json& config, const json& rows,
                 const std::vector<Verdict>& verdicts, double duration_seconds);
bool report_all_pass(const json& report);

// ---- hilbert: truncated norm sweeps of the Hilbert-type matrices ----
struct HilbertConfig {
    std::string variant = "mult";  // mult | mult-full | add | add-shifted | add-zero | mult-half
    std::vector<u64> n_list = {200, 500, 1000, 2000};
    std::string mode = "svd";  // svd (N <= 4000) | matfree (power iteration)
    double tol = 1e-10;        // power-iteration stopping tolerance
    std::size_t max_iter = 100000;
    std::uint64_t seed = 2024;
    double pi_margin = 1e-9;       // verdict: value <= pi + pi_margin
    double monotone_slack = 1e-12;  // verdict: nondecreasing within roundoff slack
};
json run_hilbert(const HilbertConfig& cfg);

// ---- embed-verify: prime-pair embedding exactness and sandwich ----
struct EmbedVerifyConfig {
    std::size_t trials = 20;
    std::size_t max_size = 6;  // random sizes 1..max_size, entries re,im uniform [-1,1]
    std::uint64_t seed = 2024;
    double exact_tol = 1e-8;       // |restricted norm - sigma_max(C)|
    double sandwich_margin = 1e-9;  // S2 - margin <= full <= 4*S2 + margin
    double iter_tol = 1e-12;       // power-iteration tolerance
    std::string matrix_csv;        // optional extra case read as `i,j,re,im`
};
json run_embed_verify(const EmbedVerifyConfig& cfg);

// ---- phi-d: 2^{d/2} / (4/pi)^d / 2^d separation numbers ----
struct PhiDConfig {
    std::vector<u64> d_list = {1, 2, 3, 4};  // d <= 4
    std::uint64_t samples = 1000000;
    u64 mc_max_d = 3;
    std::uint64_t seed = 2024;
    double norm_tol = 1e-8;
    double pairing_tol = 1e-12;
    double iter_tol = 1e-12;
};
json run_phi_d(const PhiDConfig& cfg);

// ---- schatten-embed: singular-value doubling and the diagonal trend ----
struct SchattenEmbedConfig {
    std::vector<double> p_list = {1, 2, 3, 4};
    std::size_t trials = 10;
    std::size_t max_size = 5;  // random sizes 1..max_size
    double alpha = 0.5;        // diagonal entries k^{-alpha}
    std::vector<u64> k_list = {25, 50, 100, 200};
    std::uint64_t seed = 2024;
    double doubling_tol = 1e-8;   // |S_p(M0)^p - 2 S_p(C)^p|
    double harmonic_tol = 1e-10;  // |S_2(M0)^2 - 2 H_K| for the diagonal
};
json run_schatten_embed(const SchattenEmbedConfig& cfg);

// ---- schur: weight-pattern contraction checks and the Bennett tails ----
struct SchurConfig {
    // homog_mask_all_m | skew_log_nonneg | skew_radial_embed | bennett_tails
    std::string pattern = "homog_mask_all_m";
    std::size_t trials = 50;
    std::uint64_t seed = 2024;
    double contraction_slack = 1e-10;
    double iter_tol = 1e-13;
    std::string symbol_csv;  // optional extra mask case read as `n,re,im`
    // bennett_tails parameters
    std::size_t table_count = 10000;  // prime count backing the tails
    double gap_min = 0.4;
    std::vector<std::size_t> search_sizes = {16, 32, 64};
    std::size_t search_rounds = 40;
};
json run_schur(const SchurConfig& cfg);

struct BennettTails {
    double row_tail = 0.0;  // k at the table edge, j = 1: tends to 1
    double col_tail = 0.0;  // j at the table edge, k = 1: tends to 0
    double gap = 0.0;
};
BennettTails bennett_tails(std::size_t table_count);

// ---- inequalities: Helson, Hardy-homogeneous, slice-norm identity, Hardy ----
struct InequalityConfig {
    std::size_t trials = 20;
    std::uint64_t samples = 200000;         // direct MC sample budget
    std::uint64_t homog_samples = 100000;   // per homogeneity level
    std::uint64_t nested_samples = 20000;   // z-samples of the nested estimator
    std::size_t grid = 256;                 // slice quadrature grid
    std::uint64_t seed = 2024;
    double exact_tol = 1e-12;      // p = 2 Parseval routes
    double slice_quad_tol = 1e-6;  // odd-p slice quadrature allowance
    // random family: support size 6..12 drawn from n in [1, 64] distinct,
    // coefficients re,im uniform [-1,1]
    u64 support_max = 64;
};
json run_inequalities(const InequalityConfig& cfg);

// ---- nehari: Fourier coefficients of Phi(theta) = i(pi - theta) ----
struct NehariConfig {
    std::size_t k_max = 100;
    std::size_t grid = 65536;  // power of two >= 4*k_max
    double coeff_tol = 1e-8;   // |c_k - 1/k|
    double sup_tol = 1e-6;     // grid sup of |Phi| vs pi
    double imag_tol = 1e-10;   // |Im c_k|
};
json run_nehari(const NehariConfig& cfg);

// rows flattened to CSV with dotted column names (optional side table)
void write_rows_csv(const std::string& path, const json& rows);

}  // namespace mhankel::experiments
