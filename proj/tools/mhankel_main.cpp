// Command-line front end. Every subcommand runs one experiment, prints the
// JSON report to stdout (or --out), mirrors verdict lines on stderr, and
// exits 0 only when every verdict passed. Usage problems exit 2.

#include <cstdio>
#include <exception>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "mhankel/experiments.hpp"

namespace ex = mhankel::experiments;

namespace {

struct CommonOut {
    std::string json_path;
    std::string csv_path;
};

void add_common(CLI::App* sub, CommonOut& common) {
    sub->add_option("--out", common.json_path, "write the JSON report here instead of stdout");
    sub->add_option("--csv-out", common.csv_path, "also write the flattened row table as CSV");
}

int emit(const ex::json& report, const CommonOut& common) {
    std::string text = report.dump(2);
    text.push_back('\n');
    if (common.json_path.empty()) {
        std::fwrite(text.data(), 1, text.size(), stdout);
        std::fflush(stdout);
    } else {
        std::ofstream out(common.json_path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open " + common.json_path);
        out << text;
        if (!out.good()) throw std::runtime_error("write failed for " + common.json_path);
    }
    if (!common.csv_path.empty()) ex::write_rows_csv(common.csv_path, report.at("rows"));

    for (const auto& v : report.at("verdicts")) {
        std::cerr << (v.at("pass").get<bool>() ? "[PASS] " : "[FAIL] ")
                  << v.at("name").get<std::string>() << ": "
                  << v.at("detail").get<std::string>() << "\n";
    }
    bool all = ex::report_all_pass(report);
    char line[128];
    std::snprintf(line, sizeof line, "%s (%.2f s)\n",
                  all ? "all verdicts passed" : "verdict failure",
                  report.at("duration_seconds").get<double>());
    std::cerr << line;
    return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical laboratory for multiplicative Hankel forms"};
    app.require_subcommand(1);

    int code = 0;

    ex::HilbertConfig hilbert;
    CommonOut hilbert_out;
    auto* hilbert_sub = app.add_subcommand("hilbert", "spectral norm sweep of a Hilbert-type family");
    hilbert_sub->add_option("--variant", hilbert.variant,
                            "mult | mult-full | add | add-shifted | add-zero | mult-half")
        ->capture_default_str();
    hilbert_sub->add_option("--n", hilbert.n_list, "truncation sizes")->capture_default_str();
    hilbert_sub->add_option("--mode", hilbert.mode, "svd (n <= 4000) | matfree")
        ->capture_default_str();
    hilbert_sub->add_option("--tol", hilbert.tol, "power-iteration stopping tolerance")
        ->capture_default_str();
    hilbert_sub->add_option("--seed", hilbert.seed, "start-vector stream seed")
        ->capture_default_str();
    add_common(hilbert_sub, hilbert_out);
    hilbert_sub->callback([&] { code = emit(ex::run_hilbert(hilbert), hilbert_out); });

    ex::EmbedVerifyConfig embed;
    CommonOut embed_out;
    auto* embed_sub =
        app.add_subcommand("embed-verify", "prime-pair embedding exactness and the S2 sandwich");
    embed_sub->add_option("--trials", embed.trials, "random matrices")->capture_default_str();
    embed_sub->add_option("--max-size", embed.max_size, "largest random dimension")
        ->capture_default_str();
    embed_sub->add_option("--seed", embed.seed, "trial stream seed")->capture_default_str();
    embed_sub->add_option("--tol", embed.exact_tol, "norm match tolerance")->capture_default_str();
    embed_sub->add_option("--matrix", embed.matrix_csv, "extra case from a CSV matrix `i,j,re,im`")
        ->check(CLI::ExistingFile);
    add_common(embed_sub, embed_out);
    embed_sub->callback([&] { code = emit(ex::run_embed_verify(embed), embed_out); });

    ex::PhiDConfig phid;
    CommonOut phid_out;
    auto* phid_sub = app.add_subcommand("phi-d", "product symbol norms and the bilinear pairing");
    phid_sub->add_option("--d", phid.d_list, "pair counts, each in 1..4")->capture_default_str();
    phid_sub->add_option("--samples", phid.samples, "Monte Carlo samples for the H1 norm")
        ->capture_default_str();
    phid_sub->add_option("--seed", phid.seed, "sampler seed")->capture_default_str();
    phid_sub->add_option("--tol", phid.norm_tol, "Hankel norm tolerance")->capture_default_str();
    add_common(phid_sub, phid_out);
    phid_sub->callback([&] { code = emit(ex::run_phi_d(phid), phid_out); });

    ex::SchattenEmbedConfig schatten;
    CommonOut schatten_out;
    auto* schatten_sub =
        app.add_subcommand("schatten-embed", "Schatten mass doubling and the diagonal family");
    schatten_sub->add_option("--p", schatten.p_list, "Schatten exponents")->capture_default_str();
    schatten_sub->add_option("--trials", schatten.trials, "random matrices")
        ->capture_default_str();
    schatten_sub->add_option("--alpha", schatten.alpha, "diagonal decay exponent")
        ->capture_default_str();
    schatten_sub->add_option("--k", schatten.k_list, "diagonal section sizes")
        ->capture_default_str();
    schatten_sub->add_option("--seed", schatten.seed, "trial stream seed")->capture_default_str();
    schatten_sub->add_option("--tol", schatten.doubling_tol, "doubling tolerance")
        ->capture_default_str();
    add_common(schatten_sub, schatten_out);
    schatten_sub->callback([&] { code = emit(ex::run_schatten_embed(schatten), schatten_out); });

    ex::SchurConfig schur;
    CommonOut schur_out;
    auto* schur_sub = app.add_subcommand("schur", "entrywise weight patterns on Hankel sections");
    schur_sub->add_option("--pattern", schur.pattern,
                          "homog_mask_all_m | skew_log_nonneg | skew_radial_embed | bennett_tails")
        ->capture_default_str();
    schur_sub->add_option("--trials", schur.trials, "random symbols or matrices")
        ->capture_default_str();
    schur_sub->add_option("--seed", schur.seed, "trial stream seed")->capture_default_str();
    schur_sub->add_option("--tol", schur.contraction_slack, "contraction slack")
        ->capture_default_str();
    schur_sub->add_option("--table-count", schur.table_count, "prime count for the tails")
        ->capture_default_str();
    schur_sub->add_option("--rounds", schur.search_rounds, "alternating maximization rounds")
        ->capture_default_str();
    schur_sub
        ->add_option("--symbol", schur.symbol_csv,
                     "extra homog_mask_all_m case from a CSV symbol `n,re,im`")
        ->check(CLI::ExistingFile);
    add_common(schur_sub, schur_out);
    schur_sub->callback([&] { code = emit(ex::run_schur(schur), schur_out); });

    ex::InequalityConfig ineq;
    CommonOut ineq_out;
    auto* ineq_sub =
        app.add_subcommand("inequalities", "norm inequalities on random polynomials");
    ineq_sub->add_option("--trials", ineq.trials, "random polynomials")->capture_default_str();
    ineq_sub->add_option("--samples", ineq.samples, "direct Monte Carlo samples")
        ->capture_default_str();
    ineq_sub->add_option("--nested-samples", ineq.nested_samples, "nested estimator z samples")
        ->capture_default_str();
    ineq_sub->add_option("--grid", ineq.grid, "slice quadrature grid")->capture_default_str();
    ineq_sub->add_option("--seed", ineq.seed, "trial stream seed")->capture_default_str();
    add_common(ineq_sub, ineq_out);
    ineq_sub->callback([&] { code = emit(ex::run_inequalities(ineq), ineq_out); });

    ex::NehariConfig nehari;
    CommonOut nehari_out;
    auto* nehari_sub =
        app.add_subcommand("nehari", "Fourier coefficients of the sawtooth symbol");
    nehari_sub->add_option("--kmax", nehari.k_max, "highest coefficient index")
        ->capture_default_str();
    nehari_sub->add_option("--grid", nehari.grid, "quadrature grid, power of two >= 4*kmax")
        ->capture_default_str();
    nehari_sub->add_option("--tol", nehari.coeff_tol, "coefficient tolerance")
        ->capture_default_str();
    add_common(nehari_sub, nehari_out);
    nehari_sub->callback([&] { code = emit(ex::run_nehari(nehari), nehari_out); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int printed = app.exit(e);
        return printed == 0 ? 0 : 2;  // help and version exit clean
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return code;
}
