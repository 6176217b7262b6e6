#include "mhankel/experiments.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "mhankel/bohr.hpp"
#include "mhankel/io.hpp"
#include "mhankel/montecarlo.hpp"
#include "mhankel/rng.hpp"

namespace mhankel::experiments {

using rng::derive_seed;
using rng::draw_symmetric;
using rng::draw_u01;
using rng::draw_u64;

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_seconds(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6e", x);
    return buf;
}

std::string fmt_p(double p) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", p);
    return buf;
}

Eigen::MatrixXcd random_complex_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed) {
    Eigen::MatrixXcd C(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    std::uint64_t ctr = 0;
    for (Eigen::Index j = 0; j < C.rows(); ++j) {
        for (Eigen::Index k = 0; k < C.cols(); ++k) {
            double re = draw_symmetric(seed, ctr++);
            double im = draw_symmetric(seed, ctr++);
            C(j, k) = cdouble(re, im);
        }
    }
    return C;
}

// support drawn without replacement from [min_n, max_n]; coefficients are
// complex uniform on the square, or real uniform on [0, 1) when nonneg
Symbol random_symbol(std::uint64_t seed, bool nonneg, u64 min_n, u64 max_n,
                     std::size_t min_support, std::size_t max_support) {
    std::uint64_t ctr = 0;
    std::size_t target =
        min_support + static_cast<std::size_t>(draw_u64(seed, ctr++) %
                                               (max_support - min_support + 1));
    Symbol s;
    std::size_t guard = 0;
    while (s.rho.size() < target && guard < 100000) {
        ++guard;
        u64 n = min_n + draw_u64(seed, ctr++) % (max_n - min_n + 1);
        if (s.rho.count(n) != 0) continue;
        cdouble v;
        if (nonneg) {
            v = draw_u01(seed, ctr++);
        } else {
            double re = draw_symmetric(seed, ctr++);
            double im = draw_symmetric(seed, ctr++);
            v = cdouble(re, im);
        }
        if (std::abs(v) == 0.0) continue;
        s.rho[n] = v;
    }
    return s;
}

DirichletPolynomial random_polynomial(std::uint64_t seed, std::size_t min_support,
                                      std::size_t max_support, u64 max_n) {
    std::uint64_t ctr = 0;
    std::size_t target =
        min_support + static_cast<std::size_t>(draw_u64(seed, ctr++) %
                                               (max_support - min_support + 1));
    std::map<u64, cdouble> coeffs;
    std::size_t guard = 0;
    while (coeffs.size() < target && guard < 100000) {
        ++guard;
        u64 n = 1 + draw_u64(seed, ctr++) % max_n;
        if (coeffs.count(n) != 0) continue;
        double re = draw_symmetric(seed, ctr++);
        double im = draw_symmetric(seed, ctr++);
        if (re == 0.0 && im == 0.0) continue;
        coeffs[n] = cdouble(re, im);
    }
    return DirichletPolynomial(std::move(coeffs));
}

std::vector<double> singular_values(const Eigen::MatrixXcd& M) {
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(M);
    const auto& s = svd.singularValues();
    return std::vector<double>(s.data(), s.data() + s.size());
}

std::size_t needed_grid(std::size_t base, u64 max_order) {
    return std::max<std::size_t>(base, 8 * (static_cast<std::size_t>(max_order) + 1));
}

json verdicts_json(const std::vector<Verdict>& verdicts, bool* all_pass) {
    json out = json::array();
    bool all = true;
    for (const auto& v : verdicts) {
        out.push_back(json{{"name", v.name}, {"pass", v.pass}, {"detail", v.detail}});
        all = all && v.pass;
    }
    if (all_pass != nullptr) *all_pass = all;
    return out;
}

}  // namespace

json make_report(const std::string& subcommand, const json& config, const json& rows,
                 const std::vector<Verdict>& verdicts, double duration_seconds) {
    json report;
    report["schema"] = 1;
    report["subcommand"] = subcommand;
    report["config"] = config;
    report["rows"] = rows;
    bool all = true;
    report["verdicts"] = verdicts_json(verdicts, &all);
    report["all_pass"] = all;
    report["duration_seconds"] = duration_seconds;
    return report;
}

bool report_all_pass(const json& report) {
    return report.contains("all_pass") && report["all_pass"].is_boolean() &&
           report["all_pass"].get<bool>();
}

json run_hilbert(const HilbertConfig& cfg) {
    auto t0 = Clock::now();
    HilbertVariant variant = hilbert_variant_from_name(cfg.variant);
    if (cfg.mode != "svd" && cfg.mode != "matfree") {
        throw std::invalid_argument("hilbert: mode must be svd or matfree");
    }
    if (cfg.n_list.empty()) throw std::invalid_argument("hilbert: empty n list");

    json rows = json::array();
    std::vector<double> values;
    bool all_converged = true;
    for (u64 n : cfg.n_list) {
        json row;
        row["n"] = n;
        nlohmann::json params = {{"variant", cfg.variant}, {"n", n}, {"mode", cfg.mode}};
        if (cfg.mode == "svd") {
            if (n > 4000) {
                throw std::invalid_argument("hilbert: svd mode caps n at 4000, use matfree");
            }
            Eigen::MatrixXd M = hilbert_matrix(variant, static_cast<std::size_t>(n));
            Eigen::BDCSVD<Eigen::MatrixXd> svd(M);
            SpectralResult r;
            r.value = svd.singularValues()(0);
            r.converged = true;
            row["norm"] = json(norm_record("dense-svd", params, r, 0));
            values.push_back(r.value);
        } else {
            HilbertKernel kernel = hilbert_kernel(variant, static_cast<std::size_t>(n));
            SpectralOptions opt;
            opt.tol = cfg.tol;
            opt.max_iter = cfg.max_iter;
            opt.seed = cfg.seed;
            SpectralResult r = spectral_norm_matfree(kernel.size, kernel.apply, opt);
            all_converged = all_converged && r.converged;
            row["norm"] = json(norm_record("power-iteration", params, r, cfg.seed));
            values.push_back(r.value);
        }
        rows.push_back(row);
    }

    std::vector<Verdict> verdicts;
    double worst_drop = 0.0;
    for (std::size_t i = 0; i + 1 < values.size(); ++i) {
        worst_drop = std::max(worst_drop, values[i] - values[i + 1]);
    }
    verdicts.push_back({"values-nondecreasing", worst_drop <= cfg.monotone_slack,
                        "max drop " + fmt(worst_drop)});
    if (variant != HilbertVariant::mult_full) {
        double vmax = *std::max_element(values.begin(), values.end());
        verdicts.push_back({"bounded-by-pi", vmax <= std::numbers::pi + cfg.pi_margin,
                            "max value " + fmt(vmax) + ", pi " + fmt(std::numbers::pi)});
    }
    if (cfg.mode == "matfree") {
        verdicts.push_back({"power-iteration-converged", all_converged,
                            all_converged ? "all sweeps converged" : "at least one sweep hit max_iter"});
    }

    json config{{"variant", cfg.variant}, {"n_list", cfg.n_list},     {"mode", cfg.mode},
                {"tol", cfg.tol},         {"max_iter", cfg.max_iter}, {"seed", cfg.seed},
                {"pi_margin", cfg.pi_margin}, {"monotone_slack", cfg.monotone_slack}};
    return make_report("hilbert", config, rows, verdicts, elapsed_seconds(t0));
}

json run_embed_verify(const EmbedVerifyConfig& cfg) {
    auto t0 = Clock::now();
    if (cfg.max_size == 0) throw std::invalid_argument("embed-verify: max_size must be positive");

    json rows = json::array();
    double worst_exact = 0.0;
    double worst_lower = 0.0;   // max of (S2 - full), should stay <= margin
    double worst_upper = 0.0;   // max of (full - 4 S2), should stay <= margin
    double worst_nested = 0.0;  // max of (restricted - full), submatrix monotonicity

    auto run_case = [&](const Eigen::MatrixXcd& C, const std::string& label,
                        std::uint64_t case_seed) {
        auto sv = singular_values(C);
        double sigma_max = sv.empty() ? 0.0 : sv.front();
        double s2 = 0.0;
        for (double s : sv) s2 += s * s;
        s2 = std::sqrt(s2);

        Symbol sym = embed_matrix(C);
        HankelMatrix restricted_m = build_hankel(sym, index_divisor_closed(sym, 2));
        HankelMatrix full_m = build_hankel(sym, index_divisor_closed(sym, 1));
        SpectralOptions opt;
        opt.tol = cfg.iter_tol;
        opt.seed = derive_seed(case_seed, 1);
        SpectralResult restricted = spectral_norm(restricted_m, opt);
        opt.seed = derive_seed(case_seed, 2);
        SpectralResult full = spectral_norm(full_m, opt);

        worst_exact = std::max(worst_exact, std::abs(restricted.value - sigma_max));
        worst_lower = std::max(worst_lower, s2 - full.value);
        worst_upper = std::max(worst_upper, full.value - 4.0 * s2);
        worst_nested = std::max(worst_nested, restricted.value - full.value);

        json row;
        row["case"] = label;
        row["rows"] = C.rows();
        row["cols"] = C.cols();
        row["sigma_max"] = sigma_max;
        row["s2"] = s2;
        row["restricted_size"] = restricted_m.index_set.size();
        row["full_size"] = full_m.index_set.size();
        row["restricted"] = restricted.value;
        row["full"] = full.value;
        row["restricted_minus_sigma"] = restricted.value - sigma_max;
        rows.push_back(row);
    };

    run_case(Eigen::MatrixXcd::Identity(1, 1), "one-by-one", derive_seed(cfg.seed, 9000));
    run_case(Eigen::MatrixXcd::Identity(3, 3), "identity-3", derive_seed(cfg.seed, 9001));
    if (!cfg.matrix_csv.empty())
        run_case(read_matrix_csv(cfg.matrix_csv), "input-matrix", derive_seed(cfg.seed, 9002));
    for (std::size_t t = 0; t < cfg.trials; ++t) {
        std::uint64_t seed_t = derive_seed(cfg.seed, t);
        std::size_t r = 1 + static_cast<std::size_t>(draw_u64(seed_t, 0) % cfg.max_size);
        std::size_t c = 1 + static_cast<std::size_t>(draw_u64(seed_t, 1) % cfg.max_size);
        Eigen::MatrixXcd C = random_complex_matrix(r, c, derive_seed(seed_t, 3));
        run_case(C, "random-" + std::to_string(t), seed_t);
    }

    std::vector<Verdict> verdicts;
    verdicts.push_back({"restricted-norm-matches-sigma", worst_exact <= cfg.exact_tol,
                        "max |restricted - sigma_max| " + fmt(worst_exact)});
    verdicts.push_back({"full-norm-above-s2", worst_lower <= cfg.sandwich_margin,
                        "max (S2 - full) " + fmt(worst_lower)});
    verdicts.push_back({"full-norm-below-4s2", worst_upper <= cfg.sandwich_margin,
                        "max (full - 4 S2) " + fmt(worst_upper)});
    verdicts.push_back({"full-dominates-restricted", worst_nested <= cfg.sandwich_margin,
                        "max (restricted - full) " + fmt(worst_nested)});

    json config{{"trials", cfg.trials},      {"max_size", cfg.max_size},
                {"seed", cfg.seed},          {"exact_tol", cfg.exact_tol},
                {"sandwich_margin", cfg.sandwich_margin}, {"iter_tol", cfg.iter_tol},
                {"matrix_csv", cfg.matrix_csv}};
    return make_report("embed-verify", config, rows, verdicts, elapsed_seconds(t0));
}

json run_phi_d(const PhiDConfig& cfg) {
    auto t0 = Clock::now();
    json rows = json::array();
    std::vector<Verdict> verdicts;

    for (u64 d : cfg.d_list) {
        if (d < 1 || d > 4) throw std::invalid_argument("phi-d: d must lie in 1..4");
        DirichletPolynomial phi = phi_d_symbol(d);
        Symbol sym = Symbol::from_analytic(phi);
        std::vector<u64> idx = index_divisor_closed(sym, 1);
        HankelMatrix M = build_hankel(sym, idx);

        SpectralOptions opt;
        opt.tol = cfg.iter_tol;
        opt.seed = derive_seed(cfg.seed, 100 + d);
        SpectralResult r = spectral_norm(M, opt);
        double norm_target = std::pow(2.0, 0.5 * static_cast<double>(d));

        Eigen::VectorXcd a = coefficient_vector(phi, idx);
        Eigen::VectorXcd b = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(idx.size()));
        auto it = std::find(idx.begin(), idx.end(), u64{1});
        if (it == idx.end()) throw std::logic_error("phi-d: index set lost 1");
        b(static_cast<Eigen::Index>(it - idx.begin())) = 1.0;
        cdouble pairing = bilinear_eval(M, a, b);
        double pairing_target = std::pow(2.0, static_cast<double>(d));

        json row;
        row["d"] = d;
        row["index_size"] = idx.size();
        row["norm"] = json(norm_record(
            "power-iteration", nlohmann::json{{"operation", "phi-d"}, {"d", d}}, r, opt.seed));
        row["norm_target"] = norm_target;
        row["pairing_re"] = pairing.real();
        row["pairing_im"] = pairing.imag();
        row["pairing_target"] = pairing_target;

        std::string tag = std::to_string(d);
        verdicts.push_back({"hankel-norm-d" + tag,
                            std::abs(r.value - norm_target) <= cfg.norm_tol,
                            "|value - 2^(d/2)| " + fmt(std::abs(r.value - norm_target))});
        double pairing_err = std::abs(pairing - cdouble(pairing_target, 0.0));
        verdicts.push_back({"pairing-d" + tag, pairing_err <= cfg.pairing_tol,
                            "|pairing - 2^d| " + fmt(pairing_err)});

        if (d <= cfg.mc_max_d) {
            McEstimate est =
                mc_hp_norm(phi, 1.0, cfg.samples, derive_seed(cfg.seed, 200 + d));
            double h1_target = std::pow(4.0 / std::numbers::pi, static_cast<double>(d));
            row["mc"] = json(mc_record(est));
            row["h1_target"] = h1_target;
            double dev = std::abs(est.mean - h1_target);
            double band = 3.0 * est.stderr_;
            verdicts.push_back({"h1-norm-d" + tag, dev <= band,
                                "|mean - (4/pi)^d| " + fmt(dev) + " vs 3 stderr " + fmt(band)});
        }
        rows.push_back(row);
    }

    json config{{"d_list", cfg.d_list},       {"samples", cfg.samples},
                {"mc_max_d", cfg.mc_max_d},   {"seed", cfg.seed},
                {"norm_tol", cfg.norm_tol},   {"pairing_tol", cfg.pairing_tol},
                {"iter_tol", cfg.iter_tol}};
    return make_report("phi-d", config, rows, verdicts, elapsed_seconds(t0));
}

json run_schatten_embed(const SchattenEmbedConfig& cfg) {
    auto t0 = Clock::now();
    for (double p : cfg.p_list) {
        if (!(p > 0.0)) throw std::invalid_argument("schatten-embed: p must be positive");
    }

    json rows = json::array();
    double worst_doubling = 0.0;
    double worst_frobenius = 0.0;

    auto doubling_case = [&](const Eigen::MatrixXcd& C, const std::string& label) {
        Symbol sym = embed_matrix(C);
        HankelMatrix M0 = build_hankel(sym, index_divisor_closed(sym, 2));
        auto sv = singular_values(C);
        json row;
        row["case"] = label;
        row["rows"] = C.rows();
        row["cols"] = C.cols();
        json per_p = json::array();
        for (double p : cfg.p_list) {
            double direct = std::pow(schatten_norm(M0, p), p);
            double doubled = 0.0;
            for (double s : sv) doubled += std::pow(s, p);
            doubled *= 2.0;
            double diff = std::abs(direct - doubled);
            worst_doubling = std::max(worst_doubling, diff);
            per_p.push_back(json{{"p", p}, {"embedded", direct}, {"doubled", doubled},
                                 {"diff", diff}});
        }
        double fro_route = frobenius_via_divisors(sym);
        double fro_direct = schatten_norm(M0, 2.0);
        worst_frobenius = std::max(worst_frobenius, std::abs(fro_route - fro_direct));
        row["p_rows"] = per_p;
        row["frobenius_route"] = fro_route;
        row["frobenius_direct"] = fro_direct;
        rows.push_back(row);
    };

    doubling_case(Eigen::MatrixXcd::Identity(1, 1), "one-by-one");
    for (std::size_t t = 0; t < cfg.trials; ++t) {
        std::uint64_t seed_t = derive_seed(cfg.seed, 300 + t);
        std::size_t r = 1 + static_cast<std::size_t>(draw_u64(seed_t, 0) % cfg.max_size);
        std::size_t c = 1 + static_cast<std::size_t>(draw_u64(seed_t, 1) % cfg.max_size);
        doubling_case(random_complex_matrix(r, c, derive_seed(seed_t, 3)),
                      "random-" + std::to_string(t));
    }

    // diagonal family c_k = k^{-alpha}: squared Frobenius mass is 2 H_K at
    // alpha = 1/2, and the section growth tracks 2 log K
    double worst_harmonic = 0.0;
    double prev_mass = 0.0;
    bool growth_monotone = true;
    for (u64 kmax : cfg.k_list) {
        Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(kmax),
                                                    static_cast<Eigen::Index>(kmax));
        for (u64 k = 1; k <= kmax; ++k) {
            C(static_cast<Eigen::Index>(k - 1), static_cast<Eigen::Index>(k - 1)) =
                std::pow(static_cast<double>(k), -cfg.alpha);
        }
        Symbol sym = embed_matrix(C);
        HankelMatrix M0 = build_hankel(sym, index_divisor_closed(sym, 2));
        double s2 = schatten_norm(M0, 2.0);
        double mass = s2 * s2;
        double harmonic = 0.0;
        {
            double comp = 0.0;  // Kahan, ascending k
            for (u64 k = 1; k <= kmax; ++k) {
                double term = 1.0 / static_cast<double>(k) - comp;
                double next = harmonic + term;
                comp = (next - harmonic) - term;
                harmonic = next;
            }
        }
        json row;
        row["case"] = "diagonal";
        row["k_max"] = kmax;
        row["alpha"] = cfg.alpha;
        row["s2_squared"] = mass;
        row["two_harmonic"] = 2.0 * harmonic;
        row["log_ratio"] = mass / (2.0 * std::log(static_cast<double>(kmax)));
        json per_q = json::array();
        for (double p : cfg.p_list) {
            per_q.push_back(json{{"p", p}, {"value", schatten_norm(M0, p)}});
        }
        row["p_rows"] = per_q;
        rows.push_back(row);
        if (std::abs(cfg.alpha - 0.5) < 1e-15) {
            worst_harmonic = std::max(worst_harmonic, std::abs(mass - 2.0 * harmonic));
        }
        if (mass < prev_mass) growth_monotone = false;
        prev_mass = mass;
    }

    std::vector<Verdict> verdicts;
    verdicts.push_back({"schatten-mass-doubles", worst_doubling <= cfg.doubling_tol,
                        "max |S_p(M)^p - 2 S_p(C)^p| " + fmt(worst_doubling)});
    verdicts.push_back({"frobenius-divisor-route", worst_frobenius <= cfg.harmonic_tol,
                        "max |route - S_2| " + fmt(worst_frobenius)});
    if (std::abs(cfg.alpha - 0.5) < 1e-15) {
        verdicts.push_back({"diagonal-harmonic-mass", worst_harmonic <= cfg.harmonic_tol,
                            "max |S_2^2 - 2 H_K| " + fmt(worst_harmonic)});
    }
    verdicts.push_back({"diagonal-mass-grows", growth_monotone,
                        growth_monotone ? "mass increases along k_list"
                                        : "mass decreased along k_list"});

    json config{{"p_list", cfg.p_list},   {"trials", cfg.trials},
                {"max_size", cfg.max_size}, {"alpha", cfg.alpha},
                {"k_list", cfg.k_list},   {"seed", cfg.seed},
                {"doubling_tol", cfg.doubling_tol}, {"harmonic_tol", cfg.harmonic_tol}};
    return make_report("schatten-embed", config, rows, verdicts, elapsed_seconds(t0));
}

BennettTails bennett_tails(std::size_t table_count) {
    if (table_count < 4) throw std::invalid_argument("bennett_tails: need at least 4 primes");
    PrimeTable table = sieve_primes(table_count);
    std::size_t pairs = table_count / 2;
    WeightPattern w = WeightPattern::skew_log();
    BennettTails out;
    out.row_tail = w.weight(table.prime(1), table.prime(2 * pairs));
    out.col_tail = w.weight(table.prime(2 * pairs - 1), table.prime(2));
    out.gap = out.row_tail - out.col_tail;
    return out;
}

namespace {

// one alternating-maximization pass for the skew multiplier lower bound on a
// size x size prime-pair section; the objective is nondecreasing in exact
// arithmetic: the polar step maximizes <C', u v^T o W> over the unit ball
std::vector<double> multiplier_search(std::size_t size, std::size_t rounds) {
    PrimeTable table = sieve_primes(2 * size);
    WeightPattern skew = WeightPattern::skew_log();
    Eigen::MatrixXd W(static_cast<Eigen::Index>(size), static_cast<Eigen::Index>(size));
    for (std::size_t j = 1; j <= size; ++j) {
        for (std::size_t k = 1; k <= size; ++k) {
            W(static_cast<Eigen::Index>(j - 1), static_cast<Eigen::Index>(k - 1)) =
                skew.weight(table.prime(2 * j - 1), table.prime(2 * k));
        }
    }
    Eigen::MatrixXd C = Eigen::MatrixXd::Ones(W.rows(), W.cols()) /
                        static_cast<double>(size);  // spectral norm one
    std::vector<double> ratios;
    ratios.reserve(rounds);
    for (std::size_t round = 0; round < rounds; ++round) {
        Eigen::MatrixXd M = W.cwiseProduct(C);
        Eigen::BDCSVD<Eigen::MatrixXd> svd(M, Eigen::ComputeFullU | Eigen::ComputeFullV);
        ratios.push_back(svd.singularValues()(0));
        Eigen::VectorXd u = svd.matrixU().col(0);
        Eigen::VectorXd v = svd.matrixV().col(0);
        Eigen::MatrixXd G = (u * v.transpose()).cwiseProduct(W);
        Eigen::BDCSVD<Eigen::MatrixXd> polar(G, Eigen::ComputeFullU | Eigen::ComputeFullV);
        C = polar.matrixU() * polar.matrixV().transpose();
    }
    return ratios;
}

}  // namespace

json run_schur(const SchurConfig& cfg) {
    auto t0 = Clock::now();
    json rows = json::array();
    std::vector<Verdict> verdicts;

    SpectralOptions opt;
    opt.tol = cfg.iter_tol;

    if (cfg.pattern == "homog_mask_all_m") {
        double worst_excess = -std::numeric_limits<double>::infinity();
        double worst_partition = 0.0;
        auto mask_case = [&](const Symbol& sym, const json& label, std::uint64_t case_seed) {
            HankelMatrix M = build_hankel(sym, index_divisor_closed(sym, 1));
            opt.seed = derive_seed(case_seed, 1000);
            double base = spectral_norm(M, opt).value;
            u64 max_m = 0;
            for (const auto& [n, v] : sym.rho) max_m = std::max(max_m, omega(n));
            Eigen::MatrixXcd partition =
                Eigen::MatrixXcd::Zero(M.entries.rows(), M.entries.cols());
            double case_excess = -std::numeric_limits<double>::infinity();
            for (u64 m = 0; m <= max_m; ++m) {
                Eigen::MatrixXcd masked = schur_apply(M, WeightPattern::homog_mask(m));
                partition += masked;
                opt.seed = derive_seed(case_seed, 1001 + m);
                double value = spectral_norm(masked, opt).value;
                case_excess = std::max(case_excess, value - base);
            }
            double partition_diff = (partition - M.entries).cwiseAbs().maxCoeff();
            worst_excess = std::max(worst_excess, case_excess);
            worst_partition = std::max(worst_partition, partition_diff);
            json row;
            row["trial"] = label;
            row["support_size"] = sym.rho.size();
            row["index_size"] = M.index_set.size();
            row["base_norm"] = base;
            row["max_level"] = max_m;
            row["worst_excess"] = case_excess;
            row["partition_diff"] = partition_diff;
            rows.push_back(row);
        };
        for (std::size_t t = 0; t < cfg.trials; ++t) {
            std::uint64_t seed_t = derive_seed(cfg.seed, 400 + t);
            mask_case(random_symbol(seed_t, false, 2, 200, 6, 12), json(t), seed_t);
        }
        if (!cfg.symbol_csv.empty()) {
            mask_case(read_symbol_csv(cfg.symbol_csv), json("input"),
                      derive_seed(cfg.seed, 9002));
        }
        verdicts.push_back({"mask-contracts-norm", worst_excess <= cfg.contraction_slack,
                            "max (masked - base) " + fmt(worst_excess)});
        verdicts.push_back({"masks-partition-matrix", worst_partition == 0.0,
                            "max |sum of masks - matrix| " + fmt(worst_partition)});
    } else if (cfg.pattern == "skew_log_nonneg") {
        double worst_excess = -std::numeric_limits<double>::infinity();
        for (std::size_t t = 0; t < cfg.trials; ++t) {
            std::uint64_t seed_t = derive_seed(cfg.seed, 420 + t);
            Symbol sym = random_symbol(seed_t, true, 2, 200, 6, 12);
            HankelMatrix M = build_hankel(sym, index_divisor_closed(sym, 1));
            opt.seed = derive_seed(seed_t, 1000);
            double base = spectral_norm(M, opt).value;
            Eigen::MatrixXcd weighted = schur_apply(M, WeightPattern::skew_log());
            opt.seed = derive_seed(seed_t, 1001);
            double value = spectral_norm(weighted, opt).value;
            worst_excess = std::max(worst_excess, value - base);
            json row;
            row["trial"] = t;
            row["support_size"] = sym.rho.size();
            row["index_size"] = M.index_set.size();
            row["base_norm"] = base;
            row["weighted_norm"] = value;
            rows.push_back(row);
        }
        verdicts.push_back({"skew-contracts-nonneg", worst_excess <= cfg.contraction_slack,
                            "max (weighted - base) " + fmt(worst_excess)});
    } else if (cfg.pattern == "skew_radial_embed") {
        double worst_halving = 0.0;
        double worst_ratio = 0.0;
        for (std::size_t t = 0; t < cfg.trials; ++t) {
            std::uint64_t seed_t = derive_seed(cfg.seed, 440 + t);
            std::size_t r = 1 + static_cast<std::size_t>(draw_u64(seed_t, 0) % 6);
            std::size_t c = 1 + static_cast<std::size_t>(draw_u64(seed_t, 1) % 6);
            Eigen::MatrixXcd C = random_complex_matrix(r, c, derive_seed(seed_t, 3));
            Symbol sym = embed_matrix(C);
            HankelMatrix M0 = build_hankel(sym, index_divisor_closed(sym, 2));
            Eigen::MatrixXcd weighted = schur_apply(M0, WeightPattern::skew_radial());
            double halving = (weighted - 0.5 * M0.entries).cwiseAbs().maxCoeff();
            opt.seed = derive_seed(seed_t, 1000);
            double base = spectral_norm(M0, opt).value;
            opt.seed = derive_seed(seed_t, 1001);
            double value = spectral_norm(weighted, opt).value;
            double ratio = value / base;
            worst_halving = std::max(worst_halving, halving);
            worst_ratio = std::max(worst_ratio, std::abs(ratio - 0.5));
            json row;
            row["trial"] = t;
            row["rows"] = C.rows();
            row["cols"] = C.cols();
            row["halving_diff"] = halving;
            row["norm_ratio"] = ratio;
            rows.push_back(row);
        }
        verdicts.push_back({"radial-halves-pair-entries", worst_halving == 0.0,
                            "max |weighted - matrix/2| " + fmt(worst_halving)});
        verdicts.push_back({"radial-halves-norm", worst_ratio <= 1e-12,
                            "max |ratio - 1/2| " + fmt(worst_ratio)});
    } else if (cfg.pattern == "bennett_tails") {
        BennettTails tails = bennett_tails(cfg.table_count);
        json row;
        row["table_count"] = cfg.table_count;
        row["row_tail"] = tails.row_tail;
        row["col_tail"] = tails.col_tail;
        row["gap"] = tails.gap;
        rows.push_back(row);
        verdicts.push_back({"tails-straddle-half",
                            tails.row_tail > 0.5 && tails.col_tail < 0.5,
                            "row " + fmt(tails.row_tail) + ", col " + fmt(tails.col_tail)});
        verdicts.push_back({"tail-gap-wide", tails.gap >= cfg.gap_min,
                            "gap " + fmt(tails.gap) + " vs min " + fmt(cfg.gap_min)});
        for (std::size_t size : cfg.search_sizes) {
            std::vector<double> ratios = multiplier_search(size, cfg.search_rounds);
            double worst_drop = 0.0;
            for (std::size_t i = 0; i + 1 < ratios.size(); ++i) {
                worst_drop = std::max(worst_drop, ratios[i] - ratios[i + 1]);
            }
            json srow;
            srow["search_size"] = size;
            srow["rounds"] = cfg.search_rounds;
            srow["first_ratio"] = ratios.front();
            srow["last_ratio"] = ratios.back();
            srow["ratios"] = ratios;
            rows.push_back(srow);
            verdicts.push_back({"search-nondecreasing-" + std::to_string(size),
                                worst_drop <= 1e-12, "max drop " + fmt(worst_drop)});
        }
    } else {
        throw std::invalid_argument("schur: unknown pattern " + cfg.pattern);
    }

    json config{{"pattern", cfg.pattern},   {"trials", cfg.trials},
                {"seed", cfg.seed},         {"contraction_slack", cfg.contraction_slack},
                {"iter_tol", cfg.iter_tol}, {"symbol_csv", cfg.symbol_csv},
                {"table_count", cfg.table_count},
                {"gap_min", cfg.gap_min},   {"search_sizes", cfg.search_sizes},
                {"search_rounds", cfg.search_rounds}};
    return make_report("schur", config, rows, verdicts, elapsed_seconds(t0));
}

json run_inequalities(const InequalityConfig& cfg) {
    auto t0 = Clock::now();
    json rows = json::array();

    struct Worst {
        double value = -std::numeric_limits<double>::infinity();
        std::size_t trial = 0;
        void track(double v, std::size_t t) {
            if (v > value) {
                value = v;
                trial = t;
            }
        }
        std::string detail(const char* what) const {
            return std::string("worst ") + what + " " + fmt(value) + " at trial " +
                   std::to_string(trial);
        }
    };
    Worst helson_margin;     // helson - (mean + 3 stderr), pass <= 0
    Worst homog_margin;      // sum - pi*(mean + 3 s1) - 3 s_hh, pass <= 0
    Worst slice_z1, slice_z3;  // |direct - nested| / (3 combined sigma), pass <= 1
    Worst level_err, parseval_err;  // exact p = 2 routes, pass <= exact_tol
    Worst hardy_margin;      // sum - pi*(quadrature + allowance), pass <= 0

    for (std::size_t t = 0; t < cfg.trials; ++t) {
        std::uint64_t seed_t = derive_seed(cfg.seed, 500 + t);
        DirichletPolynomial f = random_polynomial(seed_t, 6, 12, cfg.support_max);
        json row;
        row["trial"] = t;
        row["support_size"] = f.support_size();
        row["prime_dimension"] = f.prime_dimension();
        row["max_order"] = f.max_order();

        McEstimate h1 = mc_hp_norm(f, 1.0, cfg.samples, derive_seed(seed_t, 1));
        double helson = helson_lower(f);
        helson_margin.track(helson - (h1.mean + 3.0 * h1.stderr_), t);
        row["h1"] = json(mc_record(h1));
        row["helson_lower"] = helson;

        McEstimate hh = hardy_homog_sum(f, cfg.homog_samples, derive_seed(seed_t, 2));
        double hh_slack =
            hh.mean - std::numbers::pi * (h1.mean + 3.0 * h1.stderr_) - 3.0 * hh.stderr_;
        homog_margin.track(hh_slack, t);
        row["homog_sum"] = json(mc_record(hh));

        for (double p : {1.0, 3.0}) {
            McEstimate direct =
                mc_hp_norm(f, p, cfg.samples, derive_seed(seed_t, 10 + std::uint64_t(p)));
            std::size_t grid = needed_grid(cfg.grid, f.max_order());
            McEstimate nested = nested_hp_norm(f, p, cfg.nested_samples, grid,
                                               derive_seed(seed_t, 20 + std::uint64_t(p)));
            double sigma = std::hypot(direct.stderr_, nested.stderr_);
            double z = std::abs(direct.mean - nested.mean) / (3.0 * sigma);
            (p == 1.0 ? slice_z1 : slice_z3).track(z, t);
            std::string key = "slice_p" + fmt_p(p);
            row[key + "_direct"] = json(mc_record(direct));
            row[key + "_nested"] = json(mc_record(nested));
            row[key + "_zscore"] = 3.0 * z;
        }

        double h2 = h2_norm(f);
        double via_levels = 0.0;
        for (u64 m = 0; m <= f.max_order(); ++m) {
            double part = h2_norm(homogeneous_project(f, m));
            via_levels += part * part;
        }
        via_levels = std::sqrt(via_levels);
        level_err.track(std::abs(h2 - via_levels), t);
        row["h2"] = h2;
        row["h2_via_levels"] = via_levels;

        std::size_t dim = std::max<std::size_t>(f.prime_dimension(), 1);
        TorusSampler sampler(dim, derive_seed(seed_t, 30));
        CharacterPoint z2 = sampler.point(0);
        std::size_t grid2 = needed_grid(cfg.grid, f.max_order());
        double s2 = slice_hp_norm(f, 2.0, z2, grid2);
        SlicePolynomial b2 = slice(f, z2);
        double parseval = 0.0;
        for (const auto& c : b2.coeffs) parseval += std::norm(c);
        parseval = std::sqrt(parseval);
        parseval_err.track(std::abs(s2 - parseval), t);
        row["slice_p2"] = s2;
        row["slice_p2_parseval"] = parseval;

        CharacterPoint z1 = sampler.point(1);
        SlicePolynomial b1 = slice(f, z1);
        double hardy_sum = 0.0;
        for (std::size_t m = 0; m < b1.coeffs.size(); ++m) {
            hardy_sum += std::abs(b1.coeffs[m]) / static_cast<double>(m + 1);
        }
        std::size_t grid1 = needed_grid(std::max<std::size_t>(cfg.grid, 512), f.max_order());
        double s1 = slice_hp_norm(f, 1.0, z1, grid1);
        hardy_margin.track(hardy_sum - std::numbers::pi * (s1 + cfg.slice_quad_tol), t);
        row["hardy_sum"] = hardy_sum;
        row["slice_p1"] = s1;
        rows.push_back(row);
    }

    std::vector<Verdict> verdicts;
    verdicts.push_back({"helson-below-h1", helson_margin.value <= 0.0,
                        helson_margin.detail("excess")});
    verdicts.push_back({"homog-sum-below-pi-h1", homog_margin.value <= 0.0,
                        homog_margin.detail("excess")});
    verdicts.push_back({"slice-identity-p1", slice_z1.value <= 1.0,
                        slice_z1.detail("|diff| / 3 sigma")});
    verdicts.push_back({"slice-identity-p3", slice_z3.value <= 1.0,
                        slice_z3.detail("|diff| / 3 sigma")});
    verdicts.push_back({"level-parseval", level_err.value <= cfg.exact_tol,
                        level_err.detail("|h2 - via levels|")});
    verdicts.push_back({"slice-parseval", parseval_err.value <= cfg.exact_tol,
                        parseval_err.detail("|quadrature - parseval|")});
    verdicts.push_back({"hardy-one-variable", hardy_margin.value <= 0.0,
                        hardy_margin.detail("excess")});

    json config{{"trials", cfg.trials},
                {"samples", cfg.samples},
                {"homog_samples", cfg.homog_samples},
                {"nested_samples", cfg.nested_samples},
                {"grid", cfg.grid},
                {"seed", cfg.seed},
                {"exact_tol", cfg.exact_tol},
                {"slice_quad_tol", cfg.slice_quad_tol},
                {"support_max", cfg.support_max}};
    return make_report("inequalities", config, rows, verdicts, elapsed_seconds(t0));
}

json run_nehari(const NehariConfig& cfg) {
    auto t0 = Clock::now();
    std::vector<cdouble> coeffs = nehari_symbol_coefficients(cfg.k_max, cfg.grid);

    json rows = json::array();
    double worst_err = 0.0;
    double worst_im = 0.0;
    for (std::size_t k = 1; k <= coeffs.size(); ++k) {
        cdouble c = coeffs[k - 1];
        double target = 1.0 / static_cast<double>(k);
        double err = std::abs(c - cdouble(target, 0.0));
        worst_err = std::max(worst_err, err);
        worst_im = std::max(worst_im, std::abs(c.imag()));
        json row;
        row["k"] = k;
        row["re"] = c.real();
        row["im"] = c.imag();
        row["target"] = target;
        row["abs_err"] = err;
        rows.push_back(row);
    }

    // grid sup of |i(pi - theta)| over [0, 2pi); theta = 0 sits on the grid
    double sup = 0.0;
    for (std::size_t g = 0; g < cfg.grid; ++g) {
        double theta = 2.0 * std::numbers::pi * static_cast<double>(g) /
                       static_cast<double>(cfg.grid);
        sup = std::max(sup, std::abs(std::numbers::pi - theta));
    }

    std::vector<Verdict> verdicts;
    verdicts.push_back({"coefficients-match-reciprocals", worst_err <= cfg.coeff_tol,
                        "max |c_k - 1/k| " + fmt(worst_err)});
    verdicts.push_back({"coefficients-real", worst_im <= cfg.imag_tol,
                        "max |Im c_k| " + fmt(worst_im)});
    verdicts.push_back({"symbol-sup-is-pi", std::abs(sup - std::numbers::pi) <= cfg.sup_tol,
                        "grid sup " + fmt(sup)});

    json config{{"k_max", cfg.k_max},       {"grid", cfg.grid},
                {"coeff_tol", cfg.coeff_tol}, {"sup_tol", cfg.sup_tol},
                {"imag_tol", cfg.imag_tol}};
    return make_report("nehari", config, rows, verdicts, elapsed_seconds(t0));
}

namespace {

void flatten_row(const json& value, const std::string& prefix,
                 std::vector<std::pair<std::string, const json*>>& out) {
    for (const auto& [key, child] : value.items()) {
        std::string name = prefix.empty() ? key : prefix + "." + key;
        if (child.is_object()) {
            flatten_row(child, name, out);
        } else if (!child.is_array()) {
            out.emplace_back(name, &child);
        }
    }
}

std::string cell_text(const json& v) {
    if (v.is_number_float()) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g", v.get<double>());
        return buf;
    }
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

}  // namespace

void write_rows_csv(const std::string& path, const json& rows) {
    if (!rows.is_array()) throw std::invalid_argument("write_rows_csv: rows must be an array");
    std::vector<std::string> columns;
    for (const auto& row : rows) {
        std::vector<std::pair<std::string, const json*>> flat;
        flatten_row(row, "", flat);
        for (const auto& [name, ptr] : flat) {
            if (std::find(columns.begin(), columns.end(), name) == columns.end()) {
                columns.push_back(name);
            }
        }
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_rows_csv: cannot open " + path);
    for (std::size_t i = 0; i < columns.size(); ++i) {
        out << (i ? "," : "") << columns[i];
    }
    out << '\n';
    for (const auto& row : rows) {
        std::vector<std::pair<std::string, const json*>> flat;
        flatten_row(row, "", flat);
        for (std::size_t i = 0; i < columns.size(); ++i) {
            if (i) out << ',';
            for (const auto& [name, ptr] : flat) {
                if (name == columns[i]) {
                    out << cell_text(*ptr);
                    break;
                }
            }
        }
        out << '\n';
    }
    if (!out.good()) throw std::runtime_error("write_rows_csv: write failed for " + path);
}

}  // namespace mhankel::experiments
