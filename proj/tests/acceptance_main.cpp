// Acceptance gate: the ten headline checks, each with its stated tolerance and
// wall-clock budget. One line per criterion; the exit code is the number of
// failures, so ctest reports the gate red if any criterion fails.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <string>
#include <vector>

#include "mhankel/bohr.hpp"
#include "mhankel/experiments.hpp"
#include "mhankel/hankel.hpp"
#include "mhankel/rng.hpp"

using namespace mhankel;
using namespace mhankel::experiments;

namespace {

using Clock = std::chrono::steady_clock;

struct Criterion {
    int number;
    std::string name;
    double limit_seconds;
    bool pass = false;
    double seconds = 0.0;
    std::string detail;
};

double elapsed(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

bool verdict_pass(const json& report, const std::string& name, std::string* detail) {
    for (const auto& v : report.at("verdicts")) {
        if (v.at("name") == name) {
            if (detail != nullptr) *detail += name + ": " + v.at("detail").get<std::string>() + "; ";
            return v.at("pass").get<bool>();
        }
    }
    if (detail != nullptr) *detail += name + ": missing; ";
    return false;
}

bool verdict_group(const json& report, const std::vector<std::string>& names,
                   std::string* detail) {
    bool ok = true;
    for (const auto& n : names) ok = verdict_pass(report, n, detail) && ok;
    return ok;
}

json load_fixture(const std::string& name) {
    std::filesystem::path path = std::filesystem::path(MHANKEL_FIXTURE_DIR) / name;
    std::ifstream in(path);
    if (!in.good()) throw std::runtime_error("cannot open fixture " + path.string());
    return json::parse(in);
}

// symbol supported on {n <= 500 : Omega(n) >= 2}, complex coefficients
Symbol random_heavy_symbol(std::uint64_t seed) {
    Symbol s;
    std::size_t target = 5 + rng::draw_u64(seed, 0) % 11;
    std::uint64_t ctr = 1;
    while (s.rho.size() < target) {
        u64 n = 4 + rng::draw_u64(seed, ctr++) % 497;
        if (omega(n) < 2 || s.rho.count(n) != 0) continue;
        s.rho[n] = cdouble(rng::draw_symmetric(seed, ctr), rng::draw_symmetric(seed, ctr + 1));
        ctr += 2;
    }
    return s;
}

void finish(Criterion& c, Clock::time_point t0, bool checks, const std::string& detail) {
    c.seconds = elapsed(t0);
    bool in_budget = c.seconds < c.limit_seconds;
    c.pass = checks && in_budget;
    c.detail = detail;
    if (!in_budget) c.detail += "over budget; ";
}

}  // namespace

int main() {
    std::vector<Criterion> results;

    // criteria 1 and 2 share one embedding run
    {
        Criterion c1{1, "embedding-exactness", 10.0};
        Criterion c2{2, "embedding-sandwich", 10.0};
        auto t0 = Clock::now();
        EmbedVerifyConfig cfg;  // 20 trials, sizes up to 6, exact_tol 1e-8, margin 1e-9
        json report = run_embed_verify(cfg);
        std::string d1, d2;
        bool ok1 = verdict_pass(report, "restricted-norm-matches-sigma", &d1);
        bool ok2 = verdict_group(report, {"full-norm-above-s2", "full-norm-below-4s2"}, &d2);
        finish(c1, t0, ok1, d1);
        c2.seconds = c1.seconds;
        c2.pass = ok2 && c2.seconds < c2.limit_seconds;
        c2.detail = d2;
        results.push_back(c1);
        results.push_back(c2);
    }

    {
        Criterion c{3, "schatten-doubling", 10.0};
        auto t0 = Clock::now();
        SchattenEmbedConfig cfg;  // p in {1,2,3,4}, 10 trials, tol 1e-8
        json report = run_schatten_embed(cfg);
        std::string d;
        bool ok = verdict_pass(report, "schatten-mass-doubles", &d);
        finish(c, t0, ok, d);
        results.push_back(c);
    }

    {
        Criterion c{4, "frobenius-divisor-identity", 30.0};
        auto t0 = Clock::now();
        double worst = 0.0;
        for (std::uint64_t t = 0; t < 20; ++t) {
            Symbol s = random_heavy_symbol(rng::derive_seed(2024, 1000 + t));
            HankelMatrix m0 = build_hankel(s, index_divisor_closed(s, 2));
            worst = std::max(worst,
                             std::abs(schatten_norm(m0, 2.0) - frobenius_via_divisors(s)));
        }
        finish(c, t0, worst <= 1e-10, "max |S_2 - divisor route| " + fmt(worst) + "; ");
        results.push_back(c);
    }

    {
        Criterion c{5, "phi-d-separation", 120.0};
        auto t0 = Clock::now();
        PhiDConfig cfg;  // d = 1..4, 1e6 samples, MC for d <= 3
        json report = run_phi_d(cfg);
        std::string d;
        std::vector<std::string> names;
        for (int k = 1; k <= 4; ++k) {
            names.push_back("hankel-norm-d" + std::to_string(k));
            names.push_back("pairing-d" + std::to_string(k));
        }
        for (int k = 1; k <= 3; ++k) names.push_back("h1-norm-d" + std::to_string(k));
        bool ok = verdict_group(report, names, &d);
        finish(c, t0, ok, d);
        results.push_back(c);
    }

    {
        Criterion c{6, "hilbert-constant-sweep", 300.0};
        auto t0 = Clock::now();
        std::string d;
        bool ok = true;
        double fixture_value = load_fixture("hilbert_mult_n1000.json").at("value").get<double>();

        for (const char* vname : {"mult", "add", "add-shifted", "add-zero", "mult-half"}) {
            std::string variant = vname;
            HilbertConfig svd_cfg;
            svd_cfg.variant = variant;
            svd_cfg.n_list = {200, 500, 1000, 2000};
            svd_cfg.mode = "svd";
            json rs = run_hilbert(svd_cfg);
            ok = verdict_group(rs, {"values-nondecreasing", "bounded-by-pi"}, nullptr) && ok;

            HilbertConfig mf_cfg;
            mf_cfg.variant = variant;
            mf_cfg.n_list = {5000, 20000};
            mf_cfg.mode = "matfree";
            json rm = run_hilbert(mf_cfg);
            ok = verdict_group(
                     rm, {"values-nondecreasing", "bounded-by-pi", "power-iteration-converged"},
                     nullptr) &&
                 ok;

            // chain the two modes: the matrix-free values extend the SVD sweep
            std::vector<double> values;
            for (const auto& row : rs.at("rows"))
                values.push_back(row.at("norm").at("value").get<double>());
            for (const auto& row : rm.at("rows"))
                values.push_back(row.at("norm").at("value").get<double>());
            double worst_drop = 0.0;
            for (std::size_t i = 0; i + 1 < values.size(); ++i)
                worst_drop = std::max(worst_drop, values[i] - values[i + 1]);
            if (worst_drop > 1e-9) {
                ok = false;
                d += variant + ": cross-mode drop " + fmt(worst_drop) + "; ";
            }
            d += variant + " top " + fmt(values.back()) + "; ";

            if (variant == "mult") {
                for (const auto& row : rs.at("rows")) {
                    if (row.at("n").get<u64>() == 1000) {
                        double diff =
                            std::abs(row.at("norm").at("value").get<double>() - fixture_value);
                        if (diff > 1e-8) ok = false;
                        d += "fixture diff " + fmt(diff) + "; ";
                    }
                }
            }
        }

        // open-question sweep: only monotonicity is promised on {1..N}
        HilbertConfig full_cfg;
        full_cfg.variant = "mult-full";
        full_cfg.n_list = {200, 500, 1000, 2000};
        full_cfg.mode = "svd";
        ok = verdict_pass(run_hilbert(full_cfg), "values-nondecreasing", &d) && ok;

        finish(c, t0, ok, d);
        results.push_back(c);
    }

    {
        Criterion c{7, "homogeneous-mask-contraction", 60.0};
        auto t0 = Clock::now();
        SchurConfig cfg;  // 50 trials, slack 1e-10
        cfg.pattern = "homog_mask_all_m";
        json report = run_schur(cfg);
        std::string d;
        bool ok = verdict_pass(report, "mask-contracts-norm", &d);
        finish(c, t0, ok, d);
        results.push_back(c);
    }

    {
        Criterion c{8, "skew-comparisons", 30.0};
        auto t0 = Clock::now();
        SchurConfig skew_cfg;
        skew_cfg.pattern = "skew_log_nonneg";
        json skew_report = run_schur(skew_cfg);
        SchurConfig radial_cfg;
        radial_cfg.pattern = "skew_radial_embed";
        json radial_report = run_schur(radial_cfg);
        std::string d;
        bool ok = verdict_pass(skew_report, "skew-contracts-nonneg", &d);
        ok = verdict_group(radial_report, {"radial-halves-pair-entries", "radial-halves-norm"},
                           &d) &&
             ok;
        finish(c, t0, ok, d);
        results.push_back(c);
    }

    {
        Criterion c{9, "inequality-suite", 180.0};
        auto t0 = Clock::now();
        InequalityConfig cfg;  // 20 trials, 3 sigma bands, 1e-12 exact routes
        json report = run_inequalities(cfg);
        std::string d;
        bool ok = verdict_group(report,
                                {"helson-below-h1", "homog-sum-below-pi-h1", "slice-identity-p1",
                                 "slice-identity-p3", "level-parseval", "slice-parseval"},
                                &d);
        finish(c, t0, ok, d);
        results.push_back(c);
    }

    {
        Criterion c{10, "nehari-symbol", 5.0};
        auto t0 = Clock::now();
        NehariConfig cfg;  // k <= 100, grid 2^16, coeff tol 1e-8, sup tol 1e-6
        json report = run_nehari(cfg);
        std::string d;
        bool ok =
            verdict_group(report, {"coefficients-match-reciprocals", "symbol-sup-is-pi"}, &d);
        finish(c, t0, ok, d);
        results.push_back(c);
    }

    int failures = 0;
    for (const auto& c : results) {
        if (!c.pass) ++failures;
        std::printf("[%s] criterion %2d %-28s %6.1fs / %5.0fs  %s\n",
                    c.pass ? "PASS" : "FAIL", c.number, c.name.c_str(), c.seconds,
                    c.limit_seconds, c.detail.c_str());
    }
    std::printf("%d of %zu criteria passed\n", (int)results.size() - failures, results.size());
    return failures;
}
