#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <string>

#include "mhankel/io.hpp"

using namespace mhankel;

namespace {

std::filesystem::path scratch(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("mhankel_io_test_" + name);
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
}

std::string read_bytes(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
}

}  // namespace

TEST_CASE("coefficient csv round trips bitwise") {
    std::map<u64, cdouble> coeffs{
        {1, cdouble(1.0 / 3.0, -std::numbers::pi)},
        {6, cdouble(1e-300, 2.5e17)},
        {7, cdouble(-0.0, 0.0)},
        {104729, cdouble(123456789.123456789, -1.0)},
    };
    auto path = scratch("coeffs.csv");
    write_coefficients_csv(path.string(), coeffs);
    auto back = read_coefficients_csv(path.string());
    CHECK(back == coeffs);

    std::string raw = read_bytes(path);
    CHECK(raw.rfind("n,re,im\n", 0) == 0);
    CHECK(raw.back() == '\n');
    CHECK(raw.find('\r') == std::string::npos);
}

TEST_CASE("symbol and polynomial round trips") {
    Symbol s;
    s.rho[2] = cdouble(0.25, -0.75);
    s.rho[30] = cdouble(-2.0, 0.0);
    auto spath = scratch("symbol.csv");
    write_symbol_csv(spath.string(), s);
    CHECK(read_symbol_csv(spath.string()).rho == s.rho);

    DirichletPolynomial f(std::map<u64, cdouble>{
        {1, cdouble(1.0, 0.5)}, {4, cdouble(0.0, 1.0)}, {9, cdouble(-3.0, 0.0)}});
    auto fpath = scratch("poly.csv");
    write_polynomial_csv(fpath.string(), f);
    CHECK(read_polynomial_csv(fpath.string()) == f);
}

TEST_CASE("coefficient csv validation") {
    auto path = scratch("bad.csv");

    write_text(path, "wrong,header\n1,2,3\n");
    CHECK_THROWS_AS(read_coefficients_csv(path.string()), std::runtime_error);

    write_text(path, "n,re,im\n2,1.0\n");
    CHECK_THROWS_AS(read_coefficients_csv(path.string()), std::runtime_error);

    write_text(path, "n,re,im\n2,1.0,zero\n");
    CHECK_THROWS_AS(read_coefficients_csv(path.string()), std::runtime_error);

    write_text(path, "n,re,im\n2.5,1.0,0.0\n");
    CHECK_THROWS_AS(read_coefficients_csv(path.string()), std::runtime_error);

    write_text(path, "n,re,im\n0,1.0,0.0\n");
    CHECK_THROWS_AS(read_coefficients_csv(path.string()), std::runtime_error);

    write_text(path, "n,re,im\n3,1.0,0.0\n3,2.0,0.0\n");
    CHECK_THROWS_AS(read_coefficients_csv(path.string()), std::runtime_error);

    write_text(path, "n,re,im\n5,1.0,0.0\n2,2.0,0.0\n");
    CHECK_THROWS_AS(read_coefficients_csv(path.string()), std::runtime_error);

    CHECK_THROWS_AS(read_coefficients_csv(scratch("missing.csv").string()), std::runtime_error);
}

TEST_CASE("coefficient csv tolerates blank lines and crlf") {
    auto path = scratch("tolerant.csv");
    write_text(path, "n,re,im\r\n2,1.5,0.0\r\n\r\n6,0.0,-1.0\r\n");
    auto coeffs = read_coefficients_csv(path.string());
    REQUIRE(coeffs.size() == 2);
    CHECK(coeffs.at(2) == cdouble(1.5, 0.0));
    CHECK(coeffs.at(6) == cdouble(0.0, -1.0));

    write_text(path, "n,re,im\n");
    CHECK(read_coefficients_csv(path.string()).empty());
}

TEST_CASE("matrix csv round trips and stores nonzeros only") {
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(3, 4);
    M(0, 1) = cdouble(1.0 / 7.0, 2.0);
    M(1, 0) = cdouble(-1e-12, 0.0);
    M(2, 3) = cdouble(0.0, 5.0);  // pins the dimensions

    auto path = scratch("matrix.csv");
    write_matrix_csv(path.string(), M);
    Eigen::MatrixXcd R = read_matrix_csv(path.string());
    REQUIRE(R.rows() == 3);
    REQUIRE(R.cols() == 4);
    CHECK((R - M).cwiseAbs().maxCoeff() == 0.0);

    std::string raw = read_bytes(path);
    CHECK(raw.rfind("i,j,re,im\n", 0) == 0);
    // header plus one line per nonzero
    CHECK(std::count(raw.begin(), raw.end(), '\n') == 4);

    // trailing all-zero rows and columns are not representable
    Eigen::MatrixXcd T = Eigen::MatrixXcd::Zero(2, 2);
    T(0, 0) = 1.0;
    write_matrix_csv(path.string(), T);
    Eigen::MatrixXcd S = read_matrix_csv(path.string());
    CHECK(S.rows() == 1);
    CHECK(S.cols() == 1);
}

TEST_CASE("matrix csv validation") {
    auto path = scratch("badmat.csv");
    write_text(path, "i,j,re\n");
    CHECK_THROWS_AS(read_matrix_csv(path.string()), std::runtime_error);

    write_text(path, "i,j,re,im\n0,0,1.0\n");
    CHECK_THROWS_AS(read_matrix_csv(path.string()), std::runtime_error);

    write_text(path, "i,j,re,im\n-1,0,1.0,0.0\n");
    CHECK_THROWS_AS(read_matrix_csv(path.string()), std::runtime_error);
}

TEST_CASE("json records expose the documented keys") {
    SpectralResult r;
    r.value = 1.5;
    r.residual = 1e-12;
    r.iterations = 42;
    r.converged = true;
    nlohmann::json n = norm_record("dense-svd", {{"n", 100}}, r, 7);
    CHECK(n.at("operation") == "dense-svd");
    CHECK(n.at("parameters").at("n") == 100);
    CHECK(n.at("value") == 1.5);
    CHECK(n.at("residual") == 1e-12);
    CHECK(n.at("iterations") == 42);
    CHECK(n.at("seed") == 7);
    CHECK(n.size() == 6);

    McEstimate e;
    e.mean = 0.25;
    e.stderr_ = 0.001;
    e.samples = 1000;
    e.seed = 9;
    nlohmann::json m = mc_record(e);
    CHECK(m.at("mean") == 0.25);
    CHECK(m.at("stderr") == 0.001);
    CHECK(m.at("samples") == 1000);
    CHECK(m.at("seed") == 9);
    CHECK(m.size() == 4);
}
