#include "mhankel/io.hpp"

#include <charconv>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace mhankel {

namespace {

std::string format_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    fields.push_back(cur);
    return fields;
}

double parse_double(const std::string& s, const std::string& path, std::size_t lineno) {
    try {
        std::size_t used = 0;
        double v = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument("trailing junk");
        return v;
    } catch (const std::exception&) {
        throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                 ": malformed number '" + s + "'");
    }
}

u64 parse_u64(const std::string& s, const std::string& path, std::size_t lineno) {
    u64 v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size())
        throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                 ": malformed integer '" + s + "'");
    return v;
}

// opened in binary mode so line endings are LF on every platform
std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    return out;
}

std::vector<std::string> read_lines(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + path);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(line);
    }
    return lines;
}

}  // namespace

void write_coefficients_csv(const std::string& path, const std::map<u64, cdouble>& coeffs) {
    std::ofstream out = open_out(path);
    out << "n,re,im\n";
    for (const auto& [n, a] : coeffs)
        out << n << ',' << format_double(a.real()) << ',' << format_double(a.imag()) << '\n';
}

void write_symbol_csv(const std::string& path, const Symbol& symbol) {
    write_coefficients_csv(path, symbol.rho);
}

void write_polynomial_csv(const std::string& path, const DirichletPolynomial& f) {
    write_coefficients_csv(path, f.coefficients());
}

std::map<u64, cdouble> read_coefficients_csv(const std::string& path) {
    std::vector<std::string> lines = read_lines(path);
    if (lines.empty() || lines[0] != "n,re,im")
        throw std::runtime_error(path + ": expected header 'n,re,im'");
    std::map<u64, cdouble> coeffs;
    u64 prev = 0;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (lines[i].empty()) continue;
        auto f = split_csv_line(lines[i]);
        if (f.size() != 3)
            throw std::runtime_error(path + ":" + std::to_string(i + 1) + ": expected 3 fields");
        u64 n = parse_u64(f[0], path, i + 1);
        if (n == 0 || n <= prev)
            throw std::runtime_error(path + ":" + std::to_string(i + 1) +
                                     ": indices must be positive and strictly increasing");
        prev = n;
        coeffs[n] = cdouble(parse_double(f[1], path, i + 1), parse_double(f[2], path, i + 1));
    }
    return coeffs;
}

Symbol read_symbol_csv(const std::string& path) {
    Symbol s;
    s.rho = read_coefficients_csv(path);
    return s;
}

DirichletPolynomial read_polynomial_csv(const std::string& path) {
    return DirichletPolynomial(read_coefficients_csv(path));
}

void write_matrix_csv(const std::string& path, const Eigen::MatrixXcd& M) {
    std::ofstream out = open_out(path);
    out << "i,j,re,im\n";
    for (Eigen::Index i = 0; i < M.rows(); ++i)
        for (Eigen::Index j = 0; j < M.cols(); ++j) {
            cdouble v = M(i, j);
            if (v == cdouble(0.0, 0.0)) continue;
            out << i << ',' << j << ',' << format_double(v.real()) << ','
                << format_double(v.imag()) << '\n';
        }
}

Eigen::MatrixXcd read_matrix_csv(const std::string& path) {
    std::vector<std::string> lines = read_lines(path);
    if (lines.empty() || lines[0] != "i,j,re,im")
        throw std::runtime_error(path + ": expected header 'i,j,re,im'");
    struct Entry {
        u64 i, j;
        cdouble v;
    };
    std::vector<Entry> entries;
    u64 rows = 0, cols = 0;
    for (std::size_t k = 1; k < lines.size(); ++k) {
        if (lines[k].empty()) continue;
        auto f = split_csv_line(lines[k]);
        if (f.size() != 4)
            throw std::runtime_error(path + ":" + std::to_string(k + 1) + ": expected 4 fields");
        Entry e;
        e.i = parse_u64(f[0], path, k + 1);
        e.j = parse_u64(f[1], path, k + 1);
        e.v = cdouble(parse_double(f[2], path, k + 1), parse_double(f[3], path, k + 1));
        rows = std::max(rows, e.i + 1);
        cols = std::max(cols, e.j + 1);
        entries.push_back(e);
    }
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero((Eigen::Index)rows, (Eigen::Index)cols);
    for (const auto& e : entries) M((Eigen::Index)e.i, (Eigen::Index)e.j) = e.v;
    return M;
}

nlohmann::json norm_record(const std::string& operation, const nlohmann::json& parameters,
                           const SpectralResult& result, std::uint64_t seed) {
    return nlohmann::json{{"operation", operation}, {"parameters", parameters},
                          {"value", result.value},  {"residual", result.residual},
                          {"iterations", result.iterations}, {"seed", seed}};
}

nlohmann::json mc_record(const McEstimate& estimate) {
    return nlohmann::json{{"mean", estimate.mean},
                          {"stderr", estimate.stderr_},
                          {"samples", estimate.samples},
                          {"seed", estimate.seed}};
}

}  // namespace mhankel
