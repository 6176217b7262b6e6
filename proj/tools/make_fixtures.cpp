// Regenerates the frozen oracle values that the test suite compares against.
// Run from the repository root after a deliberate change to the numerics:
//   build/tools/make_fixtures [tests/fixtures]
// The outputs are committed; tests read them through MHANKEL_FIXTURE_DIR.

#include <Eigen/SVD>
#include <fstream>
#include <iostream>
#include <string>

#include <json.hpp>

#include "mhankel/experiments.hpp"
#include "mhankel/hankel.hpp"

namespace {

void write_file(const std::string& path, const nlohmann::ordered_json& doc) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << doc.dump(2) << '\n';
    if (!out.good()) throw std::runtime_error("write failed for " + path);
    std::cout << "wrote " << path << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    std::string dir = argc > 1 ? argv[1] : "tests/fixtures";

    {
        // dense SVD value of the multiplicative Hilbert section at n = 1000
        const std::size_t n = 1000;
        Eigen::MatrixXd M = mhankel::hilbert_matrix(mhankel::HilbertVariant::mult, n);
        Eigen::BDCSVD<Eigen::MatrixXd> svd(M);
        nlohmann::ordered_json doc;
        doc["variant"] = "mult";
        doc["n"] = n;
        doc["operation"] = "dense-svd";
        doc["value"] = svd.singularValues()(0);
        write_file(dir + "/hilbert_mult_n1000.json", doc);
    }

    {
        // skew-weight tail values on the first 10^4 primes
        const std::size_t count = 10000;
        auto tails = mhankel::experiments::bennett_tails(count);
        nlohmann::ordered_json doc;
        doc["table_count"] = count;
        doc["row_tail"] = tails.row_tail;
        doc["col_tail"] = tails.col_tail;
        doc["gap"] = tails.gap;
        write_file(dir + "/bennett_tails.json", doc);
    }

    return 0;
}
