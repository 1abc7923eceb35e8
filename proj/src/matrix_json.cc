// Copyright 2026 The punif Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "punif/matrix_json.h"

#include <fstream>

#include "punif/errors.h"
#include "punif/galois.h"

namespace punif {

namespace {

Eigen::MatrixXd real_block(const nlohmann::json &rows, const char *field) {
    if (!rows.is_array() || rows.empty()) {
        throw ParseError(std::string("matrix field '") + field + "' must be a non-empty array of rows");
    }
    const auto dim = static_cast<Eigen::Index>(rows.size());
    Eigen::MatrixXd out(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        const auto &row = rows[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != dim) {
            throw ParseError(std::string("matrix field '") + field + "' must be square");
        }
        for (Eigen::Index k = 0; k < dim; ++k) {
            const auto &x = row[static_cast<std::size_t>(k)];
            if (!x.is_number()) {
                throw ParseError(std::string("matrix field '") + field + "' has a non-numeric entry");
            }
            out(i, k) = x.get<double>();
        }
    }
    return out;
}

}  // namespace

nlohmann::json operator_to_json(const DenseOperator &op) {
    nlohmann::json re = nlohmann::json::array(), im = nlohmann::json::array();
    for (Eigen::Index i = 0; i < op.dim(); ++i) {
        nlohmann::json re_row = nlohmann::json::array(), im_row = nlohmann::json::array();
        for (Eigen::Index k = 0; k < op.dim(); ++k) {
            re_row.push_back(op(i, k).real());
            im_row.push_back(op(i, k).imag());
        }
        re.push_back(std::move(re_row));
        im.push_back(std::move(im_row));
    }
    return {{"n", op.n()}, {"d", op.d()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

DenseOperator operator_from_json(const nlohmann::json &j) {
    if (!j.is_object() || !j.contains("d") || !j.contains("re")) {
        throw ParseError("matrix JSON needs at least fields 'd' and 're'");
    }
    const int d = j.at("d").get<int>();
    (void)PrimeModulus(d);
    const Eigen::MatrixXd re = real_block(j.at("re"), "re");
    Eigen::MatrixXd im = Eigen::MatrixXd::Zero(re.rows(), re.cols());
    if (j.contains("im")) {
        im = real_block(j.at("im"), "im");
        if (im.rows() != re.rows()) {
            throw ParseError("matrix fields 're' and 'im' differ in size");
        }
    }
    int n = 0;
    std::uint64_t dim = 1;
    while (dim < static_cast<std::uint64_t>(re.rows())) {
        dim *= static_cast<std::uint64_t>(d);
        ++n;
    }
    if (dim != static_cast<std::uint64_t>(re.rows()) || n == 0) {
        throw ParseError("matrix dimension " + std::to_string(re.rows()) + " is not a positive power of d=" +
                                std::to_string(d));
    }
    if (j.contains("n") && j.at("n").get<int>() != n) {
        throw ParseError("declared n=" + std::to_string(j.at("n").get<int>()) + " but the matrix has n=" +
                                std::to_string(n));
    }
    Matrix m(re.rows(), re.cols());
    m.real() = re;
    m.imag() = im;
    return {n, d, std::move(m)};
}

UnitaryHandle unitary_from_json(const nlohmann::json &j, double tolerance) {
    return UnitaryHandle(operator_from_json(j), tolerance);
}

UnitaryHandle read_unitary_file(const std::filesystem::path &path, double tolerance) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open matrix file " + path.string());
    }
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception &e) {
        throw ParseError("matrix file " + path.string() + " is not valid JSON: " + e.what());
    }
    return unitary_from_json(j, tolerance);
}

void write_operator_file(const std::filesystem::path &path, const DenseOperator &op) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write matrix file " + path.string());
    }
    out << operator_to_json(op).dump() << "\n";
}

}  // namespace punif
