#include "qhcompat/matrix_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "qhcompat/error.hpp"

namespace qhcompat::io {
namespace {

double finite_number(const nlohmann::json& j, const char* what) {
    if (!j.is_number()) raise(ErrorKind::ParseError, std::string(what) + " is not a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) raise(ErrorKind::ParseError, std::string(what) + " is not finite");
    return v;
}

} // namespace

nlohmann::json to_json(const ComplexMatrix& matrix) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index i = 0; i < matrix.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index j = 0; j < matrix.cols(); ++j) {
            row.push_back({matrix(i, j).real(), matrix(i, j).imag()});
        }
        rows.push_back(std::move(row));
    }
    return {{"n", matrix.rows()}, {"rows", std::move(rows)}};
}

nlohmann::json to_json(const MatrixFile& file) {
    nlohmann::json j = to_json(file.matrix);
    if (file.name) j["name"] = *file.name;
    return j;
}

nlohmann::json to_json(const RealVector& v) {
    nlohmann::json out = nlohmann::json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
    return out;
}

MatrixFile from_json(const nlohmann::json& j) {
    if (!j.is_object()) raise(ErrorKind::ParseError, "matrix file must be a JSON object");
    if (!j.contains("n") || !j["n"].is_number_integer()) {
        raise(ErrorKind::ParseError, "field 'n' must be an integer");
    }
    const auto n = j["n"].get<long long>();
    if (n < 1) raise(ErrorKind::ParseError, "field 'n' must be >= 1");
    if (!j.contains("rows") || !j["rows"].is_array() ||
        j["rows"].size() != static_cast<std::size_t>(n)) {
        raise(ErrorKind::ParseError, "field 'rows' must hold n rows");
    }
    MatrixFile out{ComplexMatrix(n, n), std::nullopt};
    for (long long r = 0; r < n; ++r) {
        const auto& row = j["rows"][static_cast<std::size_t>(r)];
        if (!row.is_array() || row.size() != static_cast<std::size_t>(n)) {
            std::ostringstream os;
            os << "row " << r << " must hold " << n << " entries";
            raise(ErrorKind::ParseError, os.str());
        }
        for (long long c = 0; c < n; ++c) {
            const auto& entry = row[static_cast<std::size_t>(c)];
            if (!entry.is_array() || entry.size() != 2) {
                raise(ErrorKind::ParseError, "entries must be [re, im] pairs");
            }
            out.matrix(r, c) = Complex(finite_number(entry[0], "real part"),
                                       finite_number(entry[1], "imaginary part"));
        }
    }
    if (j.contains("name")) {
        if (!j["name"].is_string()) raise(ErrorKind::ParseError, "field 'name' must be a string");
        out.name = j["name"].get<std::string>();
    }
    return out;
}

MatrixFile read_matrix_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) raise(ErrorKind::IoError, "cannot open " + path.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        raise(ErrorKind::ParseError, path.string() + ": " + e.what());
    }
    try {
        return from_json(j);
    } catch (const Error& e) {
        raise(e.kind(), path.string() + ": " + e.what());
    }
}

void write_matrix_file(const std::filesystem::path& path, const MatrixFile& file) {
    std::ofstream out(path);
    if (!out) raise(ErrorKind::IoError, "cannot write " + path.string());
    out << to_json(file).dump(2) << '\n';
    if (!out) raise(ErrorKind::IoError, "failed writing " + path.string());
}

} // namespace qhcompat::io
