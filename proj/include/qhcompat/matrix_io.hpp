#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "qhcompat/matcore.hpp"

namespace qhcompat::io {

/// {"n": N, "rows": [[[re, im], ...], ...], "name": "..."} with "name" optional.
struct MatrixFile {
    ComplexMatrix matrix;
    std::optional<std::string> name;
};

nlohmann::json to_json(const MatrixFile& file);
nlohmann::json to_json(const ComplexMatrix& matrix);

/// Throws Error(ParseError) on malformed content or non-finite numbers.
MatrixFile from_json(const nlohmann::json& j);

MatrixFile read_matrix_file(const std::filesystem::path& path);
void write_matrix_file(const std::filesystem::path& path, const MatrixFile& file);

nlohmann::json to_json(const RealVector& v);

} // namespace qhcompat::io
