#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qhcompat {

enum class ErrorKind {
    DimensionMismatch,
    SingularMatrix,
    ConvergenceFailure,
    NotHermitian,
    NonRealSpectrum,
    DegenerateSpectrum,
    OracleDimensionExceeded,
    DegenerateSpectrumRequested,
    IllConditioned,
    InvalidArgument,
    ParseError,
    IoError,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries a machine-readable kind so the
/// CLI can map it onto a structured report.
class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

[[noreturn]] inline void raise(ErrorKind kind, const std::string& message) {
    throw Error(kind, message);
}

} // namespace qhcompat
