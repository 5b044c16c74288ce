#include "qhcompat/error.hpp"

namespace qhcompat {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::SingularMatrix: return "SingularMatrix";
    case ErrorKind::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NonRealSpectrum: return "NonRealSpectrum";
    case ErrorKind::DegenerateSpectrum: return "DegenerateSpectrum";
    case ErrorKind::OracleDimensionExceeded: return "OracleDimensionExceeded";
    case ErrorKind::DegenerateSpectrumRequested: return "DegenerateSpectrumRequested";
    case ErrorKind::IllConditioned: return "IllConditioned";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::IoError: return "IoError";
    }
    return "Unknown";
}

} // namespace qhcompat
