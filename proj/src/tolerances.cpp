#include "qhcompat/tolerances.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "qhcompat/error.hpp"

namespace qhcompat {
namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

double parse_number(std::string_view text) {
    std::string owned(trim(text));
    char* end = nullptr;
    const double value = std::strtod(owned.c_str(), &end);
    if (owned.empty() || end != owned.c_str() + owned.size() || !std::isfinite(value)) {
        raise(ErrorKind::InvalidArgument, "tolerance value '" + owned + "' is not a finite number");
    }
    return value;
}

} // namespace

void Tolerances::apply_overrides(std::string_view spec) {
    while (!spec.empty()) {
        const auto comma = spec.find(',');
        const std::string_view item = trim(spec.substr(0, comma));
        spec = comma == std::string_view::npos ? std::string_view{} : spec.substr(comma + 1);
        if (item.empty()) continue;

        const auto eq = item.find('=');
        if (eq == std::string_view::npos) {
            witness_tol = parse_number(item);
            continue;
        }
        const std::string key(trim(item.substr(0, eq)));
        const double value = parse_number(item.substr(eq + 1));
        if (key == "eig_tol") eig_tol = value;
        else if (key == "null_tol") null_tol = value;
        else if (key == "herm_tol") herm_tol = value;
        else if (key == "rank_tol") rank_tol = value;
        else if (key == "eig_real_tol") eig_real_tol = value;
        else if (key == "degen_tol") degen_tol = value;
        else if (key == "pos_margin") pos_margin = value;
        else if (key == "margin_band") margin_band = value;
        else if (key == "pd_tol") pd_tol = value;
        else if (key == "witness_tol") witness_tol = value;
        else if (key == "oracle_max_n") oracle_max_n = static_cast<int>(value);
        else if (key == "max_starts") max_starts = static_cast<int>(value);
        else raise(ErrorKind::InvalidArgument, "unknown tolerance key '" + key + "'");
    }
}

Tolerances Tolerances::from_environment() {
    Tolerances tol;
    if (const char* env = std::getenv("QHCOMPAT_TOL"); env != nullptr) {
        tol.apply_overrides(env);
    }
    return tol;
}

} // namespace qhcompat
