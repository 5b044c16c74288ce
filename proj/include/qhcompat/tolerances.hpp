#pragma once

#include <string>
#include <string_view>

namespace qhcompat {

/// Numerical cutoffs shared by every module. All values are relative.
struct Tolerances {
    double eig_tol = 1e-9;       // eigenpair residual, relative to ||A||_F
    double null_tol = 1e-8;      // singular values below null_tol * sigma_max are zero
    double herm_tol = 1e-10;     // ||H - H^dagger||_F / ||H||_F
    double rank_tol = 1e-12;     // sigma_min / sigma_max below this is singular
    double eig_real_tol = 1e-9;  // |Im lambda| relative to the spectral radius
    double degen_tol = 1e-8;     // eigenvalue gap relative to the spectral spread
    double pos_margin = 1e-8;    // LP margin needed to return a positive scaling
    double margin_band = 1e-6;   // |margin| inside this band is borderline
    double pd_tol = 1e-8;        // lambda_min(Theta) / ||Theta||_F for the oracle
    double witness_tol = 1e-8;   // metric mismatch, unitarity and quasi-Hermiticity checks
    int oracle_max_n = 4;
    int max_starts = 64;

    static Tolerances defaults() { return {}; }

    /// Applies overrides of the form "key=value[,key=value...]". A bare number
    /// sets witness_tol. Throws Error(InvalidArgument) on unknown keys.
    void apply_overrides(std::string_view spec);

    /// Defaults, then QHCOMPAT_TOL from the environment when it is set.
    static Tolerances from_environment();
};

} // namespace qhcompat
