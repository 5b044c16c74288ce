#pragma once

#include <optional>
#include <span>
#include <vector>

#include "qhcompat/dyson.hpp"

namespace qhcompat::compat {

using dyson::ScalingVector;
using dyson::SpectralData;

/// M = Omega_1 Omega_2^{-1}; relates the eigenbases of two observables.
struct MixerMatrix {
    ComplexMatrix m;
    double cond = 1.0;
};

struct ConstraintLabel {
    enum class Part { Re, Im };
    Eigen::Index row = 0; // m in (M^dagger diag(x) M)_{m,n}
    Eigen::Index col = 0; // n, always > row
    Part part = Part::Re;
};

/// Real linear functionals of x whose common zero set is the set of diagonal
/// x making M^dagger diag(x) M diagonal.
struct ConstraintSystem {
    RealMatrix c_real; // rows: N(N-1) per mixer, cols: N
    std::vector<ConstraintLabel> labels;
    double scale = 0.0; // typical coefficient magnitude, floors the rank threshold
};

struct PositiveSolve {
    std::optional<ScalingVector> x; // normalized to sum(x) = N
    Eigen::Index nullspace_dim = 0;
    std::optional<double> margin;   // empty when d = 0 or sum(x) = N is unreachable
    bool borderline = false;
    RealVector singular_values;
};

enum class Status { Compatible, Incompatible, Borderline };

const char* to_string(Status status);

struct Witness {
    ScalingVector x;              // c_1^2 of the reference observable
    std::vector<ScalingVector> y; // c_j^2 for j = 2..K
    ComplexMatrix theta;
    double unitarity_residual = 0.0; // max_j ||U_j^dagger U_j - I||_F
    double metric_mismatch = 0.0;    // max_j ||Theta_1 - Theta_j||_F / ||Theta_1||_F
    std::vector<double> quasi_hermiticity; // per observable
    double theta_min_eigenvalue = 0.0;
};

struct Certificate {
    Eigen::Index nullspace_dim = 0;
    std::optional<double> margin;
    Eigen::Index constraint_rows = 0;
    RealVector singular_values;
};

struct CompatibilityVerdict {
    Status status = Status::Incompatible;
    std::optional<Witness> witness;
    Certificate certificate;
    std::vector<SpectralData> spectra;
    std::vector<MixerMatrix> mixers; // M_j = Omega_1 Omega_j^{-1}, j = 2..K
};

/// Throws DimensionMismatch or SingularMatrix.
MixerMatrix mixer(const SpectralData& first, const SpectralData& second,
                  const Tolerances& tol = {});

/// Re/Im parts of the strict upper triangle of M^dagger diag(x) M; entry (m,n)
/// has coefficient conj(M_{k,m}) M_{k,n} on x_k.
ConstraintSystem assemble_constraints(const MixerMatrix& mixer);

/// Row-wise concatenation; all systems must share the column count.
ConstraintSystem stack(std::span<const ConstraintSystem> systems);

PositiveSolve solve_positive(const ConstraintSystem& cs, const Tolerances& tol = {});

/// y_n = sum_k x_k |M_{k,n}|^2, the diagonal of M^dagger diag(x) M.
ScalingVector second_scaling(const MixerMatrix& mixer, const ScalingVector& x);

/// U = diag(sqrt x) M diag(sqrt y)^{-1}; unitary exactly when x, y solve the
/// shared-metric equations.
ComplexMatrix scaled_mixer(const MixerMatrix& mixer, const ScalingVector& x,
                           const ScalingVector& y);

/// Solutions of the off-diagonal equations over complex x (no positivity or
/// reality imposed). Columns of x_basis span the solution space; y_basis holds
/// the matching diagonals of M^dagger diag(x) M.
struct ComplexScalingSpace {
    ComplexMatrix x_basis;
    ComplexMatrix y_basis;
    RealVector singular_values;
};

ComplexScalingSpace complex_scaling_space(const MixerMatrix& mixer, const Tolerances& tol = {});

CompatibilityVerdict decide(const ComplexMatrix& a1, const ComplexMatrix& a2,
                            const Tolerances& tol = {});

/// K >= 2 observables; the first one is the reference for every mixer.
CompatibilityVerdict decide_multi(std::span<const ComplexMatrix> observables,
                                  const Tolerances& tol = {});

} // namespace qhcompat::compat
