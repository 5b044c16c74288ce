#pragma once

#include <Eigen/Dense>

#include <complex>

#include "qhcompat/tolerances.hpp"

namespace qhcompat {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Throws DimensionMismatch unless A is square with n >= 1, and
/// InvalidArgument if any entry is NaN or infinite.
void require_square(const ComplexMatrix& a, const char* what = "matrix");

ComplexMatrix adjoint(const ComplexMatrix& a);

/// Product with a dimension check (DimensionMismatch).
ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);

/// 2-norm condition number sigma_max / sigma_min; infinity when singular.
double condition_number(const ComplexMatrix& a);

/// Inverse via partial-pivot LU. Throws SingularMatrix when
/// sigma_min <= rank_tol * sigma_max; the message carries the estimate.
ComplexMatrix inverse(const ComplexMatrix& a, double rank_tol = Tolerances{}.rank_tol);

struct EigenDecomposition {
    ComplexVector values;  // ascending by (real, imag)
    ComplexMatrix vectors; // unit 2-norm columns, A v_k = lambda_k v_k
};

/// Dense non-Hermitian eigendecomposition. Throws ConvergenceFailure when the
/// QR iteration fails or an eigenpair residual exceeds eig_tol * ||A||_F.
EigenDecomposition eig(const ComplexMatrix& a, double eig_tol = Tolerances{}.eig_tol);

/// Orthonormal basis (n x d, possibly d = 0) of {x : C x = 0}.
/// Singular values at or below null_tol * max(sigma_max, scale) count as zero.
RealMatrix nullspace_real(const RealMatrix& c, double null_tol = Tolerances{}.null_tol,
                          double scale = 0.0);
ComplexMatrix nullspace_complex(const ComplexMatrix& c, double null_tol = Tolerances{}.null_tol,
                                double scale = 0.0);

/// Singular values in descending order (empty for an empty matrix).
RealVector singular_values(const RealMatrix& c);

struct UnitarityCheck {
    bool unitary = false;
    double residual = 0.0; // ||U^dagger U - I||_F
};

UnitarityCheck is_unitary(const ComplexMatrix& u, double tol);

/// ||H - H^dagger||_F / ||H||_F (0 for the zero matrix).
double hermiticity_residual(const ComplexMatrix& h);

ComplexMatrix hermitian_part(const ComplexMatrix& h);

/// Ascending real spectrum. Throws NotHermitian when the relative
/// anti-Hermitian part exceeds herm_tol.
RealVector hermitian_eigenvalues(const ComplexMatrix& h, double herm_tol = Tolerances{}.herm_tol);

/// exp(K) for anti-Hermitian K, computed as V diag(e^{i w}) V^dagger from the
/// Hermitian eigendecomposition of -iK = V diag(w) V^dagger.
ComplexMatrix expm_antihermitian(const ComplexMatrix& k, double herm_tol = Tolerances{}.herm_tol);

inline double frobenius(const ComplexMatrix& a) { return a.norm(); }

} // namespace qhcompat
