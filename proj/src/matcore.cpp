#include "qhcompat/matcore.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "qhcompat/error.hpp"

namespace qhcompat {
namespace {

template <typename Matrix>
Matrix nullspace_impl(const Matrix& c, double null_tol, double scale) {
    const Eigen::Index n = c.cols();
    if (c.rows() == 0 || n == 0) return Matrix::Identity(n, n);

    Eigen::JacobiSVD<Matrix> svd(c, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double reference = std::max(sv.size() > 0 ? sv(0) : 0.0, scale);
    Eigen::Index rank = 0;
    if (reference > 0.0) {
        for (Eigen::Index i = 0; i < sv.size(); ++i) {
            if (sv(i) > null_tol * reference) ++rank;
        }
    }
    return svd.matrixV().rightCols(n - rank);
}

} // namespace

void require_square(const ComplexMatrix& a, const char* what) {
    if (a.rows() < 1 || a.rows() != a.cols()) {
        std::ostringstream os;
        os << what << " must be square with n >= 1, got " << a.rows() << "x" << a.cols();
        raise(ErrorKind::DimensionMismatch, os.str());
    }
    if (!a.allFinite()) {
        raise(ErrorKind::InvalidArgument, std::string(what) + " has non-finite entries");
    }
}

ComplexMatrix adjoint(const ComplexMatrix& a) { return a.adjoint(); }

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) {
        std::ostringstream os;
        os << "cannot multiply " << a.rows() << "x" << a.cols() << " by " << b.rows() << "x"
           << b.cols();
        raise(ErrorKind::DimensionMismatch, os.str());
    }
    return a * b;
}

double condition_number(const ComplexMatrix& a) {
    if (a.size() == 0) return 1.0;
    Eigen::JacobiSVD<ComplexMatrix> svd(a);
    const auto& sv = svd.singularValues();
    const double smallest = sv(sv.size() - 1);
    if (smallest == 0.0) return std::numeric_limits<double>::infinity();
    return sv(0) / smallest;
}

ComplexMatrix inverse(const ComplexMatrix& a, double rank_tol) {
    require_square(a, "inverse operand");
    const double cond = condition_number(a);
    if (!(cond * rank_tol < 1.0)) {
        std::ostringstream os;
        os << "matrix is singular to working precision (condition estimate " << cond << ")";
        raise(ErrorKind::SingularMatrix, os.str());
    }
    return a.partialPivLu().inverse();
}

EigenDecomposition eig(const ComplexMatrix& a, double eig_tol) {
    require_square(a, "eig operand");
    Eigen::ComplexEigenSolver<ComplexMatrix> solver(a, true);
    if (solver.info() != Eigen::Success) {
        raise(ErrorKind::ConvergenceFailure, "complex QR iteration did not converge");
    }
    const Eigen::Index n = a.rows();
    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    const auto& values = solver.eigenvalues();
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index l, Eigen::Index r) {
        if (values(l).real() != values(r).real()) return values(l).real() < values(r).real();
        return values(l).imag() < values(r).imag();
    });

    EigenDecomposition out{ComplexVector(n), ComplexMatrix(n, n)};
    const double scale = a.norm();
    for (Eigen::Index k = 0; k < n; ++k) {
        const Eigen::Index src = order[static_cast<std::size_t>(k)];
        out.values(k) = values(src);
        ComplexVector v = solver.eigenvectors().col(src);
        const double norm = v.norm();
        if (norm == 0.0) raise(ErrorKind::ConvergenceFailure, "zero eigenvector returned");
        v /= norm;
        const double residual = (a * v - out.values(k) * v).norm();
        if (residual > eig_tol * scale) {
            std::ostringstream os;
            os << "eigenpair " << k << " residual " << residual << " exceeds tolerance";
            raise(ErrorKind::ConvergenceFailure, os.str());
        }
        out.vectors.col(k) = v;
    }
    return out;
}

RealMatrix nullspace_real(const RealMatrix& c, double null_tol, double scale) {
    return nullspace_impl(c, null_tol, scale);
}

ComplexMatrix nullspace_complex(const ComplexMatrix& c, double null_tol, double scale) {
    return nullspace_impl(c, null_tol, scale);
}

RealVector singular_values(const RealMatrix& c) {
    if (c.size() == 0) return RealVector(0);
    return Eigen::JacobiSVD<RealMatrix>(c).singularValues();
}

UnitarityCheck is_unitary(const ComplexMatrix& u, double tol) {
    const Eigen::Index n = u.rows();
    const double residual = (u.adjoint() * u - ComplexMatrix::Identity(n, u.cols())).norm();
    return {residual <= tol, residual};
}

double hermiticity_residual(const ComplexMatrix& h) {
    const double scale = h.norm();
    if (scale == 0.0) return 0.0;
    return (h - h.adjoint()).norm() / scale;
}

ComplexMatrix hermitian_part(const ComplexMatrix& h) { return 0.5 * (h + h.adjoint()); }

RealVector hermitian_eigenvalues(const ComplexMatrix& h, double herm_tol) {
    require_square(h, "Hermitian operand");
    const double residual = hermiticity_residual(h);
    if (residual > herm_tol) {
        std::ostringstream os;
        os << "matrix is not Hermitian (relative residual " << residual << ")";
        raise(ErrorKind::NotHermitian, os.str());
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian_part(h), Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        raise(ErrorKind::ConvergenceFailure, "Hermitian eigensolver did not converge");
    }
    return solver.eigenvalues();
}

ComplexMatrix expm_antihermitian(const ComplexMatrix& k, double herm_tol) {
    require_square(k, "generator");
    const double scale = k.norm();
    if (scale > 0.0 && (k + k.adjoint()).norm() > herm_tol * scale) {
        raise(ErrorKind::NotHermitian, "generator is not anti-Hermitian");
    }
    const Complex minus_i(0.0, -1.0);
    const ComplexMatrix h = hermitian_part(minus_i * k);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
    if (solver.info() != Eigen::Success) {
        raise(ErrorKind::ConvergenceFailure, "Hermitian eigensolver did not converge");
    }
    const RealVector& w = solver.eigenvalues();
    ComplexVector phases(w.size());
    for (Eigen::Index i = 0; i < w.size(); ++i) phases(i) = std::polar(1.0, w(i));
    const ComplexMatrix& v = solver.eigenvectors();
    return v * phases.asDiagonal() * v.adjoint();
}

} // namespace qhcompat
