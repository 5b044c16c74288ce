#include "qhcompat/dyson.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qhcompat/error.hpp"

namespace qhcompat::dyson {
namespace {

void fix_phase(ComplexMatrix& vectors) {
    for (Eigen::Index k = 0; k < vectors.cols(); ++k) {
        Eigen::Index pivot = 0;
        vectors.col(k).cwiseAbs().maxCoeff(&pivot);
        const Complex entry = vectors(pivot, k);
        vectors.col(k) *= std::conj(entry) / std::abs(entry);
        vectors(pivot, k) = std::abs(entry);
    }
}

void require_nondegenerate(const RealVector& values, double scale, double degen_tol) {
    const Eigen::Index n = values.size();
    if (n < 2) return;
    const double spread = values(n - 1) - values(0);
    const double threshold = degen_tol * std::max(spread, scale);
    for (Eigen::Index k = 0; k + 1 < n; ++k) {
        if (values(k + 1) - values(k) <= threshold) {
            std::ostringstream os;
            os.precision(17);
            os << "eigenvalues " << k << " and " << k + 1 << " (" << values(k) << ", "
               << values(k + 1) << ") coincide; degenerate spectra are not supported";
            raise(ErrorKind::DegenerateSpectrum, os.str());
        }
    }
}

} // namespace

ScalingVector::ScalingVector(RealVector values) : values_(std::move(values)) {
    for (Eigen::Index i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_(i)) || !(values_(i) > 0.0)) {
            std::ostringstream os;
            os << "scaling entry " << i << " = " << values_(i) << " is not strictly positive";
            raise(ErrorKind::InvalidArgument, os.str());
        }
    }
}

ScalingVector ScalingVector::uniform(Eigen::Index n, double value) {
    return ScalingVector(RealVector::Constant(n, value));
}

SpectralData analyze(const ComplexMatrix& a, const Tolerances& tol) {
    require_square(a, "observable");
    const ComplexMatrix a_dagger = adjoint(a);
    EigenDecomposition ed = eig(a_dagger, tol.eig_tol);

    const Eigen::Index n = a.rows();
    // Coalescing eigenvectors mark an exceptional point; rounding there can
    // also split the eigenvalues off the real axis, so test this first.
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const double overlap = std::abs(ed.vectors.col(i).dot(ed.vectors.col(j)));
            if (1.0 - overlap <= tol.degen_tol) {
                std::ostringstream os;
                os << "eigenvectors " << i << " and " << j
                   << " coalesce (exceptional point, 1 - |overlap| = " << 1.0 - overlap << ")";
                raise(ErrorKind::DegenerateSpectrum, os.str());
            }
        }
    }
    const double radius = ed.values.cwiseAbs().maxCoeff();
    const double max_imag = ed.values.imag().cwiseAbs().maxCoeff();
    if (max_imag > tol.eig_real_tol * radius) {
        std::ostringstream os;
        os << "spectrum is not real: max |Im lambda| = " << max_imag
           << " (spectral radius " << radius << ")";
        raise(ErrorKind::NonRealSpectrum, os.str());
    }

    RealVector values = ed.values.real();
    require_nondegenerate(values, a.norm() / std::sqrt(static_cast<double>(n)), tol.degen_tol);

    fix_phase(ed.vectors);
    // Throws SingularMatrix when the eigenvectors are numerically dependent.
    inverse(ed.vectors, tol.rank_tol);

    return SpectralData{std::move(values), std::move(ed.vectors), a, max_imag};
}

SpectralData from_factor(const ComplexMatrix& a, const ComplexMatrix& omega_dagger,
                         const Tolerances& tol) {
    require_square(a, "observable");
    require_square(omega_dagger, "Dyson factor");
    if (a.rows() != omega_dagger.rows()) {
        raise(ErrorKind::DimensionMismatch, "observable and Dyson factor differ in size");
    }
    inverse(omega_dagger, tol.rank_tol);

    const ComplexMatrix a_dagger = adjoint(a);
    const Eigen::Index n = a.rows();
    RealVector values(n);
    double max_imag = 0.0;
    for (Eigen::Index k = 0; k < n; ++k) {
        const auto v = omega_dagger.col(k);
        const Complex rayleigh = v.dot(a_dagger * v) / v.squaredNorm();
        values(k) = rayleigh.real();
        max_imag = std::max(max_imag, std::abs(rayleigh.imag()));
    }
    const double radius = values.cwiseAbs().maxCoeff();
    if (max_imag > tol.eig_real_tol * std::max(radius, max_imag)) {
        raise(ErrorKind::NonRealSpectrum, "Dyson factor columns carry complex eigenvalues");
    }
    const double residual = (a_dagger * omega_dagger - omega_dagger * values.asDiagonal()).norm();
    if (residual > tol.eig_tol * a.norm() * omega_dagger.norm()) {
        std::ostringstream os;
        os << "columns are not eigenvectors of the adjoint (residual " << residual << ")";
        raise(ErrorKind::InvalidArgument, os.str());
    }
    RealVector sorted = values;
    std::sort(sorted.begin(), sorted.end());
    require_nondegenerate(sorted, a.norm() / std::sqrt(static_cast<double>(n)), tol.degen_tol);
    return SpectralData{std::move(values), omega_dagger, a, max_imag};
}

MetricCandidate metric(const SpectralData& sd, const ScalingVector& squared, const Tolerances&) {
    if (squared.size() != sd.size()) {
        std::ostringstream os;
        os << "scaling has length " << squared.size() << ", expected " << sd.size();
        raise(ErrorKind::DimensionMismatch, os.str());
    }
    const ComplexMatrix& od = sd.omega_dagger;
    ComplexMatrix theta = od * squared.values().asDiagonal() * od.adjoint();
    return MetricCandidate{hermitian_part(theta), squared, sd};
}

double quasi_hermiticity_residual(const ComplexMatrix& a, const ComplexMatrix& theta) {
    if (a.rows() != a.cols() || theta.rows() != theta.cols() || a.rows() != theta.rows()) {
        raise(ErrorKind::DimensionMismatch, "observable and metric must be square of equal size");
    }
    const double numerator = (a.adjoint() * theta - theta * a).norm();
    const double denominator = a.norm() * theta.norm();
    if (denominator == 0.0) return numerator == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return numerator / denominator;
}

ComplexMatrix isospectral_image(const SpectralData& sd, const Tolerances& tol) {
    const ComplexMatrix& od = sd.omega_dagger;
    return inverse(od, tol.rank_tol) * sd.source.adjoint() * od;
}

} // namespace qhcompat::dyson
