#pragma once

#include "qhcompat/matcore.hpp"
#include "qhcompat/tolerances.hpp"

namespace qhcompat::dyson {

/// Strictly positive diagonal of squared column scalings c^2.
class ScalingVector {
  public:
    /// Throws InvalidArgument unless every entry is finite and > 0.
    explicit ScalingVector(RealVector values);

    static ScalingVector uniform(Eigen::Index n, double value = 1.0);

    const RealVector& values() const noexcept { return values_; }
    Eigen::Index size() const noexcept { return values_.size(); }
    double operator[](Eigen::Index i) const { return values_(i); }

  private:
    RealVector values_;
};

/// Real nondegenerate spectrum of A^dagger together with the Dyson factor
/// Omega^dagger whose columns are the matching eigenvectors.
struct SpectralData {
    RealVector eigenvalues;     // ascending
    ComplexMatrix omega_dagger; // column k pairs with eigenvalues(k)
    ComplexMatrix source;       // the observable A
    double max_imag = 0.0;      // largest |Im lambda| discarded

    Eigen::Index size() const noexcept { return eigenvalues.size(); }
    ComplexMatrix omega() const { return adjoint(omega_dagger); }
};

/// Metric Theta = Omega^dagger diag(c^2) Omega from one observable's family.
struct MetricCandidate {
    ComplexMatrix theta;
    ScalingVector scaling;
    SpectralData factor;
};

/// Diagonalizes A^dagger. Columns of Omega^dagger are unit-norm with the
/// largest-modulus component made real positive.
/// Throws NonRealSpectrum, DegenerateSpectrum, ConvergenceFailure or
/// SingularMatrix.
SpectralData analyze(const ComplexMatrix& a, const Tolerances& tol = {});

/// Wraps a caller-supplied Dyson factor (columns eigenvectors of A^dagger, in
/// any order and normalization). Eigenvalues are recovered columnwise and the
/// factor is validated but kept as given.
SpectralData from_factor(const ComplexMatrix& a, const ComplexMatrix& omega_dagger,
                         const Tolerances& tol = {});

/// Theta(c) = Omega^dagger diag(c^2) Omega; `squared` holds the c^2 values.
MetricCandidate metric(const SpectralData& sd, const ScalingVector& squared,
                       const Tolerances& tol = {});

/// ||A^dagger Theta - Theta A||_F / (||A||_F ||Theta||_F).
double quasi_hermiticity_residual(const ComplexMatrix& a, const ComplexMatrix& theta);

/// (Omega^dagger)^{-1} A^dagger Omega^dagger, which is diag(eigenvalues).
ComplexMatrix isospectral_image(const SpectralData& sd, const Tolerances& tol = {});

} // namespace qhcompat::dyson
