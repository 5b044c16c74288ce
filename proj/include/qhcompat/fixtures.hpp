#pragma once

#include "qhcompat/matcore.hpp"

namespace qhcompat::fixtures {

// Three-level pair: a real asymmetric tridiagonal observable with spectrum
// (0, -2s, 2s) and a complex-symmetric one with spectrum
// (0, -2 sqrt(1 - a^2), 2 sqrt(1 - a^2)). Both are given through their
// adjoints; the spectra are real for |s| < 1, |a| < 1.

ComplexMatrix three_level_first_adjoint(double s);
ComplexMatrix three_level_second_adjoint(double a);

inline ComplexMatrix three_level_first(double s) { return adjoint(three_level_first_adjoint(s)); }
inline ComplexMatrix three_level_second(double a) { return adjoint(three_level_second_adjoint(a)); }

/// Closed-form eigenvector columns of the first adjoint, ordered as
/// eigenvalues (0, -2s, 2s).
ComplexMatrix three_level_first_factor(double s);

/// Eigenvector columns of the second adjoint at a = 1/2, ordered as
/// eigenvalues (0, -sqrt 3, sqrt 3).
ComplexMatrix three_level_second_factor_half();

} // namespace qhcompat::fixtures
