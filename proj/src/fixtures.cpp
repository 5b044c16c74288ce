#include "qhcompat/fixtures.hpp"

#include <cmath>

namespace qhcompat::fixtures {

ComplexMatrix three_level_first_adjoint(double s) {
    const double r = std::sqrt(2.0 - 2.0 * s * s);
    ComplexMatrix m(3, 3);
    m << -2.0, r, 0.0,
         -r, 0.0, r,
         0.0, -r, 2.0;
    return m;
}

ComplexMatrix three_level_second_adjoint(double a) {
    const Complex i(0.0, 1.0);
    const double r = std::sqrt(2.0);
    ComplexMatrix m(3, 3);
    m << -2.0 * i * a, r, 0.0,
         r, 0.0, r,
         0.0, r, 2.0 * i * a;
    return m;
}

ComplexMatrix three_level_first_factor(double s) {
    const double r = std::sqrt(2.0 - 2.0 * s * s);
    ComplexMatrix m(3, 3);
    m << -2.0 + 2.0 * s * s, 2.0 * s + 1.0 + s * s, -2.0 * s + 1.0 + s * s,
         -2.0 * r, r * (s + 1.0), -r * (s - 1.0),
         -2.0 + 2.0 * s * s, 1.0 - s * s, 1.0 - s * s;
    return m;
}

ComplexMatrix three_level_second_factor_half() {
    const Complex i(0.0, 1.0);
    const double r2 = std::sqrt(2.0);
    const double r3 = std::sqrt(3.0);
    ComplexMatrix m(3, 3);
    m << 1.5, 3.0 / 8.0 + 3.0 / 8.0 * i * r3, 3.0 / 8.0 - 3.0 / 8.0 * i * r3,
         0.75 * i * r2, -3.0 / 8.0 * r2 * r3 - 3.0 / 8.0 * i * r2, 3.0 / 8.0 * r2 * r3 - 3.0 / 8.0 * i * r2,
         -1.5, 0.75, 0.75;
    return m;
}

} // namespace qhcompat::fixtures
