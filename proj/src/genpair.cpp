#include "qhcompat/genpair.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/QR>

#include "qhcompat/error.hpp"

namespace qhcompat::genpair {
namespace {

ComplexMatrix gaussian(Eigen::Index n, std::mt19937_64& rng, bool real) {
    std::normal_distribution<double> gauss(0.0, real ? 1.0 : std::sqrt(0.5));
    ComplexMatrix z(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index i = 0; i < n; ++i) {
            const double re = gauss(rng);
            const double im = real ? 0.0 : gauss(rng);
            z(i, j) = Complex(re, im);
        }
    }
    return z;
}

RealVector random_scaling(Eigen::Index n, std::mt19937_64& rng, const GenOptions& options) {
    if (!(options.c_min > 0.0) || options.c_max < options.c_min) {
        raise(ErrorKind::InvalidArgument, "scaling range must satisfy 0 < c_min <= c_max");
    }
    std::uniform_real_distribution<double> uniform(options.c_min, options.c_max);
    RealVector c(n);
    for (Eigen::Index i = 0; i < n; ++i) c(i) = uniform(rng);
    return c;
}

ComplexMatrix similarity(const ComplexMatrix& omega, const RealVector& spectrum) {
    return inverse(omega) * spectrum.cast<Complex>().asDiagonal() * omega;
}

} // namespace

ComplexMatrix random_unitary(Eigen::Index n, std::uint64_t seed) {
    if (n < 1) raise(ErrorKind::InvalidArgument, "unitary dimension must be >= 1");
    std::mt19937_64 rng(seed);
    const ComplexMatrix z = gaussian(n, rng, false);
    Eigen::HouseholderQR<ComplexMatrix> qr(z);
    const ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(n, n);
    ComplexVector phases(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const Complex r = qr.matrixQR()(i, i);
        phases(i) = std::abs(r) > 0.0 ? r / std::abs(r) : Complex(1.0);
    }
    return q * phases.asDiagonal();
}

ComplexMatrix ansatz_unitary_2x2(double alpha, double beta, double gamma, double delta) {
    const Complex i(0.0, 1.0);
    ComplexMatrix k(2, 2);
    k << i * alpha, i * gamma + delta, i * gamma - delta, i * beta;
    return expm_antihermitian(k);
}

RealVector random_spectrum(Eigen::Index n, std::mt19937_64& rng, const GenOptions& options) {
    const double room = (options.spectrum_hi - options.spectrum_lo) -
                        static_cast<double>(n - 1) * options.min_gap;
    if (!(options.min_gap > 0.0) || room < 0.0) {
        std::ostringstream os;
        os << "cannot place " << n << " eigenvalues in [" << options.spectrum_lo << ", "
           << options.spectrum_hi << "] with gap " << options.min_gap;
        raise(ErrorKind::DegenerateSpectrumRequested, os.str());
    }
    std::uniform_real_distribution<double> uniform(0.0, room);
    RealVector s(n);
    for (Eigen::Index i = 0; i < n; ++i) s(i) = uniform(rng);
    std::sort(s.begin(), s.end());
    for (Eigen::Index i = 0; i < n; ++i) {
        s(i) += options.spectrum_lo + static_cast<double>(i) * options.min_gap;
    }
    return s;
}

ComplexMatrix random_invertible(Eigen::Index n, std::mt19937_64& rng, const GenOptions& options,
                                bool real) {
    double worst = 0.0;
    for (int draw = 0; draw < options.max_draws; ++draw) {
        ComplexMatrix z = gaussian(n, rng, real);
        const double cond = condition_number(z);
        if (cond <= options.cond_cap) return z;
        worst = std::max(worst, cond);
    }
    std::ostringstream os;
    os << "no draw met the condition cap " << options.cond_cap << " after " << options.max_draws
       << " attempts (last condition " << worst << ")";
    raise(ErrorKind::IllConditioned, os.str());
}

GeneratedPair assemble_pair(const ComplexMatrix& unitary, const RealVector& c1,
                            const RealVector& c2, const ComplexMatrix& omega2,
                            const RealVector& spectrum1, const RealVector& spectrum2) {
    const Eigen::Index n = unitary.rows();
    require_square(unitary, "unitary");
    require_square(omega2, "Omega_2");
    if (c1.size() != n || c2.size() != n || omega2.rows() != n || spectrum1.size() != n ||
        spectrum2.size() != n) {
        raise(ErrorKind::DimensionMismatch, "pair ingredients differ in dimension");
    }
    GeneratedPair out;
    out.unitary = unitary;
    out.c1 = c1;
    out.c2 = c2;
    out.spectrum1 = spectrum1;
    out.spectrum2 = spectrum2;
    out.mixer = c1.cwiseInverse().asDiagonal() * unitary * c2.asDiagonal();
    out.omega2 = omega2;
    out.omega1 = out.mixer * omega2;
    out.a1 = similarity(out.omega1, spectrum1);
    out.a2 = similarity(out.omega2, spectrum2);
    out.theta = hermitian_part(out.omega1.adjoint() * c1.cwiseAbs2().asDiagonal() * out.omega1);
    return out;
}

GeneratedPair generate(Eigen::Index n, std::uint64_t seed, const GenOptions& options) {
    if (n < 2) raise(ErrorKind::InvalidArgument, "pair generation needs n >= 2");
    std::mt19937_64 rng(seed);
    ComplexMatrix u;
    if (options.ansatz) {
        if (n != 2) raise(ErrorKind::InvalidArgument, "the unitary ansatz is defined for n = 2");
        const auto& p = *options.ansatz;
        u = ansatz_unitary_2x2(p[0], p[1], p[2], p[3]);
    } else {
        u = random_unitary(n, rng());
    }
    const RealVector c1 = random_scaling(n, rng, options);
    const RealVector c2 = random_scaling(n, rng, options);
    const ComplexMatrix omega2 = random_invertible(n, rng, options);
    const RealVector s1 = random_spectrum(n, rng, options);
    const RealVector s2 = random_spectrum(n, rng, options);
    GeneratedPair out = assemble_pair(u, c1, c2, omega2, s1, s2);
    out.seed = seed;
    return out;
}

GeneratedFamily generate_family(Eigen::Index n, Eigen::Index count, std::uint64_t seed,
                                const GenOptions& options) {
    if (n < 2) raise(ErrorKind::InvalidArgument, "generation needs n >= 2");
    if (count < 1) raise(ErrorKind::InvalidArgument, "family needs at least one observable");
    std::mt19937_64 rng(seed);
    GeneratedFamily out;
    out.seed = seed;
    const ComplexMatrix omega1 = random_invertible(n, rng, options);
    const RealVector c1 = random_scaling(n, rng, options);
    out.theta = hermitian_part(omega1.adjoint() * c1.cwiseAbs2().asDiagonal() * omega1);
    for (Eigen::Index j = 0; j < count; ++j) {
        ComplexMatrix omega = omega1;
        RealVector c = c1;
        if (j > 0) {
            const ComplexMatrix u = random_unitary(n, rng());
            c = random_scaling(n, rng, options);
            omega = c.cwiseInverse().asDiagonal() * u * c1.asDiagonal() * omega1;
        }
        RealVector spectrum = random_spectrum(n, rng, options);
        out.observables.push_back(similarity(omega, spectrum));
        out.omegas.push_back(std::move(omega));
        out.spectra.push_back(std::move(spectrum));
        out.scalings.push_back(std::move(c));
    }
    return out;
}

ComplexMatrix random_observable(Eigen::Index n, std::uint64_t seed, bool real,
                                const GenOptions& options) {
    if (n < 1) raise(ErrorKind::InvalidArgument, "dimension must be >= 1");
    std::mt19937_64 rng(seed);
    const ComplexMatrix s = random_invertible(n, rng, options, real);
    const RealVector spectrum = random_spectrum(n, rng, options);
    return s * spectrum.cast<Complex>().asDiagonal() * inverse(s);
}

} // namespace qhcompat::genpair
