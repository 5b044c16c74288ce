#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "qhcompat/matcore.hpp"

namespace qhcompat::genpair {

struct GenOptions {
    std::optional<std::array<double, 4>> ansatz; // (alpha, beta, gamma, delta), n = 2 only
    double c_min = 0.2;
    double c_max = 5.0;
    double spectrum_lo = -2.0;
    double spectrum_hi = 2.0;
    double min_gap = 0.1;
    double cond_cap = 50.0;
    int max_draws = 10;
};

/// Compatible pair built from a unitary, two positive scalings, a factor
/// Omega_2 and two real spectra. `c1`, `c2` hold c (not c^2).
struct GeneratedPair {
    ComplexMatrix a1;
    ComplexMatrix a2;
    ComplexMatrix theta;
    ComplexMatrix omega1;
    ComplexMatrix omega2;
    ComplexMatrix unitary;
    ComplexMatrix mixer;
    RealVector spectrum1;
    RealVector spectrum2;
    RealVector c1;
    RealVector c2;
    std::uint64_t seed = 0;
};

/// K observables sharing the planted metric theta.
struct GeneratedFamily {
    std::vector<ComplexMatrix> observables;
    std::vector<ComplexMatrix> omegas;
    std::vector<RealVector> spectra;
    std::vector<RealVector> scalings; // c_j
    ComplexMatrix theta;
    std::uint64_t seed = 0;
};

/// Haar-distributed unitary: QR of a complex Gaussian matrix with the phases
/// of diag(R) divided out. Deterministic per (n, seed).
ComplexMatrix random_unitary(Eigen::Index n, std::uint64_t seed);

/// exp([[i alpha, i gamma + delta], [i gamma - delta, i beta]]).
ComplexMatrix ansatz_unitary_2x2(double alpha, double beta, double gamma, double delta);

/// Sorted spectrum uniform in [lo, hi] with consecutive gaps >= min_gap.
/// Throws DegenerateSpectrumRequested when the gap cannot fit.
RealVector random_spectrum(Eigen::Index n, std::mt19937_64& rng, const GenOptions& options);

/// Complex Gaussian matrix with condition number <= cond_cap (IllConditioned
/// after max_draws failures).
ComplexMatrix random_invertible(Eigen::Index n, std::mt19937_64& rng, const GenOptions& options,
                                bool real = false);

/// M = c1^{-1} U c2, Omega_1 = M Omega_2, A_j = Omega_j^{-1} diag(spectrum_j) Omega_j,
/// Theta = Omega_1^dagger c1^2 Omega_1.
GeneratedPair assemble_pair(const ComplexMatrix& unitary, const RealVector& c1,
                            const RealVector& c2, const ComplexMatrix& omega2,
                            const RealVector& spectrum1, const RealVector& spectrum2);

/// Throws InvalidArgument for n < 2, DegenerateSpectrumRequested, IllConditioned.
GeneratedPair generate(Eigen::Index n, std::uint64_t seed, const GenOptions& options = {});

GeneratedFamily generate_family(Eigen::Index n, Eigen::Index count, std::uint64_t seed,
                                const GenOptions& options = {});

/// S diag(spectrum) S^{-1} with an independent random S; real S when `real`.
/// Not tied to any metric, so pairs of these are generically incompatible.
ComplexMatrix random_observable(Eigen::Index n, std::uint64_t seed, bool real = false,
                                const GenOptions& options = {});

} // namespace qhcompat::genpair
