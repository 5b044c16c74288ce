#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "qhcompat/matcore.hpp"

namespace qhcompat::oracle {

/// Frobenius-orthonormal basis of the Hermitian solutions of
/// A_j^dagger Theta = Theta A_j for every j.
struct ThetaSolutionSpace {
    Eigen::Index n = 0;
    std::vector<ComplexMatrix> basis;

    Eigen::Index dim() const noexcept { return static_cast<Eigen::Index>(basis.size()); }
};

ThetaSolutionSpace solution_space(std::span<const ComplexMatrix> observables,
                                  const Tolerances& tol = {});

struct DefiniteSearch {
    std::optional<ComplexMatrix> theta; // unit Frobenius norm when present
    double best_min_eigenvalue = 0.0;   // lambda_min at the best unit-norm point
    bool search_caveat = false;         // "none" came from the d >= 2 search
};

/// Looks for a positive-definite element of the space. For d >= 2 the
/// concave function t -> lambda_min(sum t_i B_i) is maximized on the unit
/// sphere by smoothed multi-start ascent.
DefiniteSearch find_positive_definite(const ThetaSolutionSpace& space,
                                      const Tolerances& tol = {},
                                      std::uint64_t seed = 0x5eed);

struct OracleVerdict {
    bool compatible = false;
    std::optional<ComplexMatrix> theta;
    Eigen::Index solution_dim = 0;
    double best_min_eigenvalue = 0.0;
    bool search_caveat = false;
};

/// Throws DimensionMismatch, or OracleDimensionExceeded when N > oracle_max_n.
OracleVerdict decide_bruteforce(std::span<const ComplexMatrix> observables,
                                const Tolerances& tol = {});

} // namespace qhcompat::oracle
