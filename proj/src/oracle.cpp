#include "qhcompat/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "qhcompat/error.hpp"

namespace qhcompat::oracle {
namespace {

// Frobenius-orthonormal real basis of the n x n Hermitian matrices.
std::vector<ComplexMatrix> hermitian_coordinates(Eigen::Index n) {
    std::vector<ComplexMatrix> out;
    out.reserve(static_cast<std::size_t>(n * n));
    const double r = 1.0 / std::sqrt(2.0);
    for (Eigen::Index i = 0; i < n; ++i) {
        ComplexMatrix e = ComplexMatrix::Zero(n, n);
        e(i, i) = 1.0;
        out.push_back(std::move(e));
    }
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            ComplexMatrix sym = ComplexMatrix::Zero(n, n);
            sym(i, j) = sym(j, i) = r;
            out.push_back(std::move(sym));
            ComplexMatrix anti = ComplexMatrix::Zero(n, n);
            anti(i, j) = Complex(0.0, r);
            anti(j, i) = Complex(0.0, -r);
            out.push_back(std::move(anti));
        }
    }
    return out;
}

ComplexMatrix combine(const std::vector<ComplexMatrix>& basis, const RealVector& t) {
    ComplexMatrix h = ComplexMatrix::Zero(basis.front().rows(), basis.front().cols());
    for (std::size_t i = 0; i < basis.size(); ++i) h += t(static_cast<Eigen::Index>(i)) * basis[i];
    return hermitian_part(h);
}

// Smoothed minimum eigenvalue -1/beta log sum exp(-beta lambda_k) and its
// gradient with respect to the coefficients t.
struct SoftMin {
    double value = 0.0;
    double lambda_min = 0.0;
    RealVector gradient;
};

SoftMin soft_min(const std::vector<ComplexMatrix>& basis, const RealVector& t, double beta) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(combine(basis, t));
    const RealVector& lambda = es.eigenvalues();
    const double low = lambda(0);
    RealVector w = (-beta * (lambda.array() - low)).exp().matrix();
    const double total = w.sum();
    w /= total;

    SoftMin out;
    out.lambda_min = low;
    out.value = low - std::log(total) / beta;
    out.gradient = RealVector::Zero(t.size());
    for (Eigen::Index k = 0; k < lambda.size(); ++k) {
        if (w(k) < 1e-16) continue;
        const auto v = es.eigenvectors().col(k);
        for (Eigen::Index i = 0; i < t.size(); ++i) {
            out.gradient(i) += w(k) * v.dot(basis[static_cast<std::size_t>(i)] * v).real();
        }
    }
    return out;
}

double lambda_min(const std::vector<ComplexMatrix>& basis, const RealVector& t) {
    return Eigen::SelfAdjointEigenSolver<ComplexMatrix>(combine(basis, t), Eigen::EigenvaluesOnly)
        .eigenvalues()(0);
}

// Projected ascent on the unit sphere with a continuation in beta. Returns the
// best point seen with respect to the exact lambda_min.
RealVector ascend(const std::vector<ComplexMatrix>& basis, RealVector t, double target,
                  double& best_value) {
    t.normalize();
    RealVector best = t;
    best_value = lambda_min(basis, t);
    for (double beta : {1e1, 1e2, 1e3, 1e4, 1e5, 1e6}) {
        double step = 0.5;
        SoftMin here = soft_min(basis, t, beta);
        for (int iter = 0; iter < 200 && step > 1e-10; ++iter) {
            RealVector g = here.gradient - here.gradient.dot(t) * t;
            const double gnorm = g.norm();
            if (gnorm < 1e-14) break;
            RealVector trial = (t + step * g / gnorm).normalized();
            SoftMin there = soft_min(basis, trial, beta);
            if (there.value > here.value) {
                t = std::move(trial);
                here = std::move(there);
                step = std::min(1.0, 1.5 * step);
                if (here.lambda_min > best_value) {
                    best_value = here.lambda_min;
                    best = t;
                    if (best_value > target) return best;
                }
            } else {
                step *= 0.5;
            }
        }
    }
    return best;
}

} // namespace

ThetaSolutionSpace solution_space(std::span<const ComplexMatrix> observables,
                                  const Tolerances& tol) {
    if (observables.empty()) raise(ErrorKind::InvalidArgument, "no observables given");
    const Eigen::Index n = observables.front().rows();
    for (const auto& a : observables) {
        require_square(a, "observable");
        if (a.rows() != n) raise(ErrorKind::DimensionMismatch, "observables differ in dimension");
    }

    const auto coords = hermitian_coordinates(n);
    const Eigen::Index p = n * n;
    const Eigen::Index block = 2 * n * n;
    RealMatrix system(block * static_cast<Eigen::Index>(observables.size()), p);
    for (std::size_t j = 0; j < observables.size(); ++j) {
        const ComplexMatrix& a = observables[j];
        const ComplexMatrix a_dagger = a.adjoint();
        for (Eigen::Index q = 0; q < p; ++q) {
            const ComplexMatrix& e = coords[static_cast<std::size_t>(q)];
            const ComplexMatrix r = a_dagger * e - e * a;
            const Eigen::Map<const ComplexVector> flat(r.data(), n * n);
            const Eigen::Index base = block * static_cast<Eigen::Index>(j);
            system.block(base, q, n * n, 1) = flat.real();
            system.block(base + n * n, q, n * n, 1) = flat.imag();
        }
    }

    double scale = 0.0;
    for (const auto& a : observables) scale = std::max(scale, a.norm());
    const RealMatrix null = nullspace_real(system, tol.null_tol, scale);
    ThetaSolutionSpace space{n, {}};
    for (Eigen::Index k = 0; k < null.cols(); ++k) {
        space.basis.push_back(combine(coords, null.col(k)));
    }
    return space;
}

DefiniteSearch find_positive_definite(const ThetaSolutionSpace& space, const Tolerances& tol,
                                      std::uint64_t seed) {
    DefiniteSearch out;
    const Eigen::Index d = space.dim();
    if (d == 0) {
        out.best_min_eigenvalue = -std::numeric_limits<double>::infinity();
        return out;
    }
    if (d == 1) {
        const ComplexMatrix& b = space.basis.front();
        const RealVector lambda =
            Eigen::SelfAdjointEigenSolver<ComplexMatrix>(b, Eigen::EigenvaluesOnly).eigenvalues();
        const double plus = lambda(0);
        const double minus = -lambda(lambda.size() - 1);
        out.best_min_eigenvalue = std::max(plus, minus);
        if (plus > tol.pd_tol) out.theta = b;
        else if (minus > tol.pd_tol) out.theta = -b;
        return out;
    }

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    out.best_min_eigenvalue = -std::numeric_limits<double>::infinity();
    RealVector best_t;
    for (int start = 0; start < tol.max_starts; ++start) {
        RealVector t(d);
        for (Eigen::Index i = 0; i < d; ++i) t(i) = gauss(rng);
        double value = 0.0;
        RealVector found = ascend(space.basis, t, tol.pd_tol, value);
        if (value > out.best_min_eigenvalue) {
            out.best_min_eigenvalue = value;
            best_t = std::move(found);
        }
        if (out.best_min_eigenvalue > tol.pd_tol) break;
    }
    if (out.best_min_eigenvalue > tol.pd_tol) {
        out.theta = combine(space.basis, best_t);
    } else {
        out.search_caveat = true;
    }
    return out;
}

OracleVerdict decide_bruteforce(std::span<const ComplexMatrix> observables,
                                const Tolerances& tol) {
    if (observables.empty()) raise(ErrorKind::InvalidArgument, "no observables given");
    const Eigen::Index n = observables.front().rows();
    if (n > tol.oracle_max_n) {
        std::ostringstream os;
        os << "oracle is limited to N <= " << tol.oracle_max_n << ", got N = " << n;
        raise(ErrorKind::OracleDimensionExceeded, os.str());
    }
    const ThetaSolutionSpace space = solution_space(observables, tol);
    DefiniteSearch search = find_positive_definite(space, tol);
    OracleVerdict out;
    out.solution_dim = space.dim();
    out.best_min_eigenvalue = search.best_min_eigenvalue;
    out.search_caveat = search.search_caveat;
    out.compatible = search.theta.has_value();
    out.theta = std::move(search.theta);
    return out;
}

} // namespace qhcompat::oracle
