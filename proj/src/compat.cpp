#include "qhcompat/compat.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qhcompat/error.hpp"
#include "qhcompat/simplex.hpp"

namespace qhcompat::compat {

const char* to_string(Status status) {
    switch (status) {
    case Status::Compatible: return "compatible";
    case Status::Incompatible: return "incompatible";
    case Status::Borderline: return "borderline";
    }
    return "unknown";
}

MixerMatrix mixer(const SpectralData& first, const SpectralData& second, const Tolerances& tol) {
    if (first.size() != second.size()) {
        std::ostringstream os;
        os << "observables have dimensions " << first.size() << " and " << second.size();
        raise(ErrorKind::DimensionMismatch, os.str());
    }
    ComplexMatrix m = first.omega() * inverse(second.omega(), tol.rank_tol);
    const double cond = condition_number(m);
    return MixerMatrix{std::move(m), cond};
}

ConstraintSystem assemble_constraints(const MixerMatrix& mixer) {
    const ComplexMatrix& m = mixer.m;
    const Eigen::Index n = m.rows();
    ConstraintSystem cs{RealMatrix::Zero(n * (n - 1), n), {}, m.squaredNorm() / static_cast<double>(n)};
    cs.labels.reserve(static_cast<std::size_t>(n * (n - 1)));
    Eigen::Index row = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            for (Eigen::Index k = 0; k < n; ++k) {
                const Complex coeff = std::conj(m(k, i)) * m(k, j);
                cs.c_real(row, k) = coeff.real();
                cs.c_real(row + 1, k) = coeff.imag();
            }
            cs.labels.push_back({i, j, ConstraintLabel::Part::Re});
            cs.labels.push_back({i, j, ConstraintLabel::Part::Im});
            row += 2;
        }
    }
    return cs;
}

ConstraintSystem stack(std::span<const ConstraintSystem> systems) {
    if (systems.empty()) return {};
    const Eigen::Index cols = systems.front().c_real.cols();
    Eigen::Index rows = 0;
    for (const auto& s : systems) {
        if (s.c_real.cols() != cols) {
            raise(ErrorKind::DimensionMismatch, "constraint systems differ in unknown count");
        }
        rows += s.c_real.rows();
    }
    ConstraintSystem out{RealMatrix(rows, cols), {}};
    Eigen::Index at = 0;
    for (const auto& s : systems) {
        out.c_real.middleRows(at, s.c_real.rows()) = s.c_real;
        out.labels.insert(out.labels.end(), s.labels.begin(), s.labels.end());
        at += s.c_real.rows();
        out.scale = std::max(out.scale, s.scale);
    }
    return out;
}

PositiveSolve solve_positive(const ConstraintSystem& cs, const Tolerances& tol) {
    PositiveSolve out;
    out.singular_values = singular_values(cs.c_real);
    const RealMatrix basis = nullspace_real(cs.c_real, tol.null_tol, cs.scale);
    out.nullspace_dim = basis.cols();
    if (out.nullspace_dim == 0) return out;

    const lp::MarginResult best = lp::max_min_component(basis);
    if (!best.feasible) return out;
    out.margin = best.margin;
    out.borderline = std::abs(best.margin) <= tol.margin_band;
    if (best.margin > tol.pos_margin) out.x = ScalingVector(best.x);
    return out;
}

ScalingVector second_scaling(const MixerMatrix& mixer, const ScalingVector& x) {
    if (mixer.m.rows() != x.size()) {
        raise(ErrorKind::DimensionMismatch, "scaling length differs from mixer dimension");
    }
    const RealMatrix weights = mixer.m.cwiseAbs2();
    return ScalingVector(weights.transpose() * x.values());
}

ComplexMatrix scaled_mixer(const MixerMatrix& mixer, const ScalingVector& x,
                           const ScalingVector& y) {
    const RealVector left = x.values().cwiseSqrt();
    const RealVector right = y.values().cwiseSqrt().cwiseInverse();
    return left.asDiagonal() * mixer.m * right.asDiagonal();
}

ComplexScalingSpace complex_scaling_space(const MixerMatrix& mixer, const Tolerances& tol) {
    const ComplexMatrix& m = mixer.m;
    const Eigen::Index n = m.rows();
    ComplexMatrix c(n * (n - 1) / 2, n);
    Eigen::Index row = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j, ++row) {
            for (Eigen::Index k = 0; k < n; ++k) c(row, k) = std::conj(m(k, i)) * m(k, j);
        }
    }
    ComplexScalingSpace out;
    out.x_basis = nullspace_complex(c, tol.null_tol, m.squaredNorm() / static_cast<double>(n));
    out.y_basis = m.cwiseAbs2().transpose().cast<Complex>() * out.x_basis;
    if (c.size() > 0) out.singular_values = Eigen::JacobiSVD<ComplexMatrix>(c).singularValues();
    return out;
}

CompatibilityVerdict decide(const ComplexMatrix& a1, const ComplexMatrix& a2,
                            const Tolerances& tol) {
    const ComplexMatrix pair[] = {a1, a2};
    return decide_multi(pair, tol);
}

CompatibilityVerdict decide_multi(std::span<const ComplexMatrix> observables,
                                  const Tolerances& tol) {
    if (observables.size() < 2) {
        raise(ErrorKind::InvalidArgument, "compatibility needs at least two observables");
    }
    for (const auto& a : observables) {
        require_square(a, "observable");
        if (a.rows() != observables.front().rows()) {
            raise(ErrorKind::DimensionMismatch, "observables must share one dimension");
        }
    }

    CompatibilityVerdict verdict;
    for (const auto& a : observables) verdict.spectra.push_back(dyson::analyze(a, tol));

    std::vector<ConstraintSystem> systems;
    for (std::size_t j = 1; j < verdict.spectra.size(); ++j) {
        verdict.mixers.push_back(mixer(verdict.spectra.front(), verdict.spectra[j], tol));
        systems.push_back(assemble_constraints(verdict.mixers.back()));
    }
    const ConstraintSystem cs = stack(systems);
    const PositiveSolve solve = solve_positive(cs, tol);

    verdict.certificate = Certificate{solve.nullspace_dim, solve.margin, cs.c_real.rows(),
                                      solve.singular_values};
    if (!solve.x) {
        verdict.status = solve.borderline ? Status::Borderline : Status::Incompatible;
        return verdict;
    }

    const ScalingVector& x = *solve.x;
    const auto reference = dyson::metric(verdict.spectra.front(), x, tol);
    Witness w{x, {}, reference.theta, 0.0, 0.0, {}, 0.0};
    const double theta_norm = reference.theta.norm();
    for (std::size_t j = 0; j < verdict.mixers.size(); ++j) {
        const MixerMatrix& mj = verdict.mixers[j];
        ScalingVector y = second_scaling(mj, x);
        const auto other = dyson::metric(verdict.spectra[j + 1], y, tol);
        w.metric_mismatch =
            std::max(w.metric_mismatch, (reference.theta - other.theta).norm() / theta_norm);
        w.unitarity_residual = std::max(
            w.unitarity_residual, is_unitary(scaled_mixer(mj, x, y), tol.witness_tol).residual);
        w.y.push_back(std::move(y));
    }
    for (const auto& a : observables) {
        w.quasi_hermiticity.push_back(dyson::quasi_hermiticity_residual(a, w.theta));
    }
    w.theta_min_eigenvalue = hermitian_eigenvalues(w.theta, tol.herm_tol)(0);

    bool sound = w.metric_mismatch <= tol.witness_tol && w.unitarity_residual <= tol.witness_tol &&
                 w.theta_min_eigenvalue > 0.0;
    for (double r : w.quasi_hermiticity) sound = sound && r <= tol.witness_tol;

    verdict.status = (sound && !solve.borderline) ? Status::Compatible : Status::Borderline;
    verdict.witness = std::move(w);
    return verdict;
}

} // namespace qhcompat::compat
