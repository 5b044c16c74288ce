#include "qhcompat/simplex.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "qhcompat/error.hpp"

namespace qhcompat::lp {
namespace {

constexpr int kMaxPivots = 50000;

// Row 0 of the tableau is the objective row (reduced costs, value in the last
// column); rows 1..m are constraints. basis[i] is the basic column of row i+1.
struct Tableau {
    RealMatrix t;
    std::vector<Eigen::Index> basis;

    Eigen::Index rhs() const { return t.cols() - 1; }

    void pivot(Eigen::Index row, Eigen::Index col) {
        t.row(row) /= t(row, col);
        for (Eigen::Index r = 0; r < t.rows(); ++r) {
            if (r != row && t(r, col) != 0.0) t.row(r) -= t(r, col) * t.row(row);
        }
        basis[static_cast<std::size_t>(row - 1)] = col;
    }

    // Maximizes with Bland's rule over columns [0, allowed). Returns false when
    // the objective is unbounded.
    bool optimize(Eigen::Index allowed, double eps) {
        for (int iter = 0; iter < kMaxPivots; ++iter) {
            Eigen::Index entering = -1;
            for (Eigen::Index j = 0; j < allowed; ++j) {
                if (t(0, j) < -eps) {
                    entering = j;
                    break;
                }
            }
            if (entering < 0) return true;

            Eigen::Index leaving = -1;
            double best = std::numeric_limits<double>::infinity();
            for (Eigen::Index i = 1; i < t.rows(); ++i) {
                if (t(i, entering) <= eps) continue;
                const double ratio = t(i, rhs()) / t(i, entering);
                if (ratio < best - eps ||
                    (std::abs(ratio - best) <= eps &&
                     basis[static_cast<std::size_t>(i - 1)] <
                         basis[static_cast<std::size_t>(leaving - 1)])) {
                    best = ratio;
                    leaving = i;
                }
            }
            if (leaving < 0) return false;
            pivot(leaving, entering);
        }
        raise(ErrorKind::ConvergenceFailure, "simplex exceeded its pivot budget");
    }
};

} // namespace

LpSolution maximize(const LinearProgram& program, double pivot_tol) {
    const Eigen::Index m = program.a_eq.rows();
    const Eigen::Index nv = program.a_eq.cols();
    if (program.b_eq.size() != m || program.cost.size() != nv) {
        raise(ErrorKind::DimensionMismatch, "linear program pieces disagree in size");
    }

    Tableau tab{RealMatrix::Zero(m + 1, nv + m + 1), {}};
    tab.basis.resize(static_cast<std::size_t>(m));
    for (Eigen::Index i = 0; i < m; ++i) {
        const double sign = program.b_eq(i) < 0.0 ? -1.0 : 1.0;
        tab.t.block(i + 1, 0, 1, nv) = sign * program.a_eq.row(i);
        tab.t(i + 1, nv + i) = 1.0;
        tab.t(i + 1, tab.rhs()) = sign * program.b_eq(i);
        tab.basis[static_cast<std::size_t>(i)] = nv + i;
    }

    // Phase I: maximize -sum(artificials).
    for (Eigen::Index i = 0; i < m; ++i) tab.t(0, nv + i) = 1.0;
    for (Eigen::Index i = 0; i < m; ++i) tab.t.row(0) -= tab.t.row(i + 1);
    tab.optimize(nv + m, pivot_tol);

    const double scale = std::max(1.0, program.b_eq.cwiseAbs().maxCoeff());
    LpSolution out;
    if (tab.t(0, tab.rhs()) < -1e-9 * scale) {
        out.status = LpStatus::Infeasible;
        return out;
    }

    // Drive zero-valued artificials out of the basis where possible.
    for (Eigen::Index i = 0; i < m; ++i) {
        if (tab.basis[static_cast<std::size_t>(i)] < nv) continue;
        Eigen::Index col = -1;
        tab.t.row(i + 1).head(nv).cwiseAbs().maxCoeff(&col);
        if (std::abs(tab.t(i + 1, col)) > pivot_tol) tab.pivot(i + 1, col);
    }

    // Phase II.
    tab.t.row(0).setZero();
    tab.t.block(0, 0, 1, nv) = -program.cost.transpose();
    for (Eigen::Index i = 0; i < m; ++i) {
        const Eigen::Index b = tab.basis[static_cast<std::size_t>(i)];
        if (b < nv && program.cost(b) != 0.0) tab.t.row(0) += program.cost(b) * tab.t.row(i + 1);
    }
    if (!tab.optimize(nv, pivot_tol)) {
        out.status = LpStatus::Unbounded;
        return out;
    }

    out.status = LpStatus::Optimal;
    out.z = RealVector::Zero(nv);
    for (Eigen::Index i = 0; i < m; ++i) {
        const Eigen::Index b = tab.basis[static_cast<std::size_t>(i)];
        if (b < nv) out.z(b) = tab.t(i + 1, tab.rhs());
    }
    out.objective = program.cost.dot(out.z);
    return out;
}

MarginResult max_min_component(const RealMatrix& basis) {
    const Eigen::Index n = basis.rows();
    const Eigen::Index d = basis.cols();
    MarginResult result;
    if (d == 0 || n == 0) return result;

    // z = [t+ (d), t- (d), m+, m-, s (n)]
    const Eigen::Index nv = 2 * d + 2 + n;
    LinearProgram lp{RealMatrix::Zero(n + 1, nv), RealVector::Zero(n + 1), RealVector::Zero(nv)};
    for (Eigen::Index i = 0; i < n; ++i) {
        lp.a_eq.block(i, 0, 1, d) = basis.row(i);
        lp.a_eq.block(i, d, 1, d) = -basis.row(i);
        lp.a_eq(i, 2 * d) = -1.0;
        lp.a_eq(i, 2 * d + 1) = 1.0;
        lp.a_eq(i, 2 * d + 2 + i) = -1.0;
    }
    const RealVector column_sums = basis.colwise().sum().transpose();
    lp.a_eq.block(n, 0, 1, d) = column_sums.transpose();
    lp.a_eq.block(n, d, 1, d) = -column_sums.transpose();
    lp.b_eq(n) = static_cast<double>(n);
    lp.cost(2 * d) = 1.0;
    lp.cost(2 * d + 1) = -1.0;

    const LpSolution sol = maximize(lp);
    if (sol.status != LpStatus::Optimal) return result;

    const RealVector t = sol.z.head(d) - sol.z.segment(d, d);
    RealVector x = basis * t;
    const double total = x.sum();
    if (!(total > 0.0)) return result;
    x *= static_cast<double>(n) / total;
    result.feasible = true;
    result.margin = x.minCoeff();
    result.x = std::move(x);
    return result;
}

} // namespace qhcompat::lp
