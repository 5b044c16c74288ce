#pragma once

#include "qhcompat/matcore.hpp"

namespace qhcompat::lp {

/// maximize cost . z  subject to  a_eq z = b_eq,  z >= 0.
struct LinearProgram {
    RealMatrix a_eq;
    RealVector b_eq;
    RealVector cost;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
    LpStatus status = LpStatus::Infeasible;
    RealVector z;
    double objective = 0.0;
};

/// Dense two-phase tableau simplex with Bland's rule. Intended for the small
/// programs produced here (tens of variables).
LpSolution maximize(const LinearProgram& program, double pivot_tol = 1e-11);

struct MarginResult {
    bool feasible = false; // false when no x in span(basis) has sum(x) = n
    double margin = 0.0;   // max over the span of min_i x_i
    RealVector x;          // maximizer, normalized to sum(x) = n
};

/// Chebyshev-style margin: max m subject to x = B t, x_i >= m, sum(x) = n,
/// where n is the row count of `basis`.
MarginResult max_min_component(const RealMatrix& basis);

} // namespace qhcompat::lp
