#pragma once

#include "hypermatch/types.hpp"

#include <vector>

namespace hypermatch {

/// maximize c.x  subject to  A x <= b,  x >= 0  (exact rationals).
struct LinearProgram {
    std::vector<std::vector<Rational>> a;
    std::vector<Rational> b;
    std::vector<Rational> c;
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LpSolution {
    LpStatus status = LpStatus::infeasible;
    Rational value;
    std::vector<Rational> x;
    int pivots = 0;
};

/// Dense two-phase tableau simplex with Bland's rule, so it always terminates.
/// Phase one is skipped when b >= 0 (the slack basis is feasible).
LpSolution solve_lp(const LinearProgram& lp);

}  // namespace hypermatch
