#pragma once

#include <span>
#include <vector>

#include "monotone/convex_set.hpp"
#include "monotone/vec.hpp"

namespace monotone {

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
    LpStatus status;
    Vec point;     // optimizer when Optimal
    double value;  // objective at the optimizer
};

/// max <objective, w> subject to <a_i, w> >= b_i, solved by Seidel's
/// randomized incremental algorithm inside the bounding box |w_j| <= box.
/// Touching the box is reported as Unbounded. Deterministic: the constraint
/// shuffle is seeded from the problem size only. Intended for n <= kMaxDim
/// and up to a few hundred thousand constraints.
LpResult lp_maximize(std::span<const Halfspace> constraints, const Vec& objective,
                     double box = 1e7);

}  // namespace monotone
