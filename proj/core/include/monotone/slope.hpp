#pragma once

#include <utility>
#include <vector>

#include "monotone/extended_real.hpp"
#include "monotone/operators.hpp"
#include "monotone/verdict.hpp"

namespace monotone {

/// Result of a slope computation. `value` is the clamped supremum
/// 0 v sup <x* - y*, y - x> / ||x - y|| over the pairs actually seen;
/// over a sample of an infinite graph it is a certified lower bound.
struct SlopeResult {
    ExtReal value;
    double truncation_radius = 0.0;
    double density = 0.0;
    bool is_lower_bound = false;
    bool converged = true;
    bool degenerate = false;  // every pair coincides with the query point
};

/// Slope of (x, x*) against an explicit sample; exact for finite graphs.
/// Pairs with ||y - x|| < 1e-12 are excluded.
SlopeResult slope_exact(const GraphSample& s, const Vec& x, const Vec& xstar);

/// Slope of (x, x*) against a catalog operator, by refining deterministic
/// samples (resolvent lattice + doubling coarse lattice for rays + polar
/// refinement near x) until successive values move less than `tol` or the
/// value crosses the 1e6 divergence threshold (then +inf). The result is a
/// nondecreasing-under-refinement lower bound of the true slope.
SlopeResult slope_estimate(const OperatorSpec& t, const Vec& x, const Vec& xstar, double tol);

/// d(x*, T(x)) = distance from x* to the image set; +inf outside the domain.
ExtReal image_distance(const OperatorSpec& t, const Vec& x, const Vec& xstar);

/// Checks slope == image distance on every query (the regularity property,
/// automatic at this scale), plus the unconditional one-sided bound
/// slope <= distance + 1e-9.
Verdict regularity_gap(const OperatorSpec& t, const std::vector<std::pair<Vec, Vec>>& queries,
                       double tol);

/// Generalized slope against the norm-weighted enlargement family: the
/// delta-scanned supremum of <x* - y*, y - x>/||x - y|| - eps - delta over
/// realizations y* = z* + u*, z* in T(y), ||u*|| <= delta.
SlopeResult slope_enlarged(const OperatorSpec& t, double eps, const Vec& x, const Vec& xstar,
                           double tol);

}  // namespace monotone
