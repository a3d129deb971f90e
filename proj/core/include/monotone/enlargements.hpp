#pragma once

#include <utility>
#include <vector>

#include "monotone/convex_set.hpp"
#include "monotone/operators.hpp"

namespace monotone {

/// The two enlargement families: norm-weighted slack eps*||x - y|| per graph
/// pair, or the constant slack eps.
enum class EnlargementKind { NormWeighted, Constant };

struct EnlargementQuery {
    EnlargementKind kind = EnlargementKind::NormWeighted;
    double eps = 0.0;     // >= 0
    Vec x;                // base point of the enlarged image
    double radius = 8.0;  // sample truncation radius (operator overload)
    double density = 0.25;
};

/// worst = min over pairs of <x* - y*, x - y> + eps * w, where w is
/// ||x - y|| (norm-weighted) or 1 (constant); membership iff worst >= -1e-9.
/// Exact for exhaustive samples; otherwise a necessary condition at the
/// sample's truncation radius.
std::pair<bool, double> enlargement_membership(const GraphSample& s, const EnlargementQuery& q,
                                               const Vec& xstar);

/// Same, sampling the operator at (q.radius, q.density) first.
std::pair<bool, double> enlargement_membership(const OperatorSpec& t, const EnlargementQuery& q,
                                               const Vec& xstar);

/// The enlarged image at q.x as a halfspace intersection in dual space: one
/// row <x - y, x*> >= <y*, x - y> - eps * w per sample pair, rows with
/// y = x dropped (vacuous for both kinds when eps >= 0).
ConvexSet enlargement_polyhedron(const GraphSample& s, const EnlargementQuery& q);

/// T(x) + eps * (unit ball); the closed form of the norm-weighted enlarged
/// image for this catalog. Empty outside the domain.
ConvexSet image_plus_ball(const OperatorSpec& t, const Vec& x, double eps);

/// Returns delta = eps and verifies, on 100 deterministic samples of
/// T(x) + delta * B, that each passes norm-weighted membership (the full
/// enlargement property). A failure is an internal inconsistency: the
/// inclusion is two-line algebra and holds exactly.
double full_enlargement_delta(const OperatorSpec& t, const Vec& x, double eps);

/// For each grid point x: is the sampled enlarged image nonempty? Emptiness
/// is decided on the polyhedron intersected with the escape box |x*| <= R/2:
/// a truncated sample of an unbounded graph yields one-sided constraints
/// that drift to infinity outside the domain, and the drift past the box is
/// exactly the finite-sample emptiness certificate.
std::vector<std::pair<Vec, bool>> domain_probe(const OperatorSpec& t, EnlargementKind kind,
                                               double eps, const std::vector<Vec>& grid);

}  // namespace monotone
