#include "monotone/enlargements.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "monotone/errors.hpp"
#include "monotone/rng.hpp"

namespace monotone {
namespace {

constexpr double kMembershipSlack = 1e-9;
constexpr double kPairDropTol = 1e-12;

double pair_weight(EnlargementKind kind, double dist) {
    return kind == EnlargementKind::NormWeighted ? dist : 1.0;
}

}  // namespace

std::pair<bool, double> enlargement_membership(const GraphSample& s, const EnlargementQuery& q,
                                               const Vec& xstar) {
    if (s.dim() != q.x.dim() || s.dim() != xstar.dim())
        throw InvalidInputError("enlargement_membership: dimension mismatch");
    if (!(q.eps >= 0.0)) throw InvalidInputError("enlargement_membership: eps must be >= 0");
    if (s.points().empty()) throw InvalidInputError("enlargement_membership: empty sample");

    double worst = std::numeric_limits<double>::infinity();
    for (const GraphPoint& p : s.points()) {
        const Vec d = q.x - p.y;
        const double term = dot(xstar - p.ystar, d) + q.eps * pair_weight(q.kind, norm(d));
        worst = std::min(worst, term);
    }
    return {worst >= -kMembershipSlack, worst};
}

std::pair<bool, double> enlargement_membership(const OperatorSpec& t, const EnlargementQuery& q,
                                               const Vec& xstar) {
    return enlargement_membership(sample_graph(t, q.radius, q.density), q, xstar);
}

ConvexSet enlargement_polyhedron(const GraphSample& s, const EnlargementQuery& q) {
    if (s.dim() != q.x.dim()) throw InvalidInputError("enlargement_polyhedron: dimension mismatch");
    if (!(q.eps >= 0.0)) throw InvalidInputError("enlargement_polyhedron: eps must be >= 0");
    if (s.points().empty()) throw InvalidInputError("enlargement_polyhedron: empty sample");

    std::vector<Halfspace> rows;
    rows.reserve(s.points().size());
    for (const GraphPoint& p : s.points()) {
        const Vec a = q.x - p.y;
        const double na = norm(a);
        if (na < kPairDropTol) continue;  // vacuous for eps >= 0
        rows.push_back({a, dot(p.ystar, a) - q.eps * pair_weight(q.kind, na)});
    }
    return ConvexSet::halfspaces(std::move(rows), s.dim());
}

ConvexSet image_plus_ball(const OperatorSpec& t, const Vec& x, double eps) {
    if (!(eps >= 0.0)) throw InvalidInputError("image_plus_ball: eps must be >= 0");
    return minkowski_ball(evaluate(t, x), eps);
}

double full_enlargement_delta(const OperatorSpec& t, const Vec& x, double eps) {
    if (!(eps > 0.0)) throw InvalidInputError("full_enlargement_delta: eps must be > 0");
    if (domain_distance(t, x) > 0.0)
        throw InvalidInputError("full_enlargement_delta: x must lie in the domain");

    const double delta = eps;
    const ConvexSet image = evaluate(t, x);
    const std::vector<Vec> anchors = sample_points(image, 4.0);

    const double radius = 2.0 * (norm(x) + 1.0) * 4.0;
    const GraphSample s = sample_graph(t, radius, radius / 64.0);
    EnlargementQuery q{EnlargementKind::NormWeighted, eps, x, radius, radius / 64.0};

    Rng rng = Rng::derive(0xF011u, "full_enlargement_delta");
    for (int k = 0; k < 100; ++k) {
        const Vec anchor = anchors[static_cast<std::size_t>(k) % anchors.size()];
        // Mix interior and boundary offsets; include the exact-radius case.
        const double scale = (k % 5 == 0) ? delta : delta * rng.uniform01();
        const Vec probe = anchor + scale * rng.unit_vector(x.dim());
        const auto [member, worst] = enlargement_membership(s, q, probe);
        if (!member)
            throw InternalError("full_enlargement_delta: sampled inclusion violated (worst " +
                                std::to_string(worst) + "); sampling bug, not a math failure");
    }
    return delta;
}

std::vector<std::pair<Vec, bool>> domain_probe(const OperatorSpec& t, EnlargementKind kind,
                                               double eps, const std::vector<Vec>& grid) {
    if (!(eps >= 0.0)) throw InvalidInputError("domain_probe: eps must be >= 0");
    if (grid.empty()) throw InvalidInputError("domain_probe: empty grid");

    double max_norm = 0.0;
    for (const Vec& g : grid) max_norm = std::max(max_norm, norm(g));
    const double radius = 10.0 * (1.0 + max_norm);
    const int per_axis = t.dim() == 1 ? 2048 : t.dim() == 2 ? 480 : t.dim() == 3 ? 48 : 14;
    const double density = radius / per_axis;
    const GraphSample s = sample_graph(t, radius, density);

    // Escape box: true members at domain points stay near the image set,
    // while the one-sided constraints of outside points drift with the
    // sampled ray multipliers (~radius); the box separates the two regimes.
    const double box_half = radius / 2.0;
    const int n = t.dim();

    std::vector<std::pair<Vec, bool>> out;
    out.reserve(grid.size());
    for (const Vec& x : grid) {
        EnlargementQuery q{kind, eps, x, radius, density};
        ConvexSet poly = enlargement_polyhedron(s, q);
        std::vector<Halfspace> rows = poly.get<HalfspaceIntersection>().constraints;
        for (int i = 0; i < n; ++i) {
            rows.push_back({Vec::axis(n, i, 1.0), -box_half});
            rows.push_back({Vec::axis(n, i, -1.0), -box_half});
        }
        const bool nonempty = !set_is_empty(ConvexSet::halfspaces(std::move(rows), n));
        out.emplace_back(x, nonempty);
    }
    return out;
}

}  // namespace monotone
