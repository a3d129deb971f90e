#include "monotone/convex_set.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>

#include "monotone/errors.hpp"
#include "monotone/lp.hpp"
#include "monotone/rng.hpp"

namespace monotone {
namespace {

void require_dim(int a, int b, const char* where) {
    if (a != b) throw InvalidInputError(std::string(where) + ": dimension mismatch");
}

// --- projection onto a halfspace intersection (Dykstra's cyclic scheme) ----

constexpr int kDykstraMaxSweeps = 100000;
constexpr double kDykstraTol = 1e-12;

struct NormalizedRow {
    Vec a;  // unit normal
    double b;
};

std::vector<NormalizedRow> normalize_rows(const HalfspaceIntersection& h) {
    std::vector<NormalizedRow> rows;
    rows.reserve(h.constraints.size());
    for (const Halfspace& c : h.constraints) {
        const double nrm = norm(c.a);
        if (nrm <= 1e-13) {
            if (c.b > 1e-12) throw InvalidInputError("halfspaces: 0 >= positive constant");
            continue;  // vacuous row
        }
        rows.push_back({(1.0 / nrm) * c.a, c.b / nrm});
    }
    return rows;
}

double worst_violation(const std::vector<NormalizedRow>& rows, const Vec& x) {
    double worst = 0.0;
    for (const NormalizedRow& r : rows) worst = std::max(worst, r.b - dot(r.a, x));
    return worst;
}

Vec dykstra_project(const std::vector<NormalizedRow>& rows, const Vec& p) {
    Vec x = p;
    std::vector<Vec> incr(rows.size(), Vec::zero(p.dim()));
    const double scale = 1.0 + norm(p);
    for (int sweep = 0; sweep < kDykstraMaxSweeps; ++sweep) {
        Vec before = x;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            Vec y = x + incr[i];
            const double margin = dot(rows[i].a, y) - rows[i].b;
            x = margin >= 0.0 ? y : y + (-margin) * rows[i].a;
            incr[i] = y - x;
        }
        if (distance(before, x) <= kDykstraTol * scale &&
            worst_violation(rows, x) <= 1e-10 * scale)
            return x;
    }
    throw NumericalError("dykstra_project: not converged", distance(p, x));
}

// --- projection onto a polytope (barycentric QP) ---------------------------
//
// min 0.5 ||V lambda - p||^2 over the standard simplex, by FISTA with exact
// simplex projections and a Frank-Wolfe duality gap as stopping certificate.

std::vector<double> project_simplex(std::vector<double> v) {
    std::vector<double> u = v;
    std::sort(u.begin(), u.end(), std::greater<>());
    double cum = 0.0, tau = 0.0;
    int rho = 0;
    for (std::size_t j = 0; j < u.size(); ++j) {
        cum += u[j];
        const double t = (cum - 1.0) / static_cast<double>(j + 1);
        if (u[j] - t > 0.0) {
            rho = static_cast<int>(j + 1);
            tau = t;
        }
    }
    (void)rho;
    for (double& x : v) x = std::max(0.0, x - tau);
    return v;
}

Vec polytope_combine(const std::vector<Vec>& verts, const std::vector<double>& lambda) {
    Vec w = Vec::zero(verts.front().dim());
    for (std::size_t i = 0; i < verts.size(); ++i) w += lambda[i] * verts[i];
    return w;
}

Vec polytope_project(const std::vector<Vec>& verts, const Vec& p) {
    const std::size_t m = verts.size();
    if (m == 1) return verts.front();
    const int n = p.dim();

    // Lipschitz constant of the gradient: largest eigenvalue of V^T V,
    // via power iteration on the (n x n) Gram of V V^T.
    double lip = 0.0;
    {
        Vec v = Vec::zero(n);
        v[0] = 1.0;
        for (int it = 0; it < 60; ++it) {
            Vec w = Vec::zero(n);
            for (const Vec& vert : verts) w += dot(vert, v) * vert;
            const double nw = norm(w);
            if (nw <= 1e-300) break;
            lip = nw;
            v = (1.0 / nw) * w;
        }
        lip = std::max(lip * 1.01, 1e-12);
    }

    std::vector<double> lambda(m, 1.0 / static_cast<double>(m));
    std::vector<double> mom = lambda;
    double t_mom = 1.0;
    const double scale = 1.0 + norm(p);
    Vec best = polytope_combine(verts, lambda);
    double best_ub = distance(best, p);

    for (int it = 0; it < 100000; ++it) {
        // gradient step from the momentum point
        Vec w = polytope_combine(verts, mom);
        Vec resid = w - p;
        std::vector<double> g(m);
        for (std::size_t i = 0; i < m; ++i) g[i] = dot(verts[i], resid);

        std::vector<double> next(m);
        for (std::size_t i = 0; i < m; ++i) next[i] = mom[i] - g[i] / lip;
        next = project_simplex(std::move(next));

        const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t_mom * t_mom));
        for (std::size_t i = 0; i < m; ++i)
            mom[i] = next[i] + (t_mom - 1.0) / t_next * (next[i] - lambda[i]);
        lambda = std::move(next);
        t_mom = t_next;

        if (it % 8 == 0) {
            Vec cur = polytope_combine(verts, lambda);
            Vec r = cur - p;
            const double ub = norm(r);
            if (ub < best_ub) {
                best_ub = ub;
                best = cur;
            }
            // Frank-Wolfe gap: <grad, lambda - e_min> bounds f - f*.
            double gmin = std::numeric_limits<double>::infinity(), glam = 0.0;
            for (std::size_t i = 0; i < m; ++i) {
                const double gi = dot(verts[i], r);
                gmin = std::min(gmin, gi);
                glam += gi * lambda[i];
            }
            const double gap = std::max(0.0, glam - gmin);
            const double lb2 = std::max(0.0, ub * ub - 2.0 * gap);
            if (ub - std::sqrt(lb2) <= 1e-11 * scale) return cur;
            if (ub <= 1e-12 * scale) return cur;
        }
    }
    throw NumericalError("polytope_project: not converged", best_ub);
}

// --- per-coordinate interval algebra (Box / OrthantCone) -------------------

struct Interval {
    double lo, hi;  // may be +/- inf
};

Interval coord_interval(const BoxSet& b, int i) { return {b.lo[i], b.hi[i]}; }

Interval coord_interval(const OrthantCone& c, int i) {
    const double a = c.apex[i];
    constexpr double inf = std::numeric_limits<double>::infinity();
    switch (c.signs[static_cast<std::size_t>(i)]) {
        case SignTag::Neg: return {-inf, a};
        case SignTag::Pos: return {a, inf};
        case SignTag::Zero: default: return {a, a};
    }
}

ConvexSet intervals_to_halfspaces(const std::vector<Interval>& iv) {
    const int n = static_cast<int>(iv.size());
    std::vector<Halfspace> rows;
    for (int i = 0; i < n; ++i) {
        if (std::isfinite(iv[static_cast<std::size_t>(i)].lo))
            rows.push_back({Vec::axis(n, i, 1.0), iv[static_cast<std::size_t>(i)].lo});
        if (std::isfinite(iv[static_cast<std::size_t>(i)].hi))
            rows.push_back({Vec::axis(n, i, -1.0), -iv[static_cast<std::size_t>(i)].hi});
    }
    return ConvexSet::halfspaces(std::move(rows), n);
}

// --- Fourier-Motzkin feasibility -------------------------------------------

constexpr int kFmMaxDim = 4;
constexpr int kFmBudget = 64;
constexpr double kFmTol = 1e-9;

struct FmRow {
    std::array<double, kMaxDim> a;
    double b;
};

void fm_normalize(FmRow& r, int n) {
    double nrm = 0.0;
    for (int j = 0; j < n; ++j) nrm += r.a[static_cast<std::size_t>(j)] * r.a[static_cast<std::size_t>(j)];
    nrm = std::sqrt(nrm);
    if (nrm > 1e-13) {
        for (int j = 0; j < n; ++j) r.a[static_cast<std::size_t>(j)] /= nrm;
        r.b /= nrm;
    }
}

// Deduplicate rows whose normals agree to 1e-12, keeping the strongest offset.
void fm_dedup(std::vector<FmRow>& rows, int n) {
    auto key = [n](const FmRow& r) {
        std::array<std::int64_t, kMaxDim> k{};
        for (int j = 0; j < n; ++j)
            k[static_cast<std::size_t>(j)] =
                llround(r.a[static_cast<std::size_t>(j)] * 1e12);
        return k;
    };
    std::stable_sort(rows.begin(), rows.end(), [&](const FmRow& x, const FmRow& y) {
        const auto kx = key(x), ky = key(y);
        if (kx != ky) return kx < ky;
        return x.b > y.b;
    });
    rows.erase(std::unique(rows.begin(), rows.end(),
                           [&](const FmRow& x, const FmRow& y) { return key(x) == key(y); }),
               rows.end());
}

// Exact feasibility of { w : <a_i, w> >= b_i } for n <= 4.
bool fm_feasible(std::vector<FmRow> rows, int n) {
    if (n > kFmMaxDim)
        throw ResourceError("set_is_empty: Fourier-Motzkin limited to n <= 4");
    for (FmRow& r : rows) fm_normalize(r, n);
    fm_dedup(rows, n);

    std::vector<int> alive(static_cast<std::size_t>(n));
    std::iota(alive.begin(), alive.end(), 0);

    while (!alive.empty()) {
        // Pick the variable with the smallest pos*neg product.
        int best_var = alive[0];
        std::size_t best_cost = SIZE_MAX;
        for (int v : alive) {
            std::size_t pos = 0, neg = 0;
            for (const FmRow& r : rows) {
                const double av = r.a[static_cast<std::size_t>(v)];
                if (av > 1e-12) ++pos;
                else if (av < -1e-12) ++neg;
            }
            if (pos * neg < best_cost) {
                best_cost = pos * neg;
                best_var = v;
            }
        }
        const int v = best_var;
        alive.erase(std::find(alive.begin(), alive.end(), v));

        std::vector<FmRow> next;
        std::vector<const FmRow*> pos, neg;
        for (const FmRow& r : rows) {
            const double av = r.a[static_cast<std::size_t>(v)];
            if (av > 1e-12) pos.push_back(&r);
            else if (av < -1e-12) neg.push_back(&r);
            else {
                FmRow keep = r;
                keep.a[static_cast<std::size_t>(v)] = 0.0;
                next.push_back(keep);
            }
        }

        std::vector<FmRow> derived;
        for (const FmRow* p : pos) {
            for (const FmRow* q : neg) {
                // Scale both so the v coefficient is +/-1, then add.
                const double sp = p->a[static_cast<std::size_t>(v)];
                const double sq = -q->a[static_cast<std::size_t>(v)];
                FmRow r{};
                for (int j = 0; j < n; ++j)
                    r.a[static_cast<std::size_t>(j)] =
                        p->a[static_cast<std::size_t>(j)] / sp + q->a[static_cast<std::size_t>(j)] / sq;
                r.a[static_cast<std::size_t>(v)] = 0.0;
                r.b = p->b / sp + q->b / sq;
                fm_normalize(r, n);
                derived.push_back(r);
            }
        }
        fm_dedup(derived, n);
        if (derived.size() > kFmBudget)
            throw ResourceError("set_is_empty: Fourier-Motzkin derived-constraint budget exceeded");

        next.insert(next.end(), derived.begin(), derived.end());
        fm_dedup(next, n);

        // Constant rows are decidable immediately.
        std::vector<FmRow> keep;
        for (const FmRow& r : next) {
            double amax = 0.0;
            for (int j = 0; j < n; ++j) amax = std::max(amax, std::abs(r.a[static_cast<std::size_t>(j)]));
            if (amax <= 1e-12) {
                if (r.b > kFmTol) return false;
            } else {
                keep.push_back(r);
            }
        }
        rows = std::move(keep);
    }

    for (const FmRow& r : rows)
        if (r.b > kFmTol) return false;
    return true;
}

bool halfspaces_nonempty(const HalfspaceIntersection& h) {
    std::vector<FmRow> rows;
    rows.reserve(h.constraints.size());
    for (const Halfspace& c : h.constraints) {
        FmRow r{};
        for (int j = 0; j < c.a.dim(); ++j) r.a[static_cast<std::size_t>(j)] = c.a[j];
        r.b = c.b;
        rows.push_back(r);
    }
    return fm_feasible(std::move(rows), h.dim);
}

}  // namespace

// ---------------------------------------------------------------------------
// Construction
// ---------------------------------------------------------------------------

ConvexSet ConvexSet::empty(int dim) {
    if (dim < 1 || dim > kMaxDim) throw InvalidInputError("ConvexSet::empty: bad dimension");
    return {EmptySet{}, dim};
}

ConvexSet ConvexSet::singleton(Vec p) {
    const int d = p.dim();
    if (d < 1) throw InvalidInputError("ConvexSet::singleton: empty point");
    return {Singleton{std::move(p)}, d};
}

ConvexSet ConvexSet::finite_points(std::vector<Vec> points) {
    if (points.empty()) throw InvalidInputError("ConvexSet::finite_points: empty list");
    const int d = points.front().dim();
    for (const Vec& p : points) require_dim(p.dim(), d, "ConvexSet::finite_points");
    return {FinitePoints{std::move(points)}, d};
}

ConvexSet ConvexSet::ball(Vec center, double radius) {
    if (!(radius >= 0.0)) throw InvalidInputError("ConvexSet::ball: negative radius");
    const int d = center.dim();
    if (d < 1) throw InvalidInputError("ConvexSet::ball: empty center");
    return {Ball{std::move(center), radius}, d};
}

ConvexSet ConvexSet::box(Vec lo, Vec hi) {
    require_dim(lo.dim(), hi.dim(), "ConvexSet::box");
    for (int i = 0; i < lo.dim(); ++i)
        if (lo[i] > hi[i]) throw InvalidInputError("ConvexSet::box: lo > hi");
    const int d = lo.dim();
    return {BoxSet{std::move(lo), std::move(hi)}, d};
}

ConvexSet ConvexSet::polytope(std::vector<Vec> vertices) {
    if (vertices.empty()) throw InvalidInputError("ConvexSet::polytope: empty vertex list");
    const int d = vertices.front().dim();
    for (const Vec& v : vertices) require_dim(v.dim(), d, "ConvexSet::polytope");
    return {Polytope{std::move(vertices)}, d};
}

ConvexSet ConvexSet::halfspaces(std::vector<Halfspace> constraints, int dim) {
    if (dim < 1 || dim > kMaxDim) throw InvalidInputError("ConvexSet::halfspaces: bad dimension");
    for (const Halfspace& h : constraints)
        require_dim(h.a.dim(), dim, "ConvexSet::halfspaces");
    return {HalfspaceIntersection{std::move(constraints), dim}, dim};
}

ConvexSet ConvexSet::orthant_cone(Vec apex, std::vector<SignTag> signs) {
    const int d = apex.dim();
    if (static_cast<int>(signs.size()) != d)
        throw InvalidInputError("ConvexSet::orthant_cone: sign count mismatch");
    return {OrthantCone{std::move(apex), std::move(signs)}, d};
}

ConvexSet ConvexSet::ball_sum(const ConvexSet& base, double radius) {
    if (!(radius >= 0.0)) throw InvalidInputError("ConvexSet::ball_sum: negative radius");
    if (base.is<BallSum>()) {
        const auto& bs = base.get<BallSum>();
        return ball_sum(*bs.base, bs.radius + radius);  // flatten
    }
    if (radius == 0.0) return base;
    if (base.is<EmptySet>()) return base;
    if (base.is<Singleton>()) return ConvexSet::ball(base.get<Singleton>().p, radius);
    if (base.is<Ball>()) {
        const auto& b = base.get<Ball>();
        return ConvexSet::ball(b.center, b.radius + radius);
    }
    return {BallSum{std::make_shared<const ConvexSet>(base), radius}, base.dim()};
}

std::string ConvexSet::kind_name() const {
    struct Namer {
        std::string operator()(const EmptySet&) const { return "empty"; }
        std::string operator()(const Singleton&) const { return "singleton"; }
        std::string operator()(const FinitePoints&) const { return "finite_points"; }
        std::string operator()(const Ball&) const { return "ball"; }
        std::string operator()(const BoxSet&) const { return "box"; }
        std::string operator()(const Polytope&) const { return "polytope"; }
        std::string operator()(const HalfspaceIntersection&) const { return "halfspaces"; }
        std::string operator()(const OrthantCone&) const { return "orthant_cone"; }
        std::string operator()(const BallSum&) const { return "ball_sum"; }
    };
    return std::visit(Namer{}, v_);
}

// ---------------------------------------------------------------------------
// Projection and distance
// ---------------------------------------------------------------------------

Vec project_point(const ConvexSet& s, const Vec& p) {
    require_dim(s.dim(), p.dim(), "project_point");
    if (s.is<EmptySet>()) throw InvalidInputError("project_point: empty set");

    if (s.is<Singleton>()) return s.get<Singleton>().p;

    if (s.is<FinitePoints>()) {
        const auto& pts = s.get<FinitePoints>().points;
        const Vec* best = &pts.front();
        double bd = distance(*best, p);
        for (const Vec& q : pts) {
            const double d = distance(q, p);
            if (d < bd) {
                bd = d;
                best = &q;
            }
        }
        return *best;
    }

    if (s.is<Ball>()) {
        const auto& b = s.get<Ball>();
        const Vec r = p - b.center;
        const double n = norm(r);
        if (n <= b.radius) return p;
        return b.center + (b.radius / n) * r;
    }

    if (s.is<BoxSet>()) {
        const auto& b = s.get<BoxSet>();
        Vec q = p;
        for (int i = 0; i < p.dim(); ++i) q[i] = std::clamp(p[i], b.lo[i], b.hi[i]);
        return q;
    }

    if (s.is<OrthantCone>()) {
        const auto& c = s.get<OrthantCone>();
        Vec q = p;
        for (int i = 0; i < p.dim(); ++i) {
            const Interval iv = coord_interval(c, i);
            q[i] = std::clamp(p[i], iv.lo, iv.hi);
        }
        return q;
    }

    if (s.is<Polytope>()) return polytope_project(s.get<Polytope>().vertices, p);

    if (s.is<HalfspaceIntersection>()) {
        const auto rows = normalize_rows(s.get<HalfspaceIntersection>());
        if (worst_violation(rows, p) <= 0.0) return p;
        return dykstra_project(rows, p);
    }

    // BallSum: project to the base, then walk back along the segment.
    const auto& bs = s.get<BallSum>();
    const Vec q = project_point(*bs.base, p);
    const Vec r = p - q;
    const double n = norm(r);
    if (n <= bs.radius) return p;
    return q + (bs.radius / n) * r;
}

ExtReal set_distance(const ConvexSet& s, const Vec& p) {
    require_dim(s.dim(), p.dim(), "set_distance");
    if (s.is<EmptySet>()) return ExtReal::infinity();

    if (s.is<BallSum>()) {
        const auto& bs = s.get<BallSum>();
        return minus_clamp0(set_distance(*bs.base, p), bs.radius);
    }
    if (s.is<Ball>()) {
        const auto& b = s.get<Ball>();
        return std::max(0.0, distance(p, b.center) - b.radius);
    }
    if (s.is<HalfspaceIntersection>()) {
        const auto& h = s.get<HalfspaceIntersection>();
        const auto rows = normalize_rows(h);
        if (worst_violation(rows, p) <= 0.0) return 0.0;
        // Exact emptiness is affordable only for small systems; large ones
        // that are actually empty surface as projector non-convergence.
        if (h.dim <= kFmMaxDim && h.constraints.size() <= 128 && !halfspaces_nonempty(h))
            return ExtReal::infinity();
        return distance(p, dykstra_project(rows, p));
    }
    return distance(p, project_point(s, p));
}

bool set_contains(const ConvexSet& s, const Vec& p, double tol) {
    require_dim(s.dim(), p.dim(), "set_contains");
    if (!(tol >= 0.0)) throw InvalidInputError("set_contains: negative tolerance");
    if (s.is<EmptySet>()) return false;

    // Exact membership shortcut for halfspace intersections (tol = 0 honored).
    if (s.is<HalfspaceIntersection>()) {
        const auto rows = normalize_rows(s.get<HalfspaceIntersection>());
        if (worst_violation(rows, p) <= 0.0) return true;
        if (tol == 0.0) return false;
        return set_distance(s, p) <= ExtReal(tol);
    }

    const ExtReal d = set_distance(s, p);
    // Iterative variants get a small cushion; closed forms stay exact.
    const bool iterative = s.is<Polytope>() ||
                           (s.is<BallSum>() && s.get<BallSum>().base->is<Polytope>());
    const double cushion = iterative ? 1e-10 : 0.0;
    return d <= ExtReal(tol + cushion);
}

// ---------------------------------------------------------------------------
// Support function
// ---------------------------------------------------------------------------

ExtReal set_support(const ConvexSet& s, const Vec& u) {
    require_dim(s.dim(), u.dim(), "set_support");
    if (std::abs(norm(u) - 1.0) > 1e-12)
        throw InvalidInputError("set_support: direction must be unit length");
    if (s.is<EmptySet>()) throw InvalidInputError("set_support: empty set");

    if (s.is<Singleton>()) return dot(s.get<Singleton>().p, u);

    if (s.is<FinitePoints>()) {
        double best = -std::numeric_limits<double>::infinity();
        for (const Vec& q : s.get<FinitePoints>().points) best = std::max(best, dot(q, u));
        return best;
    }

    if (s.is<Ball>()) {
        const auto& b = s.get<Ball>();
        return dot(b.center, u) + b.radius;
    }

    if (s.is<BoxSet>()) {
        const auto& b = s.get<BoxSet>();
        double v = 0.0;
        for (int i = 0; i < u.dim(); ++i) v += std::max(b.lo[i] * u[i], b.hi[i] * u[i]);
        return v;
    }

    if (s.is<Polytope>()) {
        double best = -std::numeric_limits<double>::infinity();
        for (const Vec& q : s.get<Polytope>().vertices) best = std::max(best, dot(q, u));
        return best;
    }

    if (s.is<OrthantCone>()) {
        const auto& c = s.get<OrthantCone>();
        for (int i = 0; i < u.dim(); ++i) {
            const SignTag t = c.signs[static_cast<std::size_t>(i)];
            if ((t == SignTag::Pos && u[i] > 1e-14) || (t == SignTag::Neg && u[i] < -1e-14))
                return ExtReal::infinity();
        }
        return dot(c.apex, u);
    }

    if (s.is<BallSum>()) {
        const auto& bs = s.get<BallSum>();
        return set_support(*bs.base, u) + bs.radius;
    }

    const auto& h = s.get<HalfspaceIntersection>();
    const LpResult r = lp_maximize(h.constraints, u);
    switch (r.status) {
        case LpStatus::Optimal: return r.value;
        case LpStatus::Unbounded: return ExtReal::infinity();
        case LpStatus::Infeasible: default:
            throw InvalidInputError("set_support: empty halfspace intersection");
    }
}

// ---------------------------------------------------------------------------
// Emptiness and boundedness
// ---------------------------------------------------------------------------

bool set_is_empty(const ConvexSet& s) {
    if (s.is<EmptySet>()) return true;
    if (s.is<HalfspaceIntersection>())
        return !halfspaces_nonempty(s.get<HalfspaceIntersection>());
    if (s.is<BallSum>()) return set_is_empty(*s.get<BallSum>().base);
    return false;  // every other variant is nonempty by construction
}

bool set_is_bounded(const ConvexSet& s) {
    if (s.is<EmptySet>() || s.is<Singleton>() || s.is<FinitePoints>() || s.is<Ball>() ||
        s.is<BoxSet>() || s.is<Polytope>())
        return true;
    if (s.is<OrthantCone>()) {
        for (SignTag t : s.get<OrthantCone>().signs)
            if (t != SignTag::Zero) return false;
        return true;
    }
    if (s.is<BallSum>()) return set_is_bounded(*s.get<BallSum>().base);

    const auto& h = s.get<HalfspaceIntersection>();
    for (int i = 0; i < h.dim; ++i) {
        for (double sgn : {1.0, -1.0}) {
            const LpResult r = lp_maximize(h.constraints, Vec::axis(h.dim, i, sgn));
            if (r.status == LpStatus::Unbounded) return false;
            if (r.status == LpStatus::Infeasible) return true;  // empty is bounded
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Minkowski operations
// ---------------------------------------------------------------------------

ConvexSet minkowski_ball(const ConvexSet& s, double r) {
    if (!(r >= 0.0)) throw InvalidInputError("minkowski_ball: negative radius");
    return ConvexSet::ball_sum(s, r);
}

ConvexSet translate(const ConvexSet& s, const Vec& t) {
    require_dim(s.dim(), t.dim(), "translate");
    struct Shift {
        const Vec& t;
        ConvexSet operator()(const EmptySet&) const { return ConvexSet::empty(t.dim()); }
        ConvexSet operator()(const Singleton& x) const { return ConvexSet::singleton(x.p + t); }
        ConvexSet operator()(const FinitePoints& x) const {
            std::vector<Vec> pts;
            pts.reserve(x.points.size());
            for (const Vec& p : x.points) pts.push_back(p + t);
            return ConvexSet::finite_points(std::move(pts));
        }
        ConvexSet operator()(const Ball& x) const { return ConvexSet::ball(x.center + t, x.radius); }
        ConvexSet operator()(const BoxSet& x) const { return ConvexSet::box(x.lo + t, x.hi + t); }
        ConvexSet operator()(const Polytope& x) const {
            std::vector<Vec> vs;
            vs.reserve(x.vertices.size());
            for (const Vec& v : x.vertices) vs.push_back(v + t);
            return ConvexSet::polytope(std::move(vs));
        }
        ConvexSet operator()(const HalfspaceIntersection& x) const {
            std::vector<Halfspace> rows;
            rows.reserve(x.constraints.size());
            for (const Halfspace& h : x.constraints) rows.push_back({h.a, h.b + dot(h.a, t)});
            return ConvexSet::halfspaces(std::move(rows), x.dim);
        }
        ConvexSet operator()(const OrthantCone& x) const {
            return ConvexSet::orthant_cone(x.apex + t, x.signs);
        }
        ConvexSet operator()(const BallSum& x) const {
            return ConvexSet::ball_sum(translate(*x.base, t), x.radius);
        }
    };
    return std::visit(Shift{t}, s.variant());
}

ConvexSet minkowski_sum(const ConvexSet& a, const ConvexSet& b) {
    require_dim(a.dim(), b.dim(), "minkowski_sum");
    if (a.is<EmptySet>() || b.is<EmptySet>()) return ConvexSet::empty(a.dim());

    if (a.is<Singleton>()) return translate(b, a.get<Singleton>().p);
    if (b.is<Singleton>()) return translate(a, b.get<Singleton>().p);

    if (a.is<Ball>()) {
        const auto& x = a.get<Ball>();
        return minkowski_ball(translate(b, x.center), x.radius);
    }
    if (b.is<Ball>()) return minkowski_sum(b, a);

    if (a.is<BallSum>()) {
        const auto& x = a.get<BallSum>();
        return minkowski_ball(minkowski_sum(*x.base, b), x.radius);
    }
    if (b.is<BallSum>()) return minkowski_sum(b, a);

    if (a.is<FinitePoints>() && b.is<FinitePoints>()) {
        std::vector<Vec> pts;
        for (const Vec& p : a.get<FinitePoints>().points)
            for (const Vec& q : b.get<FinitePoints>().points) pts.push_back(p + q);
        return ConvexSet::finite_points(std::move(pts));
    }

    if (a.is<Polytope>() && b.is<Polytope>()) {
        std::vector<Vec> vs;
        for (const Vec& p : a.get<Polytope>().vertices)
            for (const Vec& q : b.get<Polytope>().vertices) vs.push_back(p + q);
        return ConvexSet::polytope(std::move(vs));
    }

    // Separable pairs: per-coordinate interval sums.
    const bool a_sep = a.is<BoxSet>() || a.is<OrthantCone>();
    const bool b_sep = b.is<BoxSet>() || b.is<OrthantCone>();
    if (a_sep && b_sep) {
        const int n = a.dim();
        auto get_iv = [](const ConvexSet& s, int i) {
            return s.is<BoxSet>() ? coord_interval(s.get<BoxSet>(), i)
                                  : coord_interval(s.get<OrthantCone>(), i);
        };
        // Orthant-cone sums without sign conflicts stay orthant cones.
        if (a.is<OrthantCone>() && b.is<OrthantCone>()) {
            const auto& ca = a.get<OrthantCone>();
            const auto& cb = b.get<OrthantCone>();
            bool clash = false;
            std::vector<SignTag> signs(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i) {
                const SignTag sa = ca.signs[static_cast<std::size_t>(i)];
                const SignTag sb = cb.signs[static_cast<std::size_t>(i)];
                if (sa == SignTag::Zero) signs[static_cast<std::size_t>(i)] = sb;
                else if (sb == SignTag::Zero || sb == sa) signs[static_cast<std::size_t>(i)] = sa;
                else clash = true;
            }
            if (!clash) return ConvexSet::orthant_cone(ca.apex + cb.apex, std::move(signs));
        }
        std::vector<Interval> iv(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            const Interval x = get_iv(a, i), y = get_iv(b, i);
            iv[static_cast<std::size_t>(i)] = {x.lo + y.lo, x.hi + y.hi};
        }
        return intervals_to_halfspaces(iv);
    }

    throw InvalidInputError("minkowski_sum: unsupported variant combination (" + a.kind_name() +
                            " + " + b.kind_name() + ")");
}

// ---------------------------------------------------------------------------
// Hausdorff estimate and set-set distance
// ---------------------------------------------------------------------------

double hausdorff_estimate(const ConvexSet& s1, const ConvexSet& s2,
                          const std::vector<Vec>& directions) {
    require_dim(s1.dim(), s2.dim(), "hausdorff_estimate");
    if (directions.empty()) throw InvalidInputError("hausdorff_estimate: no directions");
    // Empty inputs surface through set_support (invalid-input); running the
    // exact emptiness test here would be wasteful for large polyhedra.

    double worst = 0.0;
    for (const Vec& u : directions) {
        const ExtReal a = set_support(s1, u);
        const ExtReal b = set_support(s2, u);
        if (a.is_infinite() || b.is_infinite())
            throw InvalidInputError("hausdorff_estimate: unbounded input");
        worst = std::max(worst, std::abs(a.value() - b.value()));
    }
    return worst;
}

ExtReal set_set_distance(const ConvexSet& a, const ConvexSet& b) {
    require_dim(a.dim(), b.dim(), "set_set_distance");
    if (set_is_empty(a) || set_is_empty(b)) return ExtReal::infinity();

    if (a.is<Singleton>()) return set_distance(b, a.get<Singleton>().p);
    if (b.is<Singleton>()) return set_distance(a, b.get<Singleton>().p);

    if (a.is<Ball>()) {
        const auto& x = a.get<Ball>();
        return minus_clamp0(set_distance(b, x.center), x.radius);
    }
    if (b.is<Ball>()) return set_set_distance(b, a);

    if (a.is<BallSum>()) {
        const auto& x = a.get<BallSum>();
        return minus_clamp0(set_set_distance(*x.base, b), x.radius);
    }
    if (b.is<BallSum>()) return set_set_distance(b, a);

    if (a.is<FinitePoints>()) {
        ExtReal best = ExtReal::infinity();
        for (const Vec& p : a.get<FinitePoints>().points) {
            const ExtReal d = set_distance(b, p);
            if (d < best) best = d;
        }
        return best;
    }
    if (b.is<FinitePoints>()) return set_set_distance(b, a);

    // Alternating projections between the remaining closed convex pairs.
    Vec x = project_point(a, Vec::zero(a.dim()));
    double gap = std::numeric_limits<double>::infinity();
    for (int it = 0; it < 100000; ++it) {
        const Vec y = project_point(b, x);
        const Vec x2 = project_point(a, y);
        const double g = distance(x2, y);
        if (std::abs(gap - g) <= 1e-12 * (1.0 + g) && distance(x, x2) <= 1e-12 * (1.0 + norm(x)))
            return g;
        gap = g;
        x = x2;
    }
    throw NumericalError("set_set_distance: alternating projections not converged", gap);
}

// ---------------------------------------------------------------------------
// Representative points and direction grids
// ---------------------------------------------------------------------------

std::vector<Vec> direction_grid(int dim, int count) {
    if (dim < 1 || dim > kMaxDim) throw InvalidInputError("direction_grid: bad dimension");
    if (count < 1) throw InvalidInputError("direction_grid: bad count");
    std::vector<Vec> dirs;
    if (dim == 1) {
        dirs.push_back(Vec{1.0});
        dirs.push_back(Vec{-1.0});
        return dirs;
    }
    if (dim == 2) {
        constexpr double two_pi = 6.283185307179586476925286766559;
        dirs.reserve(static_cast<std::size_t>(count));
        for (int k = 0; k < count; ++k) {
            const double th = two_pi * k / count;
            dirs.push_back(Vec{std::cos(th), std::sin(th)});
        }
        return dirs;
    }
    for (int i = 0; i < dim && static_cast<int>(dirs.size()) < count; ++i) {
        dirs.push_back(Vec::axis(dim, i, 1.0));
        dirs.push_back(Vec::axis(dim, i, -1.0));
    }
    Rng rng = Rng::derive(0xD1CEu, "direction_grid");
    while (static_cast<int>(dirs.size()) < count) dirs.push_back(rng.unit_vector(dim));
    return dirs;
}

std::vector<Vec> sample_points(const ConvexSet& s, double ray_reach) {
    if (!(ray_reach > 0.0)) throw InvalidInputError("sample_points: ray_reach must be > 0");
    std::vector<Vec> out;

    if (s.is<EmptySet>()) return out;
    if (s.is<Singleton>()) {
        out.push_back(s.get<Singleton>().p);
        return out;
    }
    if (s.is<FinitePoints>()) return s.get<FinitePoints>().points;
    if (s.is<Ball>()) {
        const auto& b = s.get<Ball>();
        out.push_back(b.center);
        if (b.radius > 0.0)
            for (const Vec& u : direction_grid(s.dim(), 16)) out.push_back(b.center + b.radius * u);
        return out;
    }
    if (s.is<BoxSet>()) {
        const auto& b = s.get<BoxSet>();
        const int n = s.dim();
        for (int mask = 0; mask < (1 << n); ++mask) {
            Vec v = Vec::zero(n);
            for (int i = 0; i < n; ++i) v[i] = (mask >> i) & 1 ? b.hi[i] : b.lo[i];
            out.push_back(v);
        }
        out.push_back(0.5 * (b.lo + b.hi));
        return out;
    }
    if (s.is<Polytope>()) {
        out = s.get<Polytope>().vertices;
        Vec c = Vec::zero(s.dim());
        for (const Vec& v : out) c += (1.0 / static_cast<double>(out.size())) * v;
        out.push_back(c);
        return out;
    }
    if (s.is<OrthantCone>()) {
        const auto& c = s.get<OrthantCone>();
        out.push_back(c.apex);
        std::vector<int> active;
        for (int i = 0; i < s.dim(); ++i)
            if (c.signs[static_cast<std::size_t>(i)] != SignTag::Zero) active.push_back(i);
        std::vector<double> steps;
        for (double t = ray_reach; t >= ray_reach / 64.0; t *= 0.5) steps.push_back(t);
        for (int i : active) {
            const double sgn = c.signs[static_cast<std::size_t>(i)] == SignTag::Pos ? 1.0 : -1.0;
            for (double t : steps) out.push_back(c.apex + Vec::axis(s.dim(), i, sgn * t));
        }
        if (active.size() > 1) {
            // Corner ray: every active coordinate moving simultaneously.
            for (double t : steps) {
                Vec v = c.apex;
                for (int i : active)
                    v[i] += (c.signs[static_cast<std::size_t>(i)] == SignTag::Pos ? t : -t);
                out.push_back(v);
            }
        }
        return out;
    }
    if (s.is<BallSum>()) {
        const auto& bs = s.get<BallSum>();
        const auto base_pts = sample_points(*bs.base, ray_reach);
        for (const Vec& p : base_pts) {
            out.push_back(p);
            for (const Vec& u : direction_grid(s.dim(), 8)) out.push_back(p + bs.radius * u);
        }
        return out;
    }

    // Halfspace intersection: one feasible anchor plus axis probes projected
    // back onto the set.
    const Vec anchor = project_point(s, Vec::zero(s.dim()));
    out.push_back(anchor);
    for (int i = 0; i < s.dim(); ++i) {
        for (double sgn : {1.0, -1.0}) {
            const Vec probe = anchor + Vec::axis(s.dim(), i, sgn * ray_reach);
            out.push_back(project_point(s, probe));
        }
    }
    return out;
}

}  // namespace monotone
