#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "monotone/extended_real.hpp"
#include "monotone/vec.hpp"

namespace monotone {

/// Per-coordinate tag of an orthant cone: the coordinate is allowed to move
/// down (Neg), not at all (Zero), or up (Pos) from the apex.
enum class SignTag { Neg, Zero, Pos };

struct EmptySet {};

struct Singleton {
    Vec p;
};

/// Finite list of points. Used for images of finite-graph operators; the
/// set queries (contains/distance/support) treat it as the plain union.
struct FinitePoints {
    std::vector<Vec> points;
};

struct Ball {
    Vec center;
    double radius;  // >= 0
};

struct BoxSet {
    Vec lo, hi;  // lo <= hi componentwise
};

/// Convex hull of a nonempty vertex list.
struct Polytope {
    std::vector<Vec> vertices;
};

/// One constraint <a, w> >= b.
struct Halfspace {
    Vec a;
    double b;
};

struct HalfspaceIntersection {
    std::vector<Halfspace> constraints;
    int dim;  // ambient dimension (constraint list may be empty = all of R^n)
};

/// apex + { w : w_i >= 0 if Pos, w_i <= 0 if Neg, w_i = 0 if Zero }.
/// Houses normal cones of boxes.
struct OrthantCone {
    Vec apex;
    std::vector<SignTag> signs;
};

class ConvexSet;

/// base + radius * (unit ball). base is never itself a BallSum (flattened).
struct BallSum {
    std::shared_ptr<const ConvexSet> base;
    double radius;  // >= 0
};

/// Tagged description of a closed convex subset of R^n. Immutable after
/// construction; all queries are pure.
class ConvexSet {
public:
    using Variant = std::variant<EmptySet, Singleton, FinitePoints, Ball, BoxSet, Polytope,
                                 HalfspaceIntersection, OrthantCone, BallSum>;

    static ConvexSet empty(int dim);
    static ConvexSet singleton(Vec p);
    static ConvexSet finite_points(std::vector<Vec> points);
    static ConvexSet ball(Vec center, double radius);
    static ConvexSet box(Vec lo, Vec hi);
    static ConvexSet polytope(std::vector<Vec> vertices);
    static ConvexSet halfspaces(std::vector<Halfspace> constraints, int dim);
    static ConvexSet orthant_cone(Vec apex, std::vector<SignTag> signs);
    /// S + r * (unit ball), flattening nested BallSum and absorbing the ball
    /// into Singleton/Ball bases.
    static ConvexSet ball_sum(const ConvexSet& base, double radius);

    int dim() const noexcept { return dim_; }

    template <typename T>
    bool is() const noexcept {
        return std::holds_alternative<T>(v_);
    }

    template <typename T>
    const T& get() const {
        return std::get<T>(v_);
    }

    const Variant& variant() const noexcept { return v_; }

    std::string kind_name() const;

private:
    ConvexSet(Variant v, int dim) : v_(std::move(v)), dim_(dim) {}

    Variant v_;
    int dim_ = 0;
};

// ---------------------------------------------------------------------------
// Set queries
// ---------------------------------------------------------------------------

/// True iff d(p, S) <= tol. Exact (tol = 0 honored) for Singleton, Ball,
/// Box, FinitePoints, OrthantCone and HalfspaceIntersection; Polytope and
/// positive-tol halfspace queries go through the iterative projector.
bool set_contains(const ConvexSet& s, const Vec& p, double tol);

/// Euclidean distance from p to S; +inf iff S is empty. Closed forms
/// everywhere except Polytope / HalfspaceIntersection, which use iterative
/// projection to 1e-8.
ExtReal set_distance(const ConvexSet& s, const Vec& p);

/// sup over S of <., u> for a unit direction u; +inf along unbounded
/// directions. Empty input is an error.
ExtReal set_support(const ConvexSet& s, const Vec& u);

/// Exact emptiness. Halfspace intersections are decided by Fourier-Motzkin
/// elimination (n <= 4, bounded derived-constraint budget).
bool set_is_empty(const ConvexSet& s);

/// Description of S + r * (unit ball).
ConvexSet minkowski_ball(const ConvexSet& s, double r);

/// max over the given unit directions of |support(S1,u) - support(S2,u)|.
/// A lower bound of the true Hausdorff distance; both sets must be bounded
/// and nonempty.
double hausdorff_estimate(const ConvexSet& s1, const ConvexSet& s2,
                          const std::vector<Vec>& directions);

// ---------------------------------------------------------------------------
// Supporting operations
// ---------------------------------------------------------------------------

/// Nearest point of S to p. Throws InvalidInputError on the empty set.
Vec project_point(const ConvexSet& s, const Vec& p);

ConvexSet translate(const ConvexSet& s, const Vec& t);

/// Minkowski sum. Covers every combination reachable by operator images
/// (singletons, balls, finite point lists, orthant cones and their ball
/// sums); unsupported pairings raise InvalidInputError.
ConvexSet minkowski_sum(const ConvexSet& a, const ConvexSet& b);

/// inf ||a - b|| over a in A, b in B; +inf when either side is empty.
ExtReal set_set_distance(const ConvexSet& a, const ConvexSet& b);

bool set_is_bounded(const ConvexSet& s);

/// Deterministic representative points of S: extreme-ish points plus rays
/// truncated at `ray_reach`. Used to spread multivalued operator images
/// into graph samples. Empty set yields an empty list.
std::vector<Vec> sample_points(const ConvexSet& s, double ray_reach);

/// Deterministic unit directions for support scans: +/- axes first, then a
/// fixed-seed filler (n = 1 gives {+1, -1}; n = 2 evenly spaced angles).
std::vector<Vec> direction_grid(int dim, int count);

}  // namespace monotone
