#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "monotone/convex_set.hpp"
#include "monotone/matrix.hpp"
#include "monotone/vec.hpp"

namespace monotone {

/// One pair (y, y*) of an operator graph.
struct GraphPoint {
    Vec y;
    Vec ystar;
};

/// Finite list of graph pairs with sampling provenance. Construction checks
/// dimensions and removes duplicate pairs; the O(m^2) pairwise monotonicity
/// test is deliberately separate (validate_monotone) so that large resolvent
/// samples, which are monotone by construction, stay cheap to build.
class GraphSample {
public:
    GraphSample(std::vector<GraphPoint> points, std::string source, double truncation_radius,
                double density, bool exhaustive);

    const std::vector<GraphPoint>& points() const noexcept { return pts_; }
    const std::string& source() const noexcept { return source_; }
    double truncation_radius() const noexcept { return radius_; }
    double density() const noexcept { return density_; }
    /// True when the sample IS the whole graph (finite-graph operators).
    bool exhaustive() const noexcept { return exhaustive_; }
    int dim() const noexcept { return dim_; }
    std::size_t size() const noexcept { return pts_.size(); }

private:
    std::vector<GraphPoint> pts_;
    std::string source_;
    double radius_;
    double density_;
    bool exhaustive_;
    int dim_;
};

// --- operator variants ------------------------------------------------------

class OperatorSpec;

/// Operator given by an explicit finite graph.
struct FiniteGraphOp {
    GraphSample graph;
};

/// x |-> A x with A + A^T positive semidefinite.
struct LinearOp {
    Matrix a;
    Matrix resolvent_inverse;  // (I + A)^{-1}, precomputed
};

/// Subdifferential of z |-> lambda * ||z - center||: the unit-ball scaled
/// cone at the center, single-valued lambda*(z-center)/||z-center|| off it.
struct NormSubdiffOp {
    double lambda;  // > 0
    Vec center;
};

/// Normal cone of the box [lo, hi] (lo < hi strictly, componentwise).
struct BoxNormalConeOp {
    Vec lo, hi;
};

/// Catalog of smooth, globally bounded gradients.
enum class SmoothKind { Sqrt1p };  // x |-> x / sqrt(1 + ||x||^2), bound 1

struct SmoothGradientOp {
    SmoothKind kind;
    int dim;
};

/// Pointwise Minkowski sum of the members (flattened on construction).
struct SumOp {
    std::vector<OperatorSpec> members;
};

/// Tagged description of a monotone operator on R^n, with exact pointwise
/// evaluation. Immutable; all operations on it are pure.
class OperatorSpec {
public:
    using Variant =
        std::variant<FiniteGraphOp, LinearOp, NormSubdiffOp, BoxNormalConeOp, SmoothGradientOp, SumOp>;

    static OperatorSpec finite_graph(GraphSample graph);
    static OperatorSpec linear(Matrix a);
    static OperatorSpec norm_subdiff(double lambda, Vec center);
    static OperatorSpec box_normal_cone(Vec lo, Vec hi);
    static OperatorSpec smooth_gradient(SmoothKind kind, int dim);
    static OperatorSpec sum(std::vector<OperatorSpec> members);

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
    OperatorSpec(Variant v, int dim) : v_(std::move(v)), dim_(dim) {}

    Variant v_;
    int dim_ = 0;
};

// --- operations -------------------------------------------------------------

/// T(x) as a convex-set description; Empty iff x is outside the domain.
ConvexSet evaluate(const OperatorSpec& t, const Vec& x);

/// Minty parametrization: the pair (x, z - x) with x + T(x) containing z.
/// Exact per variant; not available for finite graphs or sums.
GraphPoint resolvent_point(const OperatorSpec& t, const Vec& z);

bool is_resolvent_capable(const OperatorSpec& t);

/// Lattice of resolvent inputs z in h*Z^n, |z_i| <= R, mapped through the
/// resolvent (sums: the first resolvent-capable member carries the lattice,
/// the other members are evaluated pointwise and spread). Deterministic
/// lexicographic order; at most 10^6 lattice nodes.
GraphSample sample_graph(const OperatorSpec& t, double truncation_radius, double density);

/// worst = min over pairs of <y*_i - y*_j, y_i - y_j>; pass iff >= -1e-9.
struct MonotonicityReport {
    bool holds;
    double worst;
    GraphPoint witness_i, witness_j;
};

MonotonicityReport validate_monotone(const GraphSample& s);

/// min over pairs of <y* - x*, y - x> and the induced verdict at `tol`.
std::pair<bool, double> monotone_related(const Vec& x, const Vec& xstar, const GraphSample& s,
                                         double tol);

/// Exact distance from x to the domain of T (0 when inside).
double domain_distance(const OperatorSpec& t, const Vec& x);

/// Some point of the domain of T.
Vec domain_point(const OperatorSpec& t);

/// Upper bound of sup ||y*|| over the graph, +inf when unbounded.
ExtReal operator_bound(const OperatorSpec& t);

}  // namespace monotone
