#include "monotone/operators.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

#include <Eigen/Dense>

#include "monotone/errors.hpp"

namespace monotone {
namespace {

constexpr double kMonotoneSlack = 1e-9;
constexpr double kCoincidenceTol = 1e-12;
constexpr std::size_t kGridCap = 1000000;

Eigen::MatrixXd to_eigen(const Matrix& m) {
    Eigen::MatrixXd e(m.dim(), m.dim());
    for (int i = 0; i < m.dim(); ++i)
        for (int j = 0; j < m.dim(); ++j) e(i, j) = m(i, j);
    return e;
}

Matrix from_eigen(const Eigen::MatrixXd& e) {
    Matrix m(static_cast<int>(e.rows()));
    for (int i = 0; i < m.dim(); ++i)
        for (int j = 0; j < m.dim(); ++j) m(i, j) = e(i, j);
    return m;
}

/// Solve s + s/sqrt(1+s^2) = r for s >= 0 by bisection to 1e-12.
double sqrt1p_radial_inverse(double r) {
    if (r <= 0.0) return 0.0;
    double lo = std::max(0.0, r - 1.0), hi = r;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double f = mid + mid / std::sqrt(1.0 + mid * mid) - r;
        (f > 0.0 ? hi : lo) = mid;
        if (hi - lo <= 1e-12 * std::max(1.0, r)) break;
    }
    return 0.5 * (lo + hi);
}

Vec sqrt1p_value(const Vec& x) { return (1.0 / std::sqrt(1.0 + norm2(x))) * x; }

}  // namespace

double min_eigenvalue_symmetric_part(const Matrix& a) {
    const Eigen::MatrixXd e = to_eigen(a);
    const Eigen::MatrixXd sym = e + e.transpose();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym);
    return solver.eigenvalues().minCoeff();
}

// ---------------------------------------------------------------------------
// GraphSample
// ---------------------------------------------------------------------------

GraphSample::GraphSample(std::vector<GraphPoint> points, std::string source,
                         double truncation_radius, double density, bool exhaustive)
    : pts_(std::move(points)),
      source_(std::move(source)),
      radius_(truncation_radius),
      density_(density),
      exhaustive_(exhaustive) {
    if (pts_.empty()) throw InvalidInputError("GraphSample: empty point list");
    if (!(radius_ > 0.0) || !(density_ > 0.0))
        throw InvalidInputError("GraphSample: radius and density must be positive");
    dim_ = pts_.front().y.dim();
    for (const GraphPoint& p : pts_) {
        if (p.y.dim() != dim_ || p.ystar.dim() != dim_)
            throw InvalidInputError("GraphSample: dimension mismatch");
    }

    // Drop exact duplicates, preserving first-occurrence order.
    std::vector<std::size_t> order(pts_.size());
    std::iota(order.begin(), order.end(), 0);
    auto less = [&](std::size_t i, std::size_t j) {
        for (int k = 0; k < dim_; ++k) {
            if (pts_[i].y[k] != pts_[j].y[k]) return pts_[i].y[k] < pts_[j].y[k];
        }
        for (int k = 0; k < dim_; ++k) {
            if (pts_[i].ystar[k] != pts_[j].ystar[k]) return pts_[i].ystar[k] < pts_[j].ystar[k];
        }
        return i < j;
    };
    std::sort(order.begin(), order.end(), less);
    std::vector<bool> drop(pts_.size(), false);
    for (std::size_t k = 1; k < order.size(); ++k) {
        const GraphPoint& a = pts_[order[k - 1]];
        const GraphPoint& b = pts_[order[k]];
        if (a.y == b.y && a.ystar == b.ystar)
            drop[std::max(order[k - 1], order[k])] = true;
    }
    std::vector<GraphPoint> unique;
    unique.reserve(pts_.size());
    for (std::size_t i = 0; i < pts_.size(); ++i)
        if (!drop[i]) unique.push_back(std::move(pts_[i]));
    pts_ = std::move(unique);
}

MonotonicityReport validate_monotone(const GraphSample& s) {
    MonotonicityReport rep{true, std::numeric_limits<double>::infinity(), {}, {}};
    const auto& pts = s.points();
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            const double v = dot(pts[i].ystar - pts[j].ystar, pts[i].y - pts[j].y);
            if (v < rep.worst) {
                rep.worst = v;
                rep.witness_i = pts[i];
                rep.witness_j = pts[j];
            }
        }
    }
    if (pts.size() < 2) rep.worst = 0.0;
    rep.holds = rep.worst >= -kMonotoneSlack;
    return rep;
}

std::pair<bool, double> monotone_related(const Vec& x, const Vec& xstar, const GraphSample& s,
                                         double tol) {
    if (x.dim() != s.dim() || xstar.dim() != s.dim())
        throw InvalidInputError("monotone_related: dimension mismatch");
    double worst = std::numeric_limits<double>::infinity();
    for (const GraphPoint& p : s.points())
        worst = std::min(worst, dot(p.ystar - xstar, p.y - x));
    if (s.points().empty()) throw InvalidInputError("monotone_related: empty sample");
    return {worst >= -tol, worst};
}

// ---------------------------------------------------------------------------
// OperatorSpec construction
// ---------------------------------------------------------------------------

OperatorSpec OperatorSpec::finite_graph(GraphSample graph) {
    const int d = graph.dim();
    return {FiniteGraphOp{std::move(graph)}, d};
}

OperatorSpec OperatorSpec::linear(Matrix a) {
    const double lam = min_eigenvalue_symmetric_part(a);
    if (lam < -1e-10)
        throw InvalidInputError("OperatorSpec::linear: A + A^T not positive semidefinite");
    const int n = a.dim();
    Eigen::MatrixXd ipa = Eigen::MatrixXd::Identity(n, n) + to_eigen(a);
    Matrix inv = from_eigen(ipa.partialPivLu().inverse());
    return {LinearOp{std::move(a), std::move(inv)}, n};
}

OperatorSpec OperatorSpec::norm_subdiff(double lambda, Vec center) {
    if (!(lambda > 0.0)) throw InvalidInputError("OperatorSpec::norm_subdiff: lambda must be > 0");
    const int d = center.dim();
    return {NormSubdiffOp{lambda, std::move(center)}, d};
}

OperatorSpec OperatorSpec::box_normal_cone(Vec lo, Vec hi) {
    if (lo.dim() != hi.dim()) throw InvalidInputError("box_normal_cone: dimension mismatch");
    for (int i = 0; i < lo.dim(); ++i)
        if (!(lo[i] < hi[i]))
            throw InvalidInputError("box_normal_cone: needs lo < hi componentwise");
    const int d = lo.dim();
    return {BoxNormalConeOp{std::move(lo), std::move(hi)}, d};
}

OperatorSpec OperatorSpec::smooth_gradient(SmoothKind kind, int dim) {
    if (dim < 1 || dim > kMaxDim) throw InvalidInputError("smooth_gradient: bad dimension");
    return {SmoothGradientOp{kind, dim}, dim};
}

OperatorSpec OperatorSpec::sum(std::vector<OperatorSpec> members) {
    if (members.empty()) throw InvalidInputError("OperatorSpec::sum: no members");
    std::vector<OperatorSpec> flat;
    for (OperatorSpec& m : members) {
        if (m.is<SumOp>())
            for (const OperatorSpec& inner : m.get<SumOp>().members) flat.push_back(inner);
        else
            flat.push_back(std::move(m));
    }
    const int d = flat.front().dim();
    for (const OperatorSpec& m : flat)
        if (m.dim() != d) throw InvalidInputError("OperatorSpec::sum: member dimension mismatch");

    // Domain compatibility: some member's domain anchor must lie in every
    // member's domain (the catalog has box domains and full domains only).
    bool ok = false;
    for (const OperatorSpec& m : flat) {
        const Vec candidate = domain_point(m);
        bool all = true;
        for (const OperatorSpec& other : flat)
            if (domain_distance(other, candidate) > 0.0) all = false;
        if (all) {
            ok = true;
            break;
        }
    }
    if (!ok) throw InvalidInputError("OperatorSpec::sum: member domains share no common point");
    return {SumOp{std::move(flat)}, d};
}

std::string OperatorSpec::kind_name() const {
    struct Namer {
        std::string operator()(const FiniteGraphOp&) const { return "finite_graph"; }
        std::string operator()(const LinearOp&) const { return "linear"; }
        std::string operator()(const NormSubdiffOp&) const { return "norm_subdiff"; }
        std::string operator()(const BoxNormalConeOp&) const { return "box_normal_cone"; }
        std::string operator()(const SmoothGradientOp&) const { return "smooth_gradient"; }
        std::string operator()(const SumOp&) const { return "sum"; }
    };
    return std::visit(Namer{}, v_);
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

ConvexSet evaluate(const OperatorSpec& t, const Vec& x) {
    if (x.dim() != t.dim()) throw InvalidInputError("evaluate: dimension mismatch");
    const int n = t.dim();

    if (t.is<FiniteGraphOp>()) {
        std::vector<Vec> images;
        for (const GraphPoint& p : t.get<FiniteGraphOp>().graph.points())
            if (distance(p.y, x) <= kCoincidenceTol) images.push_back(p.ystar);
        if (images.empty()) return ConvexSet::empty(n);
        return ConvexSet::finite_points(std::move(images));
    }

    if (t.is<LinearOp>()) return ConvexSet::singleton(t.get<LinearOp>().a.apply(x));

    if (t.is<NormSubdiffOp>()) {
        const auto& op = t.get<NormSubdiffOp>();
        const Vec r = x - op.center;
        const double nr = norm(r);
        if (nr <= kCoincidenceTol) return ConvexSet::ball(Vec::zero(n), op.lambda);
        return ConvexSet::singleton((op.lambda / nr) * r);
    }

    if (t.is<BoxNormalConeOp>()) {
        const auto& op = t.get<BoxNormalConeOp>();
        std::vector<SignTag> signs(static_cast<std::size_t>(n), SignTag::Zero);
        bool boundary = false;
        for (int i = 0; i < n; ++i) {
            if (x[i] < op.lo[i] || x[i] > op.hi[i]) return ConvexSet::empty(n);
            if (x[i] == op.lo[i]) {
                signs[static_cast<std::size_t>(i)] = SignTag::Neg;
                boundary = true;
            } else if (x[i] == op.hi[i]) {
                signs[static_cast<std::size_t>(i)] = SignTag::Pos;
                boundary = true;
            }
        }
        if (!boundary) return ConvexSet::singleton(Vec::zero(n));
        return ConvexSet::orthant_cone(Vec::zero(n), std::move(signs));
    }

    if (t.is<SmoothGradientOp>()) return ConvexSet::singleton(sqrt1p_value(x));

    const auto& sum = t.get<SumOp>();
    ConvexSet acc = evaluate(sum.members.front(), x);
    for (std::size_t i = 1; i < sum.members.size(); ++i) {
        if (acc.is<EmptySet>()) return acc;
        acc = minkowski_sum(acc, evaluate(sum.members[i], x));
    }
    return acc;
}

// ---------------------------------------------------------------------------
// Resolvent and graph sampling
// ---------------------------------------------------------------------------

bool is_resolvent_capable(const OperatorSpec& t) {
    return t.is<LinearOp>() || t.is<NormSubdiffOp>() || t.is<BoxNormalConeOp>() ||
           t.is<SmoothGradientOp>();
}

GraphPoint resolvent_point(const OperatorSpec& t, const Vec& z) {
    if (z.dim() != t.dim()) throw InvalidInputError("resolvent_point: dimension mismatch");

    if (t.is<LinearOp>()) {
        const Vec x = t.get<LinearOp>().resolvent_inverse.apply(z);
        return {x, z - x};
    }

    if (t.is<BoxNormalConeOp>()) {
        const auto& op = t.get<BoxNormalConeOp>();
        Vec x = z;
        for (int i = 0; i < z.dim(); ++i) x[i] = std::clamp(z[i], op.lo[i], op.hi[i]);
        return {x, z - x};
    }

    if (t.is<NormSubdiffOp>()) {
        // Block soft threshold: prox of lambda * ||. - center||.
        const auto& op = t.get<NormSubdiffOp>();
        const Vec r = z - op.center;
        const double nr = norm(r);
        if (nr <= op.lambda) return {op.center, r};
        const Vec x = op.center + (1.0 - op.lambda / nr) * r;
        return {x, z - x};
    }

    if (t.is<SmoothGradientOp>()) {
        const double r = norm(z);
        if (r <= 0.0) return {Vec::zero(z.dim()), Vec::zero(z.dim())};
        const double s = sqrt1p_radial_inverse(r);
        const Vec x = (s / r) * z;
        return {x, z - x};
    }

    throw InvalidInputError("resolvent_point: no closed form for " + t.kind_name());
}

namespace {

/// Lattice h*Z^n intersected with [-R, R]^n, lexicographic order.
void for_each_lattice_node(int dim, double radius, double density,
                           const std::function<void(const Vec&)>& fn) {
    const int kmax = static_cast<int>(std::floor(radius / density + 1e-9));
    const std::size_t per_axis = static_cast<std::size_t>(2 * kmax + 1);
    std::size_t total = 1;
    for (int i = 0; i < dim; ++i) {
        total *= per_axis;
        if (total > kGridCap)
            throw ResourceError("sample_graph: lattice exceeds the 10^6 node budget");
    }
    std::vector<int> idx(static_cast<std::size_t>(dim), -kmax);
    Vec z = Vec::zero(dim);
    for (;;) {
        for (int i = 0; i < dim; ++i) z[i] = idx[static_cast<std::size_t>(i)] * density;
        fn(z);
        int i = dim - 1;
        while (i >= 0 && idx[static_cast<std::size_t>(i)] == kmax) {
            idx[static_cast<std::size_t>(i)] = -kmax;
            --i;
        }
        if (i < 0) break;
        ++idx[static_cast<std::size_t>(i)];
    }
}

}  // namespace

GraphSample sample_graph(const OperatorSpec& t, double truncation_radius, double density) {
    if (!(truncation_radius > 0.0) || !(density > 0.0) || density > truncation_radius)
        throw InvalidInputError("sample_graph: need 0 < h <= R");

    if (t.is<FiniteGraphOp>()) {
        const GraphSample& g = t.get<FiniteGraphOp>().graph;
        return {g.points(), g.source(), truncation_radius, density, true};
    }

    std::vector<GraphPoint> pts;

    if (is_resolvent_capable(t)) {
        for_each_lattice_node(t.dim(), truncation_radius, density,
                              [&](const Vec& z) { pts.push_back(resolvent_point(t, z)); });
        return {std::move(pts), t.kind_name(), truncation_radius, density, false};
    }

    // Sum: the first resolvent-capable member carries the lattice; the other
    // members are evaluated pointwise and their images spread into pairs.
    // Domain lattices alone never witness vertical rays, so the carrier must
    // be the resolvent.
    const auto& sum = t.get<SumOp>();
    const OperatorSpec* carrier = nullptr;
    for (const OperatorSpec& m : sum.members)
        if (is_resolvent_capable(m)) {
            carrier = &m;
            break;
        }
    if (carrier == nullptr)
        throw InvalidInputError("sample_graph: sum has no resolvent-capable member");

    for_each_lattice_node(t.dim(), truncation_radius, density, [&](const Vec& z) {
        const GraphPoint base = resolvent_point(*carrier, z);
        std::vector<Vec> offsets{Vec::zero(t.dim())};
        for (const OperatorSpec& m : sum.members) {
            if (&m == carrier) continue;
            const ConvexSet img = evaluate(m, base.y);
            if (img.is<EmptySet>()) return;  // outside the sum's domain
            std::vector<Vec> reps = sample_points(img, truncation_radius);
            if (reps.size() > 8) reps.resize(8);
            std::vector<Vec> next;
            next.reserve(offsets.size() * reps.size());
            for (const Vec& o : offsets)
                for (const Vec& r : reps) next.push_back(o + r);
            offsets = std::move(next);
        }
        for (const Vec& o : offsets) {
            pts.push_back({base.y, base.ystar + o});
            if (pts.size() > kGridCap)
                throw ResourceError("sample_graph: sum spread exceeds the 10^6 pair budget");
        }
    });
    return {std::move(pts), t.kind_name(), truncation_radius, density, false};
}

// ---------------------------------------------------------------------------
// Domain helpers
// ---------------------------------------------------------------------------

double domain_distance(const OperatorSpec& t, const Vec& x) {
    if (x.dim() != t.dim()) throw InvalidInputError("domain_distance: dimension mismatch");
    if (t.is<LinearOp>() || t.is<NormSubdiffOp>() || t.is<SmoothGradientOp>()) return 0.0;
    if (t.is<BoxNormalConeOp>()) {
        const auto& op = t.get<BoxNormalConeOp>();
        double d2 = 0.0;
        for (int i = 0; i < x.dim(); ++i) {
            const double c = std::clamp(x[i], op.lo[i], op.hi[i]);
            d2 += (x[i] - c) * (x[i] - c);
        }
        return std::sqrt(d2);
    }
    if (t.is<FiniteGraphOp>()) {
        double best = std::numeric_limits<double>::infinity();
        for (const GraphPoint& p : t.get<FiniteGraphOp>().graph.points())
            best = std::min(best, distance(p.y, x));
        return best;
    }
    double worst = 0.0;  // domain of a sum = intersection of member domains
    for (const OperatorSpec& m : t.get<SumOp>().members)
        worst = std::max(worst, domain_distance(m, x));
    return worst;
}

Vec domain_point(const OperatorSpec& t) {
    if (t.is<BoxNormalConeOp>()) {
        const auto& op = t.get<BoxNormalConeOp>();
        return 0.5 * (op.lo + op.hi);
    }
    if (t.is<FiniteGraphOp>()) return t.get<FiniteGraphOp>().graph.points().front().y;
    if (t.is<SumOp>()) {
        for (const OperatorSpec& m : t.get<SumOp>().members)
            if (!m.is<LinearOp>() && !m.is<NormSubdiffOp>() && !m.is<SmoothGradientOp>())
                return domain_point(m);
        return Vec::zero(t.dim());
    }
    return Vec::zero(t.dim());
}

ExtReal operator_bound(const OperatorSpec& t) {
    if (t.is<SmoothGradientOp>()) return 1.0;
    if (t.is<FiniteGraphOp>()) {
        double best = 0.0;
        for (const GraphPoint& p : t.get<FiniteGraphOp>().graph.points())
            best = std::max(best, norm(p.ystar));
        return best;
    }
    if (t.is<NormSubdiffOp>()) return t.get<NormSubdiffOp>().lambda;
    if (t.is<SumOp>()) {
        ExtReal acc = 0.0;
        for (const OperatorSpec& m : t.get<SumOp>().members) {
            const ExtReal b = operator_bound(m);
            if (b.is_infinite()) return ExtReal::infinity();
            acc = ExtReal(acc.value() + b.value());
        }
        return acc;
    }
    return ExtReal::infinity();  // linear operators and cones are unbounded
}

}  // namespace monotone
