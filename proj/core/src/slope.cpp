#include "monotone/slope.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "monotone/errors.hpp"

namespace monotone {
namespace {

constexpr double kExcludePairTol = 1e-12;  // the "y != x" restriction
constexpr double kDivergenceThreshold = 1e6;
constexpr double kOneSidedSlack = 1e-9;

/// Streaming supremum of the slope quotient over graph pairs, optionally
/// retaining the best pairs for later rescans (the enlarged-slope delta scan).
class QuotientPool {
public:
    QuotientPool(Vec x, Vec xstar, std::size_t keep = 0)
        : x_(std::move(x)), xstar_(std::move(xstar)), keep_(keep) {}

    void add(const GraphPoint& p) {
        const Vec d = p.y - x_;
        const double nd = norm(d);
        if (nd < kExcludePairTol) return;
        any_ = true;
        const double quot = dot(xstar_ - p.ystar, d) / nd;
        if (quot > sup_) sup_ = quot;
        if (keep_ > 0) retain(quot, p);
    }

    bool any() const noexcept { return any_; }

    double value() const noexcept { return any_ ? std::max(0.0, sup_) : 0.0; }

    /// Retained pairs, best quotient first.
    std::vector<std::pair<double, GraphPoint>> best_pairs() const {
        auto out = top_;
        std::sort(out.begin(), out.end(),
                  [](const auto& a, const auto& b) { return a.first > b.first; });
        return out;
    }

private:
    void retain(double quot, const GraphPoint& p) {
        if (top_.size() < keep_) {
            top_.emplace_back(quot, p);
            if (top_.size() == keep_)
                std::make_heap(top_.begin(), top_.end(), cmp);
            return;
        }
        if (quot <= top_.front().first) return;
        std::pop_heap(top_.begin(), top_.end(), cmp);
        top_.back() = {quot, p};
        std::push_heap(top_.begin(), top_.end(), cmp);
    }

    static bool cmp(const std::pair<double, GraphPoint>& a,
                    const std::pair<double, GraphPoint>& b) {
        return a.first > b.first;  // min-heap on quotient
    }

    Vec x_, xstar_;
    std::size_t keep_;
    double sup_ = -std::numeric_limits<double>::infinity();
    bool any_ = false;
    std::vector<std::pair<double, GraphPoint>> top_;
};

int fine_lattice_axis_cap(int dim) {
    switch (dim) {
        case 1: return 16384;
        case 2: return 256;
        case 3: return 40;
        default: return 8;
    }
}

int ray_lattice_axis_nodes(int dim) {
    switch (dim) {
        case 1: case 2: return 8;
        case 3: return 4;
        case 4: case 5: return 3;
        default: return 1;
    }
}

int polar_direction_count(int dim) {
    switch (dim) {
        case 1: return 2;
        case 2: return 1024;
        default: return 512;
    }
}

/// Deterministic refinement driver shared by slope_estimate and
/// slope_enlarged. Feeds genuine graph pairs into the pool level by level:
///   - a fixed-radius lattice of resolvent inputs with halving step,
///   - a doubling coarse lattice that witnesses normal-cone rays,
///   - polar probes y = x + t*u with geometric radii down to ~tol/4.
/// Stops on value convergence, on crossing the divergence threshold, or on
/// the level cap (then NumericalError carrying the best bound).
SlopeResult drive_sampler(const OperatorSpec& t, const Vec& x, double tol, QuotientPool& pool) {
    const int n = t.dim();
    const double r0 = 2.0 * (norm(x) + 1.0);
    const double h0 = r0 / 8.0;
    const double min_polar_target = std::max(tol / 4.0, 1e-9);
    const double fine_floor =
        std::max(2.0 * r0 / static_cast<double>(fine_lattice_axis_cap(n)), tol);

    const std::vector<Vec> dirs = direction_grid(n, polar_direction_count(n));
    const double polar_reach = std::min(r0, 4.0);

    auto add_polar_ring = [&](double radius) {
        for (const Vec& u : dirs) {
            const Vec y = x + radius * u;
            const ConvexSet img = evaluate(t, y);
            if (img.is<EmptySet>()) continue;
            std::vector<Vec> reps = sample_points(img, polar_reach);
            if (reps.size() > 16) reps.resize(16);
            for (const Vec& ystar : reps) pool.add({y, ystar});
        }
    };

    auto add_lattice = [&](double radius, double step) {
        const GraphSample s = sample_graph(t, radius, step);
        for (const GraphPoint& p : s.points()) pool.add(p);
    };

    constexpr int kMaxLevel = 27;
    double fine_h = h0;
    bool fine_done = false;
    double polar_min = h0 / 4.0;
    bool polar_done = false;
    double ray_radius = r0;
    double prev_value = 0.0;
    double max_radius = r0;

    // Level 0 polar radii: geometric ladder from r0/2 down to h0/4.
    SlopeResult res;
    res.is_lower_bound = true;

    for (int level = 0; level <= kMaxLevel; ++level) {
        if (level == 0) {
            add_lattice(r0, fine_h);
            for (double rad = r0 / 2.0; rad >= polar_min * 0.999; rad *= 0.5) add_polar_ring(rad);
        } else {
            if (!fine_done) {
                const double next = fine_h / 2.0;
                if (next < fine_floor * 0.999) {
                    fine_done = true;
                } else {
                    fine_h = next;
                    add_lattice(r0, fine_h);  // refined lattice (supersets are fine)
                }
            }
            if (!polar_done) {
                polar_min /= 2.0;
                add_polar_ring(polar_min);
                if (polar_min <= min_polar_target) polar_done = true;
            }
        }
        // Doubling coarse lattice for ray growth, every level.
        ray_radius = r0 * std::pow(2.0, level);
        max_radius = std::max(max_radius, ray_radius);
        add_lattice(ray_radius, ray_radius / ray_lattice_axis_nodes(n));

        const double value = pool.value();
        if (value > kDivergenceThreshold) {
            res.value = ExtReal::infinity();
            res.converged = true;
            res.truncation_radius = max_radius;
            res.density = polar_min;
            res.degenerate = !pool.any();
            return res;
        }
        const bool refined = fine_done && polar_done;
        if (refined && level > 0 && value - prev_value < tol / 4.0) {
            res.value = value;
            res.converged = true;
            res.truncation_radius = max_radius;
            res.density = polar_min;
            res.degenerate = !pool.any();
            return res;
        }
        prev_value = value;
    }
    throw NumericalError("slope_estimate: level cap reached before convergence", pool.value());
}

}  // namespace

SlopeResult slope_exact(const GraphSample& s, const Vec& x, const Vec& xstar) {
    if (s.dim() != x.dim() || s.dim() != xstar.dim())
        throw InvalidInputError("slope_exact: dimension mismatch");
    QuotientPool pool(x, xstar);
    for (const GraphPoint& p : s.points()) pool.add(p);
    SlopeResult res;
    res.value = pool.value();
    res.truncation_radius = s.truncation_radius();
    res.density = s.density();
    res.is_lower_bound = !s.exhaustive();
    res.converged = true;
    res.degenerate = !pool.any();
    return res;
}

SlopeResult slope_estimate(const OperatorSpec& t, const Vec& x, const Vec& xstar, double tol) {
    if (x.dim() != t.dim() || xstar.dim() != t.dim())
        throw InvalidInputError("slope_estimate: dimension mismatch");
    if (!(tol > 0.0)) throw InvalidInputError("slope_estimate: tol must be > 0");

    if (t.is<FiniteGraphOp>())
        return slope_exact(t.get<FiniteGraphOp>().graph, x, xstar);

    QuotientPool pool(x, xstar);
    return drive_sampler(t, x, tol, pool);
}

ExtReal image_distance(const OperatorSpec& t, const Vec& x, const Vec& xstar) {
    return set_distance(evaluate(t, x), xstar);
}

Verdict regularity_gap(const OperatorSpec& t, const std::vector<std::pair<Vec, Vec>>& queries,
                       double tol) {
    if (queries.empty()) throw InvalidInputError("regularity_gap: no queries");

    double worst = 0.0;
    bool holds = true;
    std::vector<Witness> witnesses;
    for (const auto& [x, xstar] : queries) {
        const SlopeResult L = slope_estimate(t, x, xstar, tol);
        const ExtReal d = image_distance(t, x, xstar);

        // One-sided bound first: the sampled slope lower-bounds the true one,
        // so slope <= distance must hold unconditionally.
        if (d.is_finite() && L.value.is_finite() &&
            L.value.value() > d.value() + kOneSidedSlack) {
            holds = false;
            worst = std::max(worst, L.value.value() - d.value());
            witnesses.push_back({"one_sided_x", x});
            witnesses.push_back({"one_sided_xstar", xstar});
            continue;
        }
        if (L.value.is_infinite() && d.is_finite()) {
            holds = false;
            worst = std::numeric_limits<double>::max();
            witnesses.push_back({"slope_infinite_x", x});
            continue;
        }

        const ExtReal gap = ext_gap(L.value, d);
        if (gap.is_infinite()) {
            // d infinite, slope finite: finiteness disagreement.
            holds = false;
            worst = std::numeric_limits<double>::max();
            witnesses.push_back({"finiteness_x", x});
            witnesses.push_back({"finiteness_xstar", xstar});
            continue;
        }
        if (gap.value() > worst) {
            worst = gap.value();
            if (gap.value() > tol) {
                holds = false;
                witnesses.push_back({"gap_x", x});
                witnesses.push_back({"gap_xstar", xstar});
            }
        }
    }
    return Verdict(TheoremId::RegularityGap, holds, worst, tol, std::move(witnesses),
                   {{"queries", static_cast<double>(queries.size())}, {"tol", tol}});
}

SlopeResult slope_enlarged(const OperatorSpec& t, double eps, const Vec& x, const Vec& xstar,
                           double tol) {
    if (!(eps >= 0.0)) throw InvalidInputError("slope_enlarged: eps must be >= 0");
    if (!(tol > 0.0)) throw InvalidInputError("slope_enlarged: tol must be > 0");

    QuotientPool pool(x, xstar, 64);
    SlopeResult base;
    if (t.is<FiniteGraphOp>()) {
        for (const GraphPoint& p : t.get<FiniteGraphOp>().graph.points()) pool.add(p);
        base.value = pool.value();
        base.is_lower_bound = false;
        base.converged = true;
        base.degenerate = !pool.any();
    } else {
        base = drive_sampler(t, x, tol, pool);
    }
    if (base.value.is_infinite()) return base;  // diverges for every eps shift scan

    const ExtReal d = image_distance(t, x, xstar);
    const double delta_max = d.is_finite() ? d.value() + 1.0 : 10.0;
    const int delta_steps = 32;
    const std::vector<Vec> udirs = direction_grid(x.dim(), x.dim() == 1 ? 2 : 16);

    // Scan realizations y* = z* + u* with ||u*|| <= delta over the retained
    // best pairs; the aligned direction u* = delta*(x - y)/||x - y|| is
    // always included, which is where the inner supremum is attained.
    double sup = 0.0;
    bool any = false;
    for (const auto& [quot, p] : pool.best_pairs()) {
        const Vec diff = p.y - x;
        const double nd = norm(diff);
        if (nd < kExcludePairTol) continue;
        any = true;
        const Vec unit = (1.0 / nd) * diff;
        for (int k = 0; k <= delta_steps; ++k) {
            const double delta = delta_max * k / delta_steps;
            // aligned u*: contributes quot + delta - eps - delta = quot - eps
            sup = std::max(sup, quot - eps);
            for (const Vec& w : udirs) {
                const double term = quot + delta * dot(w, -1.0 * unit) - eps - delta;
                sup = std::max(sup, term);
            }
        }
    }

    SlopeResult res = base;
    res.value = any ? std::max(0.0, sup) : 0.0;
    res.degenerate = !any;
    return res;
}

}  // namespace monotone
