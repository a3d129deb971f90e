#include "monotone/lp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "monotone/errors.hpp"
#include "monotone/rng.hpp"

namespace monotone {
namespace {

constexpr double kFeasEps = 1e-9;

struct Row {
    // <a, w> >= b with ||a||_2 == 1 after normalization.
    std::array<double, kMaxDim> a;
    double b;
};

struct SubResult {
    LpStatus status;
    std::array<double, kMaxDim> w;
};

bool violated(const Row& r, const std::array<double, kMaxDim>& w, int n) {
    double s = 0.0;
    for (int j = 0; j < n; ++j) s += r.a[static_cast<std::size_t>(j)] * w[static_cast<std::size_t>(j)];
    return s < r.b - kFeasEps * std::max(1.0, std::abs(r.b));
}

// Seidel's randomized incremental LP: maximize <c, w> over the rows plus the
// implicit box |w_j| <= box. On a violated row the optimum lies on that row's
// hyperplane; we eliminate the largest-coefficient variable and recurse on
// the rows seen so far.
SubResult seidel(std::vector<Row> rows, std::array<double, kMaxDim> c, int n, double box,
                 Rng& rng) {
    SubResult res{LpStatus::Optimal, {}};

    if (n == 1) {
        double lo = -box, hi = box;
        for (const Row& r : rows) {
            const double a = r.a[0];
            if (std::abs(a) <= 1e-13) {
                if (r.b > kFeasEps) return {LpStatus::Infeasible, {}};
                continue;
            }
            if (a > 0.0)
                lo = std::max(lo, r.b / a);
            else
                hi = std::min(hi, r.b / a);
        }
        if (lo > hi + kFeasEps * std::max(1.0, std::abs(lo)))
            return {LpStatus::Infeasible, {}};
        if (lo > hi) hi = lo;  // collapse the tolerance sliver
        res.w[0] = c[0] > 0.0 ? hi : (c[0] < 0.0 ? lo : std::clamp(0.0, lo, hi));
        return res;
    }

    // Start at the box corner maximizing the objective.
    for (int j = 0; j < n; ++j) {
        const double cj = c[static_cast<std::size_t>(j)];
        res.w[static_cast<std::size_t>(j)] = cj > 0.0 ? box : (cj < 0.0 ? -box : 0.0);
    }

    // Deterministic shuffle (Fisher-Yates with the provided stream).
    for (std::size_t i = rows.size(); i > 1; --i) {
        const std::size_t j = rng.next_u64() % i;
        std::swap(rows[i - 1], rows[j]);
    }

    for (std::size_t i = 0; i < rows.size(); ++i) {
        const Row& r = rows[i];
        if (!violated(r, res.w, n)) continue;

        // Optimum of the first i+1 rows lies on <a, w> = b. Substitute out
        // the largest-magnitude coordinate of a.
        int k = 0;
        for (int j = 1; j < n; ++j)
            if (std::abs(r.a[static_cast<std::size_t>(j)]) > std::abs(r.a[static_cast<std::size_t>(k)])) k = j;
        const double ak = r.a[static_cast<std::size_t>(k)];
        if (std::abs(ak) <= 1e-13) {
            if (r.b > kFeasEps) return {LpStatus::Infeasible, {}};
            continue;
        }

        // Map index j != k of the parent space to position in the subspace.
        auto reduce = [&](const std::array<double, kMaxDim>& pa, double pb) -> Row {
            Row out{};
            const double pk = pa[static_cast<std::size_t>(k)];
            int t = 0;
            for (int j = 0; j < n; ++j) {
                if (j == k) continue;
                out.a[static_cast<std::size_t>(t++)] =
                    pa[static_cast<std::size_t>(j)] - pk * r.a[static_cast<std::size_t>(j)] / ak;
            }
            out.b = pb - pk * r.b / ak;
            return out;
        };

        std::vector<Row> sub;
        sub.reserve(i + 2);
        for (std::size_t t = 0; t < i; ++t) sub.push_back(reduce(rows[t].a, rows[t].b));
        {
            // Box bounds of the eliminated coordinate become ordinary rows.
            std::array<double, kMaxDim> ek{};
            ek[static_cast<std::size_t>(k)] = 1.0;
            sub.push_back(reduce(ek, -box));  //  w_k >= -box
            ek[static_cast<std::size_t>(k)] = -1.0;
            sub.push_back(reduce(ek, -box));  // -w_k >= -box
        }
        // Renormalize sub rows so the feasibility tolerance keeps meaning.
        for (Row& s : sub) {
            double nrm = 0.0;
            for (int j = 0; j < n - 1; ++j)
                nrm += s.a[static_cast<std::size_t>(j)] * s.a[static_cast<std::size_t>(j)];
            nrm = std::sqrt(nrm);
            if (nrm > 1e-13) {
                for (int j = 0; j < n - 1; ++j) s.a[static_cast<std::size_t>(j)] /= nrm;
                s.b /= nrm;
            }
        }

        std::array<double, kMaxDim> sub_c{};
        {
            const double ck = c[static_cast<std::size_t>(k)];
            int t = 0;
            for (int j = 0; j < n; ++j) {
                if (j == k) continue;
                sub_c[static_cast<std::size_t>(t++)] =
                    c[static_cast<std::size_t>(j)] - ck * r.a[static_cast<std::size_t>(j)] / ak;
            }
        }

        SubResult s = seidel(std::move(sub), sub_c, n - 1, box, rng);
        if (s.status == LpStatus::Infeasible) return s;

        // Lift back: fill the free coordinates, then solve for w_k.
        std::array<double, kMaxDim> w{};
        int t = 0;
        double acc = r.b;
        for (int j = 0; j < n; ++j) {
            if (j == k) continue;
            w[static_cast<std::size_t>(j)] = s.w[static_cast<std::size_t>(t++)];
            acc -= r.a[static_cast<std::size_t>(j)] * w[static_cast<std::size_t>(j)];
        }
        w[static_cast<std::size_t>(k)] = acc / ak;
        res.w = w;
    }
    return res;
}

}  // namespace

LpResult lp_maximize(std::span<const Halfspace> constraints, const Vec& objective, double box) {
    const int n = objective.dim();
    if (n < 1 || n > kMaxDim) throw InvalidInputError("lp_maximize: bad dimension");

    std::vector<Row> rows;
    rows.reserve(constraints.size());
    for (const Halfspace& h : constraints) {
        if (h.a.dim() != n) throw InvalidInputError("lp_maximize: constraint dimension mismatch");
        const double nrm = norm(h.a);
        if (nrm <= 1e-13) {
            if (h.b > kFeasEps) return {LpStatus::Infeasible, Vec::zero(n), 0.0};
            continue;
        }
        Row r{};
        for (int j = 0; j < n; ++j) r.a[static_cast<std::size_t>(j)] = h.a[j] / nrm;
        r.b = h.b / nrm;
        rows.push_back(r);
    }

    // Seed depends only on the problem size: identical inputs, identical run.
    Rng rng = Rng::derive(0x5E1DE1u ^ (static_cast<std::uint64_t>(rows.size()) << 8), "lp");

    std::array<double, kMaxDim> c{};
    for (int j = 0; j < n; ++j) c[static_cast<std::size_t>(j)] = objective[j];

    const SubResult s = seidel(std::move(rows), c, n, box, rng);
    if (s.status == LpStatus::Infeasible) return {LpStatus::Infeasible, Vec::zero(n), 0.0};

    Vec w = Vec::zero(n);
    for (int j = 0; j < n; ++j) w[j] = s.w[static_cast<std::size_t>(j)];
    for (int j = 0; j < n; ++j)
        if (std::abs(w[j]) >= box * (1.0 - 1e-6)) return {LpStatus::Unbounded, w, dot(objective, w)};
    return {LpStatus::Optimal, w, dot(objective, w)};
}

}  // namespace monotone
