#include "monotone/scenario.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "monotone/catalog.hpp"
#include "monotone/errors.hpp"
#include "monotone/theorems.hpp"

namespace monotone {
namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw ScenarioParseError(where + ": " + what);
}

Vec parse_vec(const json& j, const std::string& where) {
    if (!j.is_array() || j.empty()) fail(where, "expected a nonempty coordinate array");
    std::vector<double> coords;
    for (const auto& c : j) {
        if (!c.is_number()) fail(where, "coordinates must be numbers");
        coords.push_back(c.get<double>());
    }
    return Vec(coords);
}

Matrix parse_matrix(const json& j, const std::string& where) {
    if (!j.is_array() || j.empty()) fail(where, "expected a matrix (array of rows)");
    const int n = static_cast<int>(j.size());
    std::vector<double> entries;
    for (const auto& row : j) {
        if (!row.is_array() || static_cast<int>(row.size()) != n)
            fail(where, "matrix must be square");
        for (const auto& c : row) entries.push_back(c.get<double>());
    }
    return Matrix(n, std::move(entries));
}

OperatorSpec parse_operator(const json& j,
                            const std::vector<std::pair<std::string, OperatorSpec>>& known,
                            const std::string& where) {
    if (!j.is_object()) fail(where, "operator must be an object");
    const std::string type = j.value("type", "");
    if (type == "linear") return OperatorSpec::linear(parse_matrix(j.at("matrix"), where));
    if (type == "norm_subdiff")
        return OperatorSpec::norm_subdiff(j.at("lambda").get<double>(),
                                          parse_vec(j.at("center"), where));
    if (type == "box_normal_cone")
        return OperatorSpec::box_normal_cone(parse_vec(j.at("lo"), where),
                                             parse_vec(j.at("hi"), where));
    if (type == "smooth_gradient") {
        const std::string kind = j.value("kind", "sqrt1p");
        if (kind != "sqrt1p") fail(where, "unknown smooth_gradient kind '" + kind + "'");
        return OperatorSpec::smooth_gradient(SmoothKind::Sqrt1p, j.at("dim").get<int>());
    }
    if (type == "finite_graph") {
        std::vector<GraphPoint> pts;
        for (const auto& p : j.at("points"))
            pts.push_back({parse_vec(p.at("y"), where), parse_vec(p.at("ystar"), where)});
        if (pts.empty()) fail(where, "finite_graph needs at least one point");
        const double r = j.value("truncation_radius", 1.0);
        const double h = j.value("density", 1.0);
        return OperatorSpec::finite_graph(GraphSample(std::move(pts), "finite_graph", r, h, true));
    }
    if (type == "sum") {
        std::vector<OperatorSpec> members;
        for (const auto& m : j.at("members")) {
            if (m.is_string()) {
                const std::string id = m.get<std::string>();
                bool found = false;
                for (const auto& [known_id, op] : known)
                    if (known_id == id) {
                        members.push_back(op);
                        found = true;
                        break;
                    }
                if (!found) fail(where, "sum member references unknown operator '" + id + "'");
            } else {
                members.push_back(parse_operator(m, known, where + ".members"));
            }
        }
        return OperatorSpec::sum(std::move(members));
    }
    fail(where, "unknown operator type '" + type + "'");
}

std::vector<Vec> parse_grid(const json& j, const std::string& where) {
    std::vector<Vec> grid;
    if (j.is_array()) {
        for (const auto& p : j) grid.push_back(parse_vec(p, where));
        return grid;
    }
    if (!j.is_object()) fail(where, "grid must be an object or a point list");
    const json& jmin = j.at("min");
    const json& jmax = j.at("max");
    const int count = j.at("points").get<int>();
    if (count < 1) fail(where, "grid needs at least one point");
    if (jmin.is_number()) {
        const double lo = jmin.get<double>(), hi = jmax.get<double>();
        for (int i = 0; i < count; ++i) {
            const double t = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
            grid.push_back(Vec{lo + t * (hi - lo)});
        }
        return grid;
    }
    const Vec lo = parse_vec(jmin, where), hi = parse_vec(jmax, where);
    // Product grid, lexicographic.
    const int n = lo.dim();
    std::vector<int> idx(static_cast<std::size_t>(n), 0);
    for (;;) {
        Vec p = Vec::zero(n);
        for (int i = 0; i < n; ++i) {
            const double t =
                count == 1 ? 0.0 : static_cast<double>(idx[static_cast<std::size_t>(i)]) / (count - 1);
            p[i] = lo[i] + t * (hi[i] - lo[i]);
        }
        grid.push_back(p);
        int i = n - 1;
        while (i >= 0 && idx[static_cast<std::size_t>(i)] == count - 1) {
            idx[static_cast<std::size_t>(i)] = 0;
            --i;
        }
        if (i < 0) break;
        ++idx[static_cast<std::size_t>(i)];
    }
    return grid;
}

CheckSpec parse_check(const json& j, const std::string& where) {
    CheckSpec c;
    c.theorem = theorem_id_from_string(j.value("theorem", ""));
    c.operator_id = j.value("operator", "");
    if (c.operator_id.empty()) fail(where, "check needs an 'operator' id");
    c.s_operator_id = j.value("s_operator", "");
    for (const auto& [key, value] : j.items()) {
        if (key == "theorem" || key == "operator" || key == "s_operator" || key == "points" ||
            key == "grid")
            continue;
        if (key == "eps" && value.is_array()) {
            for (const auto& e : value) c.eps_list.push_back(e.get<double>());
            continue;
        }
        if (value.is_number()) c.params[key] = value.get<double>();
    }
    if (j.contains("points"))
        for (const auto& p : j.at("points")) c.points.push_back(parse_vec(p, where + ".points"));
    if (j.contains("grid")) c.grid = parse_grid(j.at("grid"), where + ".grid");
    return c;
}

double param_or(const CheckSpec& c, const char* key, double fallback) {
    const auto it = c.params.find(key);
    return it == c.params.end() ? fallback : it->second;
}

/// Default tolerance per theorem, overridable by the scenario's tolerance
/// map and by the check's own "tol" field.
double resolve_tol(const Scenario& s, const CheckSpec& c) {
    if (const auto it = c.params.find("tol"); it != c.params.end()) return it->second;
    static const std::map<TheoremId, std::pair<const char*, double>> defaults = {
        {TheoremId::RegularityGap, {"regularity", 1e-3}},
        {TheoremId::Cor5, {"regularity", 1e-3}},
        {TheoremId::Thm2Identity, {"thm2", 1e-3}},
        {TheoremId::Thm4SM2, {"sm2", 1e-6}},
        {TheoremId::RemarkChain, {"remark", 1e-3}},
        {TheoremId::Thm9, {"thm9", 1e-9}},
    };
    const auto it = defaults.find(c.theorem);
    if (it == defaults.end()) return 0.0;  // intrinsic tolerance checks
    const auto tol_it = s.tolerances.find(it->second.first);
    return tol_it == s.tolerances.end() ? it->second.second : tol_it->second;
}

const OperatorSpec& find_operator(const Scenario& s, const std::string& id,
                                  const std::string& where) {
    for (const auto& [known_id, op] : s.operators)
        if (known_id == id) return op;
    fail(where, "unknown operator id '" + id + "'");
}

std::vector<Verdict> dispatch_check(const Scenario& s, const CheckSpec& c, std::uint64_t seed,
                                    const Overrides& overrides) {
    const OperatorSpec& op = find_operator(s, c.operator_id, "checks");
    const double tol = overrides.tol.value_or(resolve_tol(s, c));
    seed = static_cast<std::uint64_t>(param_or(c, "seed", static_cast<double>(seed)));

    switch (c.theorem) {
        case TheoremId::RegularityGap:
            return {check_regularity(op, static_cast<int>(param_or(c, "queries", 200)), seed, tol)};
        case TheoremId::Cor5:
            return {check_cor5(op, static_cast<int>(param_or(c, "queries", 200)), seed, tol)};
        case TheoremId::Thm1: {
            if (c.s_operator_id.empty()) fail("checks", "Thm1 needs 's_operator'");
            const OperatorSpec& sop = find_operator(s, c.s_operator_id, "checks");
            return {check_thm1(op, sop, static_cast<int>(param_or(c, "trials", 500)), seed)};
        }
        case TheoremId::Thm2Identity:
            return {check_thm2_identity(op, static_cast<int>(param_or(c, "queries", 50)), seed,
                                        tol)};
        case TheoremId::Thm4SM2:
            return {check_sm2_battery(op, static_cast<int>(param_or(c, "instances", 200)), seed,
                                      tol)};
        case TheoremId::Lemma6:
            return {check_lemma6(op, static_cast<int>(param_or(c, "draws", 1000)), seed)};
        case TheoremId::Thm7a: {
            std::vector<Verdict> out;
            for (double eps : c.eps_list.empty() ? std::vector<double>{param_or(c, "eps", 0.5)}
                                                 : c.eps_list)
                out.push_back(
                    check_thm7a(op, eps, static_cast<int>(param_or(c, "trials", 200)), seed));
            return out;
        }
        case TheoremId::Thm7b: {
            if (c.points.empty()) fail("checks", "Thm7b needs evaluation 'points'");
            std::vector<Verdict> out;
            for (double eps : c.eps_list.empty() ? std::vector<double>{param_or(c, "eps", 0.25)}
                                                 : c.eps_list)
                out.push_back(check_thm7b(op, eps, c.points,
                                          static_cast<int>(param_or(c, "directions", 32))));
            return out;
        }
        case TheoremId::Thm7c: {
            std::vector<Verdict> out;
            for (double eps : c.eps_list.empty() ? std::vector<double>{param_or(c, "eps", 0.5)}
                                                 : c.eps_list)
                out.push_back(
                    check_thm7c(op, eps, static_cast<int>(param_or(c, "trials", 1000)), seed));
            return out;
        }
        case TheoremId::Thm7d: {
            std::vector<Verdict> out;
            for (double eps : c.eps_list.empty() ? std::vector<double>{param_or(c, "eps", 0.5)}
                                                 : c.eps_list)
                out.push_back(
                    check_thm7d(op, eps, static_cast<int>(param_or(c, "trials", 24)), seed));
            return out;
        }
        case TheoremId::RemarkChain:
            return {check_remark_chain(op, static_cast<int>(param_or(c, "queries", 100)), seed,
                                       tol)};
        case TheoremId::Thm8: {
            if (c.grid.empty()) fail("checks", "Thm8 needs a 'grid'");
            const std::vector<double> eps =
                c.eps_list.empty() ? std::vector<double>{param_or(c, "eps", 0.5)} : c.eps_list;
            return {check_thm8(op, eps, c.grid)};
        }
        case TheoremId::Thm9: {
            if (c.grid.empty()) fail("checks", "Thm9 needs a 'grid'");
            const std::vector<double> eps =
                c.eps_list.empty() ? std::vector<double>{param_or(c, "eps", 1.0)} : c.eps_list;
            return {check_thm9(op, eps, c.grid, tol)};
        }
    }
    throw InternalError("dispatch_check: unhandled theorem id");
}

}  // namespace

Scenario parse_scenario_text(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ScenarioParseError(std::string("scenario JSON: ") + e.what());
    }
    if (!j.is_object()) throw ScenarioParseError("scenario: top level must be an object");

    Scenario s;
    s.name = j.value("name", "unnamed");
    if (j.contains("seed")) s.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("tolerances"))
        for (const auto& [key, value] : j.at("tolerances").items())
            s.tolerances[key] = value.get<double>();
    if (j.contains("settings")) {
        const json& st = j.at("settings");
        s.radius = st.value("radius", s.radius);
        s.density = st.value("density", s.density);
        s.jobs = st.value("jobs", s.jobs);
    }
    if (!j.contains("operators")) throw ScenarioParseError("scenario: missing 'operators'");
    for (const auto& jop : j.at("operators")) {
        const std::string id = jop.value("id", "");
        if (id.empty()) throw ScenarioParseError("operators: every operator needs an 'id'");
        for (const auto& [known_id, op] : s.operators)
            if (known_id == id) throw ScenarioParseError("operators: duplicate id '" + id + "'");
        s.operators.emplace_back(id, parse_operator(jop, s.operators, "operators." + id));
    }
    if (!j.contains("checks")) throw ScenarioParseError("scenario: missing 'checks'");
    int index = 0;
    for (const auto& jc : j.at("checks")) {
        s.checks.push_back(parse_check(jc, "checks[" + std::to_string(index) + "]"));
        ++index;
    }
    return s;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ScenarioParseError("cannot open scenario file '" + path + "'");
    std::stringstream buf;
    buf << f.rdbuf();
    return parse_scenario_text(buf.str());
}

namespace {

json operator_to_json(const OperatorSpec& op) {
    json j;
    if (op.is<LinearOp>()) {
        j["type"] = "linear";
        const Matrix& a = op.get<LinearOp>().a;
        json rows = json::array();
        for (int i = 0; i < a.dim(); ++i) {
            json row = json::array();
            for (int k = 0; k < a.dim(); ++k) row.push_back(a(i, k));
            rows.push_back(row);
        }
        j["matrix"] = rows;
    } else if (op.is<NormSubdiffOp>()) {
        const auto& o = op.get<NormSubdiffOp>();
        j["type"] = "norm_subdiff";
        j["lambda"] = o.lambda;
        j["center"] = o.center.to_vector();
    } else if (op.is<BoxNormalConeOp>()) {
        const auto& o = op.get<BoxNormalConeOp>();
        j["type"] = "box_normal_cone";
        j["lo"] = o.lo.to_vector();
        j["hi"] = o.hi.to_vector();
    } else if (op.is<SmoothGradientOp>()) {
        j["type"] = "smooth_gradient";
        j["kind"] = "sqrt1p";
        j["dim"] = op.get<SmoothGradientOp>().dim;
    } else if (op.is<FiniteGraphOp>()) {
        const GraphSample& g = op.get<FiniteGraphOp>().graph;
        j["type"] = "finite_graph";
        json pts = json::array();
        for (const GraphPoint& p : g.points())
            pts.push_back({{"y", p.y.to_vector()}, {"ystar", p.ystar.to_vector()}});
        j["points"] = pts;
        j["truncation_radius"] = g.truncation_radius();
        j["density"] = g.density();
    } else {
        j["type"] = "sum";
        json members = json::array();
        for (const OperatorSpec& m : op.get<SumOp>().members) members.push_back(operator_to_json(m));
        j["members"] = members;
    }
    return j;
}

}  // namespace

std::string scenario_to_json(const Scenario& s) {
    json j;
    j["name"] = s.name;
    if (s.seed) j["seed"] = *s.seed;
    if (!s.tolerances.empty()) j["tolerances"] = s.tolerances;
    j["settings"] = {{"radius", s.radius}, {"density", s.density}, {"jobs", s.jobs}};
    json ops = json::array();
    for (const auto& [id, op] : s.operators) {
        json jop = operator_to_json(op);
        jop["id"] = id;
        ops.push_back(jop);
    }
    j["operators"] = ops;
    json checks = json::array();
    for (const CheckSpec& c : s.checks) {
        json jc;
        jc["theorem"] = to_string(c.theorem);
        jc["operator"] = c.operator_id;
        if (!c.s_operator_id.empty()) jc["s_operator"] = c.s_operator_id;
        for (const auto& [key, value] : c.params) jc[key] = value;
        if (!c.eps_list.empty()) jc["eps"] = c.eps_list;
        if (!c.points.empty()) {
            json pts = json::array();
            for (const Vec& p : c.points) pts.push_back(p.to_vector());
            jc["points"] = pts;
        }
        if (!c.grid.empty()) {
            json pts = json::array();
            for (const Vec& p : c.grid) pts.push_back(p.to_vector());
            jc["grid"] = pts;
        }
        checks.push_back(jc);
    }
    j["checks"] = checks;
    return j.dump(2) + "\n";
}

int run_scenario_collect(const Scenario& scenario, const Overrides& overrides,
                         std::vector<ReportEntry>& entries, std::ostream& err) {
    // Fail fast: a corrupted finite graph must be rejected before any
    // checker runs.
    for (const auto& [id, op] : scenario.operators) {
        std::vector<const GraphSample*> graphs;
        if (op.is<FiniteGraphOp>()) graphs.push_back(&op.get<FiniteGraphOp>().graph);
        if (op.is<SumOp>())
            for (const OperatorSpec& m : op.get<SumOp>().members)
                if (m.is<FiniteGraphOp>()) graphs.push_back(&m.get<FiniteGraphOp>().graph);
        for (const GraphSample* g : graphs) {
            const MonotonicityReport rep = validate_monotone(*g);
            if (!rep.holds) {
                err << "operator '" << id << "': finite graph is not monotone; worst pair "
                    << rep.witness_i.y.str() << "|" << rep.witness_i.ystar.str() << " vs "
                    << rep.witness_j.y.str() << "|" << rep.witness_j.ystar.str() << " gives "
                    << rep.worst << "\n";
                return 2;
            }
        }
    }

    std::uint64_t seed = 0;
    if (overrides.seed) {
        seed = *overrides.seed;
    } else if (scenario.seed) {
        seed = *scenario.seed;
    } else if (const char* env = std::getenv("MONOTONE_SEED")) {
        seed = std::strtoull(env, nullptr, 10);
    }

    const int jobs = std::max(1, overrides.jobs.value_or(scenario.jobs));
    std::vector<std::vector<ReportEntry>> results(scenario.checks.size());
    std::vector<std::string> errors(scenario.checks.size());

    auto run_one = [&](std::size_t i) {
        try {
            const auto t0 = std::chrono::steady_clock::now();
            const std::vector<Verdict> vs =
                dispatch_check(scenario, scenario.checks[i], seed, overrides);
            const auto t1 = std::chrono::steady_clock::now();
            const double ms =
                std::chrono::duration_cast<std::chrono::duration<double, std::milli>>(t1 - t0)
                    .count() /
                static_cast<double>(vs.size());
            for (const Verdict& v : vs) results[i].push_back({v, ms});
        } catch (const Error& e) {
            errors[i] = e.what();
        }
    };

    if (jobs == 1) {
        for (std::size_t i = 0; i < scenario.checks.size(); ++i) run_one(i);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < jobs; ++w)
            pool.emplace_back([&, w] {
                for (std::size_t i = static_cast<std::size_t>(w); i < scenario.checks.size();
                     i += static_cast<std::size_t>(jobs))
                    run_one(i);
            });
        for (std::thread& th : pool) th.join();
    }

    for (std::size_t i = 0; i < scenario.checks.size(); ++i) {
        if (!errors[i].empty()) {
            err << "check " << i << " (" << to_string(scenario.checks[i].theorem)
                << "): " << errors[i] << "\n";
            return 2;
        }
        for (ReportEntry& e : results[i]) entries.push_back(std::move(e));
    }

    bool all_hold = true;
    const Verdict* worst = nullptr;
    for (const ReportEntry& e : entries) {
        if (!e.verdict.holds()) {
            all_hold = false;
            if (worst == nullptr || e.verdict.worst_violation() > worst->worst_violation())
                worst = &e.verdict;
        }
    }
    if (!all_hold && worst != nullptr) {
        err << "violation: " << to_string(worst->id()) << " worst_violation "
            << worst->worst_violation() << " (tol " << worst->tol() << ")\n";
    }
    return all_hold ? 0 : 1;
}

int run_scenario(const std::string& path, const Overrides& overrides, std::ostream& out,
                 std::ostream& err) {
    Scenario scenario;
    try {
        scenario = load_scenario(path);
    } catch (const ScenarioParseError& e) {
        err << e.what() << "\n";
        return 2;
    }

    std::vector<ReportEntry> entries;
    int code;
    try {
        code = run_scenario_collect(scenario, overrides, entries, err);
    } catch (const Error& e) {
        err << e.what() << "\n";
        return 2;
    }
    if (code == 2) return 2;

    for (const ReportEntry& e : entries)
        out << (e.verdict.holds() ? "[ ok ] " : "[FAIL] ") << to_string(e.verdict.id())
            << "  worst=" << e.verdict.worst_violation() << " tol=" << e.verdict.tol() << "\n";

    const std::string base = overrides.out.value_or("report");
    const std::string format = overrides.format.value_or("json");
    try {
        if (format == "json" || format == "both")
            emit_report(entries, ReportFormat::Json, base + ".json", overrides.timings);
        if (format == "csv" || format == "both")
            emit_report(entries, ReportFormat::Csv, base + ".csv", overrides.timings);
        if (format != "json" && format != "csv" && format != "both") {
            err << "unknown report format '" << format << "'\n";
            return 2;
        }
    } catch (const Error& e) {
        err << e.what() << "\n";
        return 2;
    }
    return code;
}

}  // namespace monotone
