// Command-line front end: scenario-driven theorem checking plus ad-hoc
// slope / enlargement queries against the built-in operator catalog.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "monotone/catalog.hpp"
#include "monotone/enlargements.hpp"
#include "monotone/errors.hpp"
#include "monotone/report.hpp"
#include "monotone/scenario.hpp"
#include "monotone/slope.hpp"
#include "monotone/theorems.hpp"

namespace {

using namespace monotone;

Vec parse_coords(const std::string& text) {
    std::vector<double> coords;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) coords.push_back(std::stod(item));
    return Vec(coords);
}

OperatorSpec resolve_operator(const std::string& scenario_path, const std::string& op_id) {
    if (!scenario_path.empty()) {
        const Scenario s = load_scenario(scenario_path);
        for (const auto& [id, op] : s.operators)
            if (id == op_id) return op;
        throw InvalidInputError("operator '" + op_id + "' not found in " + scenario_path);
    }
    return catalog_operator(op_id);
}

void print_slope_result(const SlopeResult& r) {
    std::cout << "{\"value\":"
              << (r.value.is_infinite() ? "\"inf\"" : format_double(r.value.value()))
              << ",\"truncation_radius\":" << format_double(r.truncation_radius)
              << ",\"density\":" << format_double(r.density)
              << ",\"is_lower_bound\":" << (r.is_lower_bound ? "true" : "false")
              << ",\"converged\":" << (r.converged ? "true" : "false")
              << ",\"degenerate\":" << (r.degenerate ? "true" : "false") << "}\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"monotone operator calculus: slope functional, enlargements, theorem checks"};
    app.require_subcommand(1);

    // Shared flags (every flag has a scenario-file equivalent; flags win).
    std::string scenario_path;
    std::string op_id;
    std::optional<std::uint64_t> seed;
    std::optional<double> tol;
    std::optional<double> radius;
    std::optional<double> density;
    std::optional<int> jobs;
    std::string format = "json";
    std::string out_base = "report";
    bool timings = false;
    int dim = 1;

    auto* validate = app.add_subcommand("validate", "validate operator invariants");
    validate->add_option("scenario", scenario_path, "scenario file")->required();

    auto* slope = app.add_subcommand("slope", "slope functional / image distance at a query");
    std::string x_text, xstar_text;
    std::optional<double> slope_eps;
    slope->add_option("--scenario", scenario_path, "scenario file providing operators");
    slope->add_option("--op", op_id, "operator id (scenario or catalog)")->required();
    slope->add_option("--x", x_text, "query point, comma separated")->required();
    slope->add_option("--xstar", xstar_text, "dual query point")->required();
    slope->add_option("--tol", tol, "refinement tolerance");
    slope->add_option("--eps", slope_eps, "enlargement parameter (generalized slope)");

    auto* enlarge = app.add_subcommand("enlarge", "membership / set / domain probes");
    std::string mode = "membership";
    std::string kind_text = "norm";
    double eps = 0.0;
    std::string grid_text;
    enlarge->add_option("--scenario", scenario_path, "scenario file providing operators");
    enlarge->add_option("--op", op_id, "operator id")->required();
    enlarge->add_option("--mode", mode, "membership|polyhedron|probe")->required();
    enlarge->add_option("--kind", kind_text, "norm|const");
    enlarge->add_option("--eps", eps, "enlargement parameter")->required();
    enlarge->add_option("--x", x_text, "base point (membership/polyhedron)");
    enlarge->add_option("--xstar", xstar_text, "dual point (membership)");
    enlarge->add_option("--grid", grid_text, "probe grid min,max,count (1-d)");
    enlarge->add_option("--radius", radius, "sample truncation radius");
    enlarge->add_option("--density", density, "sample density");
    enlarge->add_option("--dim", dim, "dimension for catalog operators");

    auto* check = app.add_subcommand("check", "run a scenario's checks and write reports");
    check->add_option("scenario", scenario_path, "scenario file")->required();
    check->add_option("--seed", seed, "seed override");
    check->add_option("--tol", tol, "tolerance override for all checks");
    check->add_option("--radius", radius, "truncation radius override");
    check->add_option("--density", density, "density override");
    check->add_option("--jobs", jobs, "worker parallelism");
    check->add_option("--format", format, "json|csv|both");
    check->add_option("--out", out_base, "report base path");
    check->add_flag("--timings", timings, "include wall-clock runtimes (not byte-reproducible)");

    auto* report = app.add_subcommand("report", "re-render a JSON report in another format");
    std::string in_path;
    report->add_option("--in", in_path, "verdicts JSON produced by 'check'")->required();
    report->add_option("--format", format, "json|csv");
    report->add_option("--out", out_base, "output base path")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(validate)) {
            const Scenario s = load_scenario(scenario_path);
            std::vector<ReportEntry> unused;
            std::ostringstream sink;
            // Run only the fail-fast validation by dispatching zero checks.
            Scenario probe = s;
            probe.checks.clear();
            const int code = run_scenario_collect(probe, Overrides{}, unused, std::cerr);
            if (code == 2) return 2;
            std::cout << "operators valid: " << s.operators.size() << "\n";
            return 0;
        }

        if (app.got_subcommand(slope)) {
            const OperatorSpec op = resolve_operator(scenario_path, op_id);
            const Vec x = parse_coords(x_text);
            const Vec xstar = parse_coords(xstar_text);
            const double t = tol.value_or(1e-3);
            const SlopeResult r = slope_eps ? slope_enlarged(op, *slope_eps, x, xstar, t)
                                            : slope_estimate(op, x, xstar, t);
            print_slope_result(r);
            const ExtReal d = image_distance(op, x, xstar);
            std::cout << "{\"image_distance\":"
                      << (d.is_infinite() ? "\"inf\"" : format_double(d.value())) << "}\n";
            return 0;
        }

        if (app.got_subcommand(enlarge)) {
            const OperatorSpec op = resolve_operator(scenario_path, op_id);
            const EnlargementKind kind =
                kind_text == "const" ? EnlargementKind::Constant : EnlargementKind::NormWeighted;
            if (mode == "membership" || mode == "polyhedron") {
                const Vec x = parse_coords(x_text);
                EnlargementQuery q{kind, eps, x, radius.value_or(8.0), density.value_or(0.25)};
                if (mode == "membership") {
                    const Vec xstar = parse_coords(xstar_text);
                    const auto [member, worst] = enlargement_membership(op, q, xstar);
                    std::cout << "{\"member\":" << (member ? "true" : "false")
                              << ",\"worst\":" << format_double(worst) << "}\n";
                } else {
                    const GraphSample s = sample_graph(op, q.radius, q.density);
                    const ConvexSet poly = enlargement_polyhedron(s, q);
                    const auto& rows = poly.get<HalfspaceIntersection>().constraints;
                    std::cout << "{\"constraints\":" << rows.size() << "}\n";
                }
                return 0;
            }
            if (mode == "probe") {
                std::stringstream ss(grid_text);
                std::string item;
                std::vector<double> spec;
                while (std::getline(ss, item, ',')) spec.push_back(std::stod(item));
                if (spec.size() != 3)
                    throw InvalidInputError("--grid expects min,max,count");
                std::vector<Vec> grid;
                const int count = static_cast<int>(spec[2]);
                for (int i = 0; i < count; ++i) {
                    const double t01 = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
                    grid.push_back(Vec{spec[0] + t01 * (spec[1] - spec[0])});
                }
                for (const auto& [x, nonempty] : domain_probe(op, kind, eps, grid))
                    std::cout << format_double(x[0]) << ","
                              << (nonempty ? "nonempty" : "empty") << "\n";
                return 0;
            }
            throw InvalidInputError("unknown --mode '" + mode + "'");
        }

        if (app.got_subcommand(check)) {
            Overrides o;
            o.seed = seed;
            o.tol = tol;
            o.radius = radius;
            o.density = density;
            o.jobs = jobs;
            o.format = format;
            o.out = out_base;
            o.timings = timings;
            return run_scenario(scenario_path, o, std::cout, std::cerr);
        }

        if (app.got_subcommand(report)) {
            // Re-render: parse the emitted JSON back into entries.
            const std::vector<ReportEntry> entries = [&] {
                std::ifstream f(in_path, std::ios::binary);
                if (!f) throw InvalidInputError("cannot open '" + in_path + "'");
                std::stringstream buf;
                buf << f.rdbuf();
                return parse_report_entries(buf.str());
            }();
            const ReportFormat fmt = format == "csv" ? ReportFormat::Csv : ReportFormat::Json;
            emit_report(entries, fmt, out_base + (fmt == ReportFormat::Csv ? ".csv" : ".json"),
                        true);
            std::cout << "wrote " << entries.size() << " verdicts\n";
            return 0;
        }
    } catch (const ScenarioParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const InvalidInputError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }
    return 0;
}
