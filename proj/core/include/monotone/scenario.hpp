#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "monotone/operators.hpp"
#include "monotone/report.hpp"
#include "monotone/verdict.hpp"

namespace monotone {

/// One check line of a scenario file.
struct CheckSpec {
    TheoremId theorem;
    std::string operator_id;
    std::string s_operator_id;               // Thm1 only
    std::map<std::string, double> params;    // queries/trials/draws/eps/tol/...
    std::vector<double> eps_list;            // Thm8/Thm9/Thm7b sweeps
    std::vector<Vec> points;                 // Thm7b evaluation points
    std::vector<Vec> grid;                   // probe grids
};

struct Scenario {
    std::string name;
    std::optional<std::uint64_t> seed;  // absent: MONOTONE_SEED, then 0
    std::map<std::string, double> tolerances;
    double radius = 8.0;
    double density = 0.25;
    int jobs = 1;
    std::vector<std::pair<std::string, OperatorSpec>> operators;
    std::vector<CheckSpec> checks;
};

/// Raised on malformed scenario files; the message carries a field path.
class ScenarioParseError : public Error {
public:
    using Error::Error;
};

Scenario parse_scenario_text(const std::string& json_text);
Scenario load_scenario(const std::string& path);

std::string scenario_to_json(const Scenario& s);

/// Flag-level overrides; flags win over scenario fields, which win over the
/// MONOTONE_SEED environment fallback.
struct Overrides {
    std::optional<std::uint64_t> seed;
    std::optional<double> tol;
    std::optional<double> radius;
    std::optional<double> density;
    std::optional<int> jobs;
    std::optional<std::string> format;  // "json", "csv" or "both"
    std::optional<std::string> out;     // report base path
    bool timings = false;
};

/// Executes every check of the scenario and writes report files.
/// Exit code 0: all verdicts hold; 1: at least one violation (worst verdict
/// summarized on `err`); 2: invalid input or configuration.
int run_scenario(const std::string& path, const Overrides& overrides, std::ostream& out,
                 std::ostream& err);

/// The same, returning the verdicts for in-process callers.
int run_scenario_collect(const Scenario& scenario, const Overrides& overrides,
                         std::vector<ReportEntry>& entries, std::ostream& err);

}  // namespace monotone
