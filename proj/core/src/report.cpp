#include "monotone/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include <nlohmann/json.hpp>

#include "monotone/errors.hpp"
#include "monotone/theorems.hpp"

namespace monotone {

std::string format_double(double v) {
    if (std::isinf(v)) return v > 0 ? "\"inf\"" : "\"-inf\"";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

std::string csv_double(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void render_vec(std::string& out, const Vec& v) {
    out += '[';
    for (int i = 0; i < v.dim(); ++i) {
        if (i) out += ',';
        out += format_double(v[i]);
    }
    out += ']';
}

std::string render_json(const std::vector<ReportEntry>& entries, bool include_timings) {
    std::string out = "[\n";
    for (std::size_t k = 0; k < entries.size(); ++k) {
        const Verdict& v = entries[k].verdict;
        out += "  {\"theorem\":\"" + to_string(v.id()) + "\",";
        out += "\"holds\":" + std::string(v.holds() ? "true" : "false") + ",";
        out += "\"worst_violation\":" + format_double(v.worst_violation()) + ",";
        out += "\"tol\":" + format_double(v.tol()) + ",";
        out += "\"params\":{";
        bool first = true;
        for (const auto& [key, value] : v.params()) {
            if (!first) out += ',';
            first = false;
            out += '"' + key + "\":" + format_double(value);
        }
        out += "},\"witnesses\":[";
        first = true;
        for (const Witness& w : v.witnesses()) {
            if (!first) out += ',';
            first = false;
            out += "{\"label\":\"" + w.label + "\",\"v\":";
            render_vec(out, w.v);
            out += '}';
        }
        out += "],\"runtime_ms\":" +
               format_double(include_timings ? entries[k].runtime_ms : 0.0) + "}";
        if (k + 1 < entries.size()) out += ',';
        out += '\n';
    }
    out += "]\n";
    return out;
}

std::string csv_param(const Verdict& v, const char* key) {
    const auto it = v.params().find(key);
    return it == v.params().end() ? std::string() : csv_double(it->second);
}

std::string render_csv(const std::vector<ReportEntry>& entries, bool include_timings) {
    std::string out = "theorem_id,holds,worst_violation,eps,delta,lambda,seed,runtime_ms\n";
    for (const ReportEntry& e : entries) {
        const Verdict& v = e.verdict;
        out += to_string(v.id());
        out += ',';
        out += v.holds() ? "true" : "false";
        out += ',';
        out += csv_double(v.worst_violation());
        out += ',';
        out += csv_param(v, "eps");
        out += ',';
        out += csv_param(v, "delta");
        out += ',';
        out += csv_param(v, "lambda");
        out += ',';
        out += csv_param(v, "seed");
        out += ',';
        out += csv_double(include_timings ? e.runtime_ms : 0.0);
        out += '\n';
    }
    return out;
}

}  // namespace

std::string render_report(const std::vector<ReportEntry>& entries, ReportFormat format,
                          bool include_timings) {
    if (entries.empty()) throw InvalidInputError("render_report: no verdicts");
    return format == ReportFormat::Json ? render_json(entries, include_timings)
                                        : render_csv(entries, include_timings);
}

void emit_report(const std::vector<ReportEntry>& entries, ReportFormat format,
                 const std::string& path, bool include_timings) {
    const std::string text = render_report(entries, format, include_timings);
    std::ofstream f(path, std::ios::binary);
    if (!f) throw InvalidInputError("emit_report: cannot open '" + path + "' for writing");
    f << text;
    if (!f) throw InvalidInputError("emit_report: write to '" + path + "' failed");
}

void emit_report(const std::vector<Verdict>& verdicts, ReportFormat format,
                 const std::string& path) {
    std::vector<ReportEntry> entries;
    entries.reserve(verdicts.size());
    for (const Verdict& v : verdicts) entries.push_back({v, 0.0});
    emit_report(entries, format, path, false);
}

std::vector<ReportEntry> parse_report_entries(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InvalidInputError(std::string("report JSON: ") + e.what());
    }
    if (!j.is_array()) throw InvalidInputError("report JSON: expected an array");

    auto num = [](const nlohmann::json& v) -> double {
        if (v.is_string()) {
            const std::string s = v.get<std::string>();
            if (s == "inf") return std::numeric_limits<double>::infinity();
            if (s == "-inf") return -std::numeric_limits<double>::infinity();
            throw InvalidInputError("report JSON: bad numeric string '" + s + "'");
        }
        return v.get<double>();
    };

    std::vector<ReportEntry> out;
    for (const auto& jv : j) {
        std::map<std::string, double> params;
        for (const auto& [key, value] : jv.at("params").items()) params[key] = num(value);
        std::vector<Witness> wits;
        for (const auto& jw : jv.at("witnesses")) {
            std::vector<double> coords;
            for (const auto& c : jw.at("v")) coords.push_back(num(c));
            wits.push_back({jw.at("label").get<std::string>(), Vec(coords)});
        }
        Verdict v(theorem_id_from_string(jv.at("theorem").get<std::string>()),
                  jv.at("holds").get<bool>(), num(jv.at("worst_violation")), num(jv.at("tol")),
                  std::move(wits), std::move(params));
        out.push_back({std::move(v), num(jv.value("runtime_ms", nlohmann::json(0.0)))});
    }
    return out;
}

}  // namespace monotone
