#include "qopdist/report.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "json.hpp"
#include "qopdist/matrix_file.h"

namespace qopdist {

namespace {

using nlohmann::json;

template <typename T>
T field(const json& j, const char* key) {
    if (!j.contains(key)) {
        throw ParseError(std::string("report line lacks '") + key + "'");
    }
    try {
        return j[key].get<T>();
    } catch (const json::exception&) {
        throw ParseError(std::string("report field '") + key + "' has the wrong type");
    }
}

}  // namespace

void SuiteReport::add(CaseRecord record) {
    if (!std::isfinite(record.residual)) {
        record.residual = std::numeric_limits<double>::max();
        record.passed = false;
    }
    for (auto& [key, value] : record.values) {
        if (!std::isfinite(value)) {
            value = std::numeric_limits<double>::max();
            record.passed = false;
        }
    }
    ++n_cases;
    if (!record.passed) {
        ++n_failures;
    }
    worst_residual = std::max(worst_residual, record.residual);
    details.push_back(std::move(record));
}

std::string format_reports(const std::vector<SuiteReport>& reports) {
    std::ostringstream out;
    out << json{{"schema", kReportSchema}, {"version", kReportVersion}}.dump() << "\n";
    for (const SuiteReport& r : reports) {
        json head = {{"record", "suite"},
                     {"suite_name", r.suite_name},
                     {"n_cases", r.n_cases},
                     {"n_failures", r.n_failures},
                     {"worst_residual", r.worst_residual},
                     {"seed", r.seed},
                     {"elapsed_seconds", r.elapsed_seconds}};
        out << head.dump() << "\n";
        for (const CaseRecord& c : r.details) {
            json line = {{"record", "case"}, {"label", c.label}, {"residual", c.residual}, {"passed", c.passed}};
            line["values"] = json::object();
            for (const auto& [key, value] : c.values) {
                line["values"][key] = value;
            }
            out << line.dump() << "\n";
        }
    }
    return out.str();
}

std::vector<SuiteReport> parse_reports(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::vector<SuiteReport> reports;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        json j;
        try {
            j = json::parse(line);
        } catch (const json::parse_error& e) {
            throw ParseError(std::string("invalid report line: ") + e.what());
        }
        if (!header_seen) {
            if (field<std::string>(j, "schema") != kReportSchema || field<int>(j, "version") != kReportVersion) {
                throw ParseError("unsupported report schema");
            }
            header_seen = true;
            continue;
        }
        const std::string kind = field<std::string>(j, "record");
        if (kind == "suite") {
            SuiteReport r;
            r.suite_name = field<std::string>(j, "suite_name");
            r.n_cases = field<int>(j, "n_cases");
            r.n_failures = field<int>(j, "n_failures");
            r.worst_residual = field<double>(j, "worst_residual");
            r.seed = field<std::uint64_t>(j, "seed");
            r.elapsed_seconds = field<double>(j, "elapsed_seconds");
            reports.push_back(std::move(r));
        } else if (kind == "case") {
            if (reports.empty()) {
                throw ParseError("case line before any suite line");
            }
            CaseRecord c;
            c.label = field<std::string>(j, "label");
            c.residual = field<double>(j, "residual");
            c.passed = field<bool>(j, "passed");
            c.values = field<std::map<std::string, double>>(j, "values");
            reports.back().details.push_back(std::move(c));
        } else {
            throw ParseError("unknown record type '" + kind + "'");
        }
    }
    if (!header_seen) {
        throw ParseError("report has no schema header");
    }
    for (const SuiteReport& r : reports) {
        if (static_cast<size_t>(r.n_cases) != r.details.size() || r.n_failures > r.n_cases) {
            throw ParseError("suite '" + r.suite_name + "' counters disagree with its case lines");
        }
    }
    return reports;
}

}  // namespace qopdist
