#ifndef QOPDIST_REPORT_H
#define QOPDIST_REPORT_H

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace qopdist {

inline constexpr const char* kReportSchema = "qopdist.suite_report";
inline constexpr int kReportVersion = 1;

/// One checked instance. `residual` is the violation amount for inequalities
/// and the absolute error for equalities; it is always finite and >= 0.
struct CaseRecord {
    std::string label;
    double residual = 0.0;
    bool passed = false;
    std::map<std::string, double> values;  // reported quantities, keyed by name

    bool operator==(const CaseRecord&) const = default;
};

struct SuiteReport {
    std::string suite_name;
    int n_cases = 0;
    int n_failures = 0;
    double worst_residual = 0.0;
    std::uint64_t seed = 0;
    double elapsed_seconds = 0.0;
    std::vector<CaseRecord> details;

    /// Appends a case and updates the counters. Non-finite residuals fail the
    /// case and are stored as the largest finite double.
    void add(CaseRecord record);

    bool operator==(const SuiteReport&) const = default;
};

/// Line-delimited JSON: a schema header line, then per suite one "suite" line
/// followed by its "case" lines.
std::string format_reports(const std::vector<SuiteReport>& reports);
/// Inverse of format_reports; throws ParseError on schema or structure mismatch.
std::vector<SuiteReport> parse_reports(const std::string& text);

}  // namespace qopdist

#endif
