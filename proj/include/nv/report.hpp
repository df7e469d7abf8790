#pragma once

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace nv {

enum class Verdict { pass, fail, skip, data_suspect };

/// Enumerated reasons attached to SKIP verdicts.
namespace skip_reason {
inline constexpr const char* data_suspect = "data-suspect";
inline constexpr const char* out_of_scope = "out-of-scope";
inline constexpr const char* oracle_unavailable = "oracle-unavailable";
inline constexpr const char* no_generators = "no-generators";
inline constexpr const char* lift_failure = "lift-failure";
}  // namespace skip_reason

inline constexpr int kReportSchemaVersion = 1;

struct Check {
    std::string name;
    std::string expected;
    std::string computed;
    Verdict verdict = Verdict::pass;
    std::string reason;  // SKIP and DATA-SUSPECT only
    std::string detail;
};

Check pass_check(std::string name, std::string expected, std::string computed);
Check fail_check(std::string name, std::string expected, std::string computed, std::string detail = "");
Check skip_check(std::string name, std::string reason, std::string detail = "");
/// PASS when expected == computed, FAIL otherwise.
Check compare_check(std::string name, const std::string& expected, const std::string& computed, std::string detail = "");

enum class ReportKind { table, group, case_, subgroups, build };

struct Report {
    ReportKind kind = ReportKind::case_;
    int id = 0;  // case number, table * 1000 + row index, catalog number, ...
    std::string title;
    std::vector<Check> checks;
    /// Overrides the verdict derived from the checks (used for whole-report skips).
    std::optional<Verdict> forced;
    std::string forced_reason;
    std::optional<double> seconds;

    Verdict verdict() const;
    std::string reason() const;
    void add(Check c) { checks.push_back(std::move(c)); }
    void add_all(const std::vector<Check>& cs) { checks.insert(checks.end(), cs.begin(), cs.end()); }
};

/// "PASS", "FAIL", "SKIP(reason)" or "DATA-SUSPECT".
std::string verdict_text(Verdict v, const std::string& reason = "");
std::string kind_name(ReportKind k);

struct Summary {
    int pass = 0, fail = 0, skip = 0, data_suspect = 0;
};
Summary summarize(const std::vector<Report>& reports);

void sort_reports(std::vector<Report>& reports);

nlohmann::json report_json(const Report& r, bool timing);
/// Deterministic document: schema version, sorted reports, summary.
nlohmann::json reports_json(std::vector<Report> reports, const std::string& command, bool timing = false);
std::string reports_text(std::vector<Report> reports, bool verbose = false, bool timing = false);

/// 0 when nothing failed, 1 otherwise.
int exit_code_for(const std::vector<Report>& reports);

}  // namespace nv
