#include "nv/report.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>
#include <tuple>

namespace nv {

Check pass_check(std::string name, std::string expected, std::string computed) {
    return {std::move(name), std::move(expected), std::move(computed), Verdict::pass, "", ""};
}

Check fail_check(std::string name, std::string expected, std::string computed, std::string detail) {
    return {std::move(name), std::move(expected), std::move(computed), Verdict::fail, "", std::move(detail)};
}

Check skip_check(std::string name, std::string reason, std::string detail) {
    return {std::move(name), "", "", Verdict::skip, std::move(reason), std::move(detail)};
}

Check compare_check(std::string name, const std::string& expected, const std::string& computed, std::string detail) {
    Check c{std::move(name), expected, computed, expected == computed ? Verdict::pass : Verdict::fail, "", ""};
    if (c.verdict == Verdict::fail) c.detail = std::move(detail);
    return c;
}

Verdict Report::verdict() const {
    if (forced) return *forced;
    bool any_fail = false, any_pass = false, any_suspect = false;
    for (const auto& c : checks) {
        any_fail |= c.verdict == Verdict::fail;
        any_pass |= c.verdict == Verdict::pass;
        any_suspect |= c.verdict == Verdict::data_suspect;
    }
    if (any_fail) return Verdict::fail;
    if (any_suspect) return Verdict::data_suspect;
    if (any_pass) return Verdict::pass;
    return Verdict::skip;
}

std::string Report::reason() const {
    if (forced) return forced_reason;
    if (verdict() != Verdict::skip) return "";
    for (const auto& c : checks)
        if (c.verdict == Verdict::skip) return c.reason;
    return skip_reason::no_generators;
}

std::string verdict_text(Verdict v, const std::string& reason) {
    switch (v) {
        case Verdict::pass: return "PASS";
        case Verdict::fail: return "FAIL";
        case Verdict::data_suspect: return "DATA-SUSPECT";
        case Verdict::skip: return "SKIP(" + reason + ")";
    }
    return "?";
}

std::string kind_name(ReportKind k) {
    switch (k) {
        case ReportKind::table: return "table";
        case ReportKind::group: return "group";
        case ReportKind::case_: return "case";
        case ReportKind::subgroups: return "subgroups";
        case ReportKind::build: return "build";
    }
    return "?";
}

Summary summarize(const std::vector<Report>& reports) {
    Summary s;
    for (const auto& r : reports) {
        switch (r.verdict()) {
            case Verdict::pass: ++s.pass; break;
            case Verdict::fail: ++s.fail; break;
            case Verdict::skip: ++s.skip; break;
            case Verdict::data_suspect: ++s.data_suspect; break;
        }
    }
    return s;
}

void sort_reports(std::vector<Report>& reports) {
    std::stable_sort(reports.begin(), reports.end(), [](const Report& a, const Report& b) {
        return std::tie(a.kind, a.id, a.title) < std::tie(b.kind, b.id, b.title);
    });
}

nlohmann::json report_json(const Report& r, bool timing) {
    nlohmann::json j;
    j["kind"] = kind_name(r.kind);
    j["id"] = r.id;
    j["title"] = r.title;
    j["verdict"] = verdict_text(r.verdict(), r.reason());
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : r.checks) {
        nlohmann::json cj;
        cj["name"] = c.name;
        cj["expected"] = c.expected;
        cj["computed"] = c.computed;
        cj["verdict"] = verdict_text(c.verdict, c.reason);
        if (!c.detail.empty()) cj["detail"] = c.detail;
        checks.push_back(std::move(cj));
    }
    j["checks"] = std::move(checks);
    if (timing && r.seconds) j["seconds"] = *r.seconds;
    return j;
}

nlohmann::json reports_json(std::vector<Report> reports, const std::string& command, bool timing) {
    sort_reports(reports);
    nlohmann::json doc;
    doc["schema_version"] = kReportSchemaVersion;
    doc["command"] = command;
    doc["reports"] = nlohmann::json::array();
    for (const auto& r : reports) doc["reports"].push_back(report_json(r, timing));
    Summary s = summarize(reports);
    doc["summary"] = {{"pass", s.pass}, {"fail", s.fail}, {"skip", s.skip}, {"data_suspect", s.data_suspect}};
    return doc;
}

std::string reports_text(std::vector<Report> reports, bool verbose, bool timing) {
    sort_reports(reports);
    std::ostringstream os;
    for (const auto& r : reports) {
        const Verdict v = r.verdict();
        os << std::left << std::setw(28) << r.title << " " << verdict_text(v, r.reason());
        if (timing && r.seconds) os << "  (" << std::fixed << std::setprecision(2) << *r.seconds << " s)";
        os << "\n";
        for (const auto& c : r.checks) {
            if (!verbose && c.verdict != Verdict::fail && c.verdict != Verdict::data_suspect) continue;
            os << "    " << c.name << ": " << verdict_text(c.verdict, c.reason);
            if (!c.expected.empty() || !c.computed.empty())
                os << "  expected " << c.expected << "  computed " << c.computed;
            if (!c.detail.empty()) os << "  [" << c.detail << "]";
            os << "\n";
        }
    }
    Summary s = summarize(reports);
    os << "summary: " << s.pass << " PASS, " << s.fail << " FAIL, " << s.skip << " SKIP, " << s.data_suspect
       << " DATA-SUSPECT\n";
    return os.str();
}

int exit_code_for(const std::vector<Report>& reports) { return summarize(reports).fail > 0 ? 1 : 0; }

}  // namespace nv
