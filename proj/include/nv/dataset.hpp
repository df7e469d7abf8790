#pragma once

#include "nv/deg_pattern.hpp"
#include "nv/group.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace nv {

/// Schema or parse failure, with the offending file and location.
struct dataset_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A reference from one record to another that does not resolve.
struct link_error : dataset_error {
    using dataset_error::dataset_error;
};

/// Transcription problem: the verbatim value at path and a proposed replacement.
struct DataIssue {
    std::string path;
    std::string verbatim;    // JSON text
    std::string correction;  // JSON text, "null" when none is proposed
    std::string reason;
};

struct RowRef {
    int table = 0;
    int index = 0;
    auto operator<=>(const RowRef&) const = default;
};

struct TableRow {
    int table = 0;
    int index = 0;
    int n = 0;
    std::string group_raw;
    std::optional<int> rk_SG;                 // blank in the later tables; the Table 1 value applies
    std::optional<std::string> q_SG;          // Table 1 only
    std::optional<std::string> q_SG_reading;  // reading used when q_SG contains a subscript "I"
    std::string deg_raw, deg;
    std::optional<DegPattern> pattern;        // absent when the text does not parse
    int rk_S = 0;
    std::string q_S;
    std::vector<std::string> marks;
    int source_line = 0;
    bool suspect = false;
    bool corrected = false;
    std::vector<DataIssue> issues;
};

struct CaseSide {
    int n = 0;
    std::string deg;
    std::optional<DegPattern> pattern;
    RowRef row;
    int rk_S = 0;
    std::string q_S;
};

struct Marking {
    LabelModel model = LabelModel::N23;
    std::string group_name;
    int group_defined_in = 0;
    std::vector<std::string> generators;
    std::vector<std::vector<std::string>> orbits;
    int subgroup_defined_in = 0;
    std::vector<std::string> subgroup_generators;
    std::vector<std::vector<std::string>> suborbits;
    int small_index = 0;
};

struct ProofCase {
    int number = 0;
    std::string header_raw;
    CaseSide big;
    std::vector<CaseSide> small;
    std::vector<Marking> markings;
    bool suspect = false;
    bool corrected = false;
    std::vector<DataIssue> issues;
    std::vector<std::string> notes;
};

struct GroupInfo {
    int n = 0;
    std::string name, name_raw;
    std::size_t order = 0;
    std::optional<int> gap_id;
    GroupFingerprint fingerprint;
    std::string fingerprint_source;
};

struct SubgroupListEntry {
    int n = 0;
    std::vector<int> n1;
};

struct LoadOptions {
    /// Replace each flagged value by its proposed correction.
    bool apply_corrections = false;
};

struct Dataset {
    std::vector<GroupInfo> groups;
    std::map<int, std::vector<TableRow>> tables;
    std::vector<ProofCase> cases;
    std::vector<SubgroupListEntry> subgroups;

    bool empty() const { return groups.empty() && tables.empty() && cases.empty() && subgroups.empty(); }
    const TableRow& row(const RowRef& r) const;
    const GroupInfo* group(int n) const;
    const ProofCase* find_case(int number) const;
    /// Table 1 row for catalog number n, if any.
    const TableRow* table1_row(int n) const;
    std::vector<CatalogEntry> catalog() const;
};

/// NV_DATA_DIR if set, otherwise the data directory of the source tree.
std::filesystem::path default_data_dir();

/// Load and cross-reference a dataset directory; missing files mean an empty section.
Dataset load_dataset(const std::filesystem::path& dir, const LoadOptions& opts = {});

/// Internal consistency problems (mismatched strings between cases and rows, bad partitions); empty when clean.
std::vector<std::string> consistency_problems(const Dataset& ds);

/// Catalog number from a case group name such as "H_{21,1}".
int catalog_number_of(const std::string& group_name);

}  // namespace nv
