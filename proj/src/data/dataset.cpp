#include "nv/dataset.hpp"

#include "nv/genus_symbol.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <regex>
#include <set>

#ifndef NV_DEFAULT_DATA_DIR
#define NV_DEFAULT_DATA_DIR "data"
#endif

namespace nv {

using json = nlohmann::json;

namespace fs = std::filesystem;

std::filesystem::path default_data_dir() {
    if (const char* env = std::getenv("NV_DATA_DIR"); env && *env) return env;
    return NV_DEFAULT_DATA_DIR;
}

const TableRow& Dataset::row(const RowRef& r) const {
    auto it = tables.find(r.table);
    if (it == tables.end() || r.index < 0 || r.index >= static_cast<int>(it->second.size()))
        throw link_error("no row " + std::to_string(r.index) + " in table " + std::to_string(r.table));
    return it->second[r.index];
}

const GroupInfo* Dataset::group(int n) const {
    for (const auto& g : groups)
        if (g.n == n) return &g;
    return nullptr;
}

const ProofCase* Dataset::find_case(int number) const {
    for (const auto& c : cases)
        if (c.number == number) return &c;
    return nullptr;
}

const TableRow* Dataset::table1_row(int n) const {
    auto it = tables.find(1);
    if (it == tables.end()) return nullptr;
    for (const auto& r : it->second)
        if (r.n == n) return &r;
    return nullptr;
}

std::vector<CatalogEntry> Dataset::catalog() const {
    std::vector<CatalogEntry> out;
    for (const auto& g : groups) out.push_back({g.n, g.name, g.fingerprint});
    return out;
}

int catalog_number_of(const std::string& group_name) {
    static const std::regex re(R"(H_\{?(\d+),\s*\d+\}?)");
    std::smatch m;
    if (!std::regex_match(group_name, m, re)) throw std::invalid_argument("not a marked group name: " + group_name);
    return std::stoi(m[1]);
}

namespace {

/// Reads typed fields and reports failures with the file and JSON path.
class Reader {
public:
    explicit Reader(fs::path file) : file_(std::move(file)) {}

    json parse() const {
        std::ifstream in(file_);
        if (!in) throw dataset_error(file_.string() + ": cannot open");
        std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        try {
            return json::parse(text);
        } catch (const json::parse_error& e) {
            std::size_t line = 1 + std::count(text.begin(), text.begin() + std::min(e.byte, text.size()), '\n');
            throw dataset_error(file_.string() + ":" + std::to_string(line) + ": " + e.what());
        }
    }

    [[noreturn]] void fail(const std::string& where, const std::string& msg) const {
        throw dataset_error(file_.string() + ": " + where + ": " + msg);
    }

    const json& at(const json& j, const std::string& key, const std::string& where) const {
        if (!j.is_object() || !j.contains(key)) fail(where, "missing field '" + key + "'");
        return j.at(key);
    }

    template <class T>
    T get(const json& j, const std::string& key, const std::string& where) const {
        const json& v = at(j, key, where);
        try {
            return v.get<T>();
        } catch (const json::exception&) {
            fail(where + "/" + key, "unexpected type " + std::string(v.type_name()));
        }
    }

    template <class T>
    std::optional<T> opt(const json& j, const std::string& key, const std::string& where) const {
        if (!j.is_object() || !j.contains(key) || j.at(key).is_null()) return std::nullopt;
        return get<T>(j, key, where);
    }

    void symbol(const std::string& text, const std::string& where) const {
        try {
            parse_symbol(text);
        } catch (const symbol_parse_error& e) {
            fail(where, "bad symbol '" + text + "': " + e.what());
        }
    }

    const fs::path& file() const { return file_; }

private:
    fs::path file_;
};

std::vector<DataIssue> read_issues(const Reader& r, const json& j, const std::string& where) {
    std::vector<DataIssue> out;
    if (!j.contains("issues")) return out;
    const json& arr = j.at("issues");
    if (!arr.is_array()) r.fail(where + "/issues", "expected an array");
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string w = where + "/issues/" + std::to_string(i);
        DataIssue d;
        d.path = r.get<std::string>(arr[i], "path", w);
        d.verbatim = r.at(arr[i], "verbatim", w).dump();
        d.correction = arr[i].contains("correction") ? arr[i].at("correction").dump() : "null";
        d.reason = r.get<std::string>(arr[i], "reason", w);
        out.push_back(std::move(d));
    }
    return out;
}

/// Replaces flagged values by their corrections; returns whether every issue had one.
bool apply_corrections(const Reader& r, json& j) {
    bool all = true;
    if (!j.contains("issues")) return true;
    for (const json& issue : j.at("issues")) {
        if (!issue.contains("correction") || issue.at("correction").is_null()) {
            all = false;
            continue;
        }
        std::string path = issue.at("path").get<std::string>();
        if (path.empty() || path[0] != '/') path = "/" + path;
        json::json_pointer ptr(path);
        if (!j.contains(ptr)) r.fail(path, "correction path does not exist");
        j[ptr] = issue.at("correction");
    }
    return all;
}

bool is_suspect(const Reader& r, const json& j, const std::string& where) {
    std::string status = r.get<std::string>(j, "status", where);
    if (status == "OK") return false;
    if (status == "DATA-SUSPECT") return true;
    r.fail(where + "/status", "unknown status '" + status + "'");
}

GroupFingerprint read_fingerprint(const Reader& r, const json& j, const std::string& w) {
    GroupFingerprint f;
    f.order = r.get<std::size_t>(j, "order", w);
    for (const auto& pair : r.at(j, "element_orders", w)) {
        if (!pair.is_array() || pair.size() != 2) r.fail(w + "/element_orders", "expected [order, count] pairs");
        f.element_orders[pair[0].get<int>()] = pair[1].get<int>();
    }
    f.abelianization = r.get<std::vector<long>>(j, "abelianization", w);
    f.center = r.get<std::size_t>(j, "center", w);
    f.derived = r.get<std::size_t>(j, "derived", w);
    f.exponent = r.get<long>(j, "exponent", w);
    return f;
}

void load_groups(Dataset& ds, const fs::path& file) {
    Reader r(file);
    json j = r.parse();
    const json& arr = r.at(j, "groups", "");
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string w = "/groups/" + std::to_string(i);
        GroupInfo g;
        g.n = r.get<int>(arr[i], "n", w);
        g.name = r.get<std::string>(arr[i], "name", w);
        g.name_raw = r.opt<std::string>(arr[i], "name_raw", w).value_or(g.name);
        g.order = r.get<std::size_t>(arr[i], "order", w);
        g.gap_id = r.opt<int>(arr[i], "gap_id", w);
        g.fingerprint = read_fingerprint(r, r.at(arr[i], "fingerprint", w), w + "/fingerprint");
        g.fingerprint_source = r.opt<std::string>(arr[i], "fingerprint_source", w).value_or("");
        if (ds.group(g.n)) r.fail(w, "duplicate catalog number " + std::to_string(g.n));
        ds.groups.push_back(std::move(g));
    }
}

void load_table(Dataset& ds, const fs::path& file, const LoadOptions& opts) {
    Reader r(file);
    json j = r.parse();
    const int table = r.get<int>(j, "table", "");
    if (table < 1 || table > 4) r.fail("/table", "table number out of range");
    if (ds.tables.count(table)) r.fail("/table", "table " + std::to_string(table) + " loaded twice");
    std::vector<TableRow> rows;
    json arr = r.at(j, "rows", "");
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string w = "/rows/" + std::to_string(i);
        json& row = arr[i];
        TableRow t;
        t.table = table;
        t.index = r.get<int>(row, "index", w);
        if (t.index != static_cast<int>(i)) r.fail(w + "/index", "rows must be numbered consecutively from 0");
        t.suspect = is_suspect(r, row, w);
        t.issues = read_issues(r, row, w);
        if (t.suspect && opts.apply_corrections) t.corrected = apply_corrections(r, row);
        t.n = r.get<int>(row, "n", w);
        t.group_raw = r.opt<std::string>(row, "group_raw", w).value_or("");
        t.rk_SG = r.opt<int>(row, "rk_SG", w);
        t.q_SG = r.opt<std::string>(row, "q_SG", w);
        t.q_SG_reading = r.opt<std::string>(row, "q_SG_reading", w);
        if (t.q_SG) r.symbol(t.q_SG_reading.value_or(*t.q_SG), w + "/q_SG");
        t.deg_raw = r.opt<std::string>(row, "deg_raw", w).value_or("");
        t.deg = r.get<std::string>(row, "deg", w);
        try {
            t.pattern = parse_deg(t.deg);
        } catch (const deg_parse_error& e) {
            if (!t.suspect || t.corrected) r.fail(w + "/deg", "bad degeneration pattern '" + t.deg + "': " + e.what());
        }
        t.rk_S = r.get<int>(row, "rk_S", w);
        t.q_S = r.get<std::string>(row, "q_S", w);
        r.symbol(t.q_S, w + "/q_S");
        t.marks = r.opt<std::vector<std::string>>(row, "marks", w).value_or(std::vector<std::string>{});
        t.source_line = r.opt<int>(row, "source_line", w).value_or(0);
        if (t.suspect && opts.apply_corrections && t.corrected) t.suspect = false;
        rows.push_back(std::move(t));
    }
    ds.tables[table] = std::move(rows);
}

CaseSide read_side(const Reader& r, const json& j, const std::string& w) {
    CaseSide s;
    s.n = r.get<int>(j, "n", w);
    s.deg = r.get<std::string>(j, "deg", w);
    try {
        s.pattern = parse_deg(s.deg);
    } catch (const deg_parse_error&) {
    }
    const json& row = r.at(j, "row", w);
    s.row.table = r.get<int>(row, "table", w + "/row");
    s.row.index = r.get<int>(row, "index", w + "/row");
    s.rk_S = r.get<int>(j, "rk_S", w);
    s.q_S = r.get<std::string>(j, "q_S", w);
    r.symbol(s.q_S, w + "/q_S");
    return s;
}

void load_case(Dataset& ds, const fs::path& file, const LoadOptions& opts) {
    Reader r(file);
    json j = r.parse();
    ProofCase c;
    c.number = r.get<int>(j, "case", "");
    c.suspect = is_suspect(r, j, "");
    c.issues = read_issues(r, j, "");
    if (c.suspect && opts.apply_corrections) c.corrected = apply_corrections(r, j);
    c.header_raw = r.opt<std::string>(j, "header_raw", "").value_or("");
    c.big = read_side(r, r.at(j, "big", ""), "/big");
    const json& small = r.at(j, "small", "");
    for (std::size_t i = 0; i < small.size(); ++i) c.small.push_back(read_side(r, small[i], "/small/" + std::to_string(i)));
    if (c.small.empty()) r.fail("/small", "a case needs at least one small side");
    const json& marks = r.at(j, "markings", "");
    if (!marks.is_array() || marks.empty()) r.fail("/markings", "a case needs at least one marking");
    for (std::size_t i = 0; i < marks.size(); ++i) {
        const std::string w = "/markings/" + std::to_string(i);
        const json& mj = marks[i];
        Marking m;
        try {
            m.model = model_from_name(r.get<std::string>(mj, "model", w));
        } catch (const std::invalid_argument& e) {
            r.fail(w + "/model", e.what());
        }
        const json& g = r.at(mj, "group", w);
        m.group_name = r.get<std::string>(g, "name", w + "/group");
        m.group_defined_in = r.opt<int>(g, "defined_in", w + "/group").value_or(c.number);
        m.generators = r.get<std::vector<std::string>>(g, "generators", w + "/group");
        m.orbits = r.get<std::vector<std::vector<std::string>>>(mj, "orbits", w);
        const json& sub = r.at(mj, "subgroup", w);
        m.subgroup_defined_in = r.opt<int>(sub, "defined_in", w + "/subgroup").value_or(c.number);
        m.subgroup_generators = r.get<std::vector<std::string>>(sub, "generators", w + "/subgroup");
        m.suborbits = r.get<std::vector<std::vector<std::string>>>(mj, "suborbits", w);
        m.small_index = r.opt<int>(mj, "small_index", w).value_or(0);
        if (m.small_index < 0 || m.small_index >= static_cast<int>(c.small.size()))
            r.fail(w + "/small_index", "no such small side");
        const bool strict = !c.suspect || c.corrected;
        auto check_text = [&](const std::vector<std::string>& texts, const std::string& where) {
            for (std::size_t k = 0; k < texts.size(); ++k) try {
                    parse_cycles(texts[k], m.model);
                } catch (const perm_parse_error& e) {
                    if (strict) r.fail(where + "/" + std::to_string(k), e.what());
                }
        };
        check_text(m.generators, w + "/group/generators");
        check_text(m.subgroup_generators, w + "/subgroup/generators");
        c.markings.push_back(std::move(m));
    }
    c.notes = r.opt<std::vector<std::string>>(j, "notes", "").value_or(std::vector<std::string>{});
    if (c.suspect && c.corrected) c.suspect = false;
    if (ds.find_case(c.number)) r.fail("/case", "duplicate case " + std::to_string(c.number));
    ds.cases.push_back(std::move(c));
}

void load_subgroups(Dataset& ds, const fs::path& file) {
    Reader r(file);
    json j = r.parse();
    const json& arr = r.at(j, "entries", "");
    for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string w = "/entries/" + std::to_string(i);
        ds.subgroups.push_back({r.get<int>(arr[i], "n", w), r.get<std::vector<int>>(arr[i], "n1", w)});
    }
}

void link(const Dataset& ds) {
    for (const auto& c : ds.cases) {
        const std::string w = "case " + std::to_string(c.number) + ": ";
        auto check_side = [&](const CaseSide& s) {
            if (ds.tables.empty()) return;
            const TableRow& row = [&]() -> const TableRow& {
                try {
                    return ds.row(s.row);
                } catch (const link_error& e) {
                    throw link_error(w + e.what());
                }
            }();
            if (row.n != s.n)
                throw link_error(w + "row " + std::to_string(s.row.table) + "/" + std::to_string(s.row.index) +
                                 " is for n=" + std::to_string(row.n) + ", not n=" + std::to_string(s.n));
        };
        check_side(c.big);
        for (const auto& s : c.small) check_side(s);
        if (!ds.groups.empty()) {
            if (!ds.group(c.big.n)) throw link_error(w + "unknown catalog number " + std::to_string(c.big.n));
            for (const auto& s : c.small)
                if (!ds.group(s.n)) throw link_error(w + "unknown catalog number " + std::to_string(s.n));
        }
    }
    if (!ds.groups.empty()) {
        for (const auto& e : ds.subgroups) {
            if (!ds.group(e.n)) throw link_error("subgroup list: unknown catalog number " + std::to_string(e.n));
            for (int k : e.n1)
                if (!ds.group(k)) throw link_error("subgroup list: unknown catalog number " + std::to_string(k));
        }
        for (const auto& [t, rows] : ds.tables)
            for (const auto& row : rows)
                if (!ds.group(row.n))
                    throw link_error("table " + std::to_string(t) + " row " + std::to_string(row.index) +
                                     ": unknown catalog number " + std::to_string(row.n));
    }
}

}  // namespace

Dataset load_dataset(const std::filesystem::path& dir, const LoadOptions& opts) {
    if (!fs::is_directory(dir)) throw dataset_error(dir.string() + ": not a directory");
    Dataset ds;
    if (fs::exists(dir / "groups.json")) load_groups(ds, dir / "groups.json");
    for (int t = 1; t <= 4; ++t) {
        fs::path f = dir / "tables" / ("table" + std::to_string(t) + ".json");
        if (fs::exists(f)) load_table(ds, f, opts);
    }
    if (fs::is_directory(dir / "cases")) {
        std::vector<fs::path> files;
        for (const auto& e : fs::directory_iterator(dir / "cases"))
            if (e.path().extension() == ".json") files.push_back(e.path());
        std::sort(files.begin(), files.end());
        for (const auto& f : files) load_case(ds, f, opts);
        std::sort(ds.cases.begin(), ds.cases.end(),
                  [](const ProofCase& a, const ProofCase& b) { return a.number < b.number; });
    }
    if (fs::exists(dir / "subgroups.json")) load_subgroups(ds, dir / "subgroups.json");
    link(ds);
    return ds;
}

std::vector<std::string> consistency_problems(const Dataset& ds) {
    std::vector<std::string> out;
    for (const auto& g : ds.groups)
        if (g.order != g.fingerprint.order) out.push_back("group " + g.name + ": order differs from fingerprint");
    for (const auto& [t, rows] : ds.tables)
        for (const auto& row : rows) {
            const std::string w = "table " + std::to_string(t) + " row " + std::to_string(row.index) + ": ";
            const TableRow* base = ds.table1_row(row.n);
            std::optional<int> rk = row.rk_SG ? row.rk_SG : (base ? base->rk_SG : std::nullopt);
            if (!rk) out.push_back(w + "no rk_SG available");
            if (rk && row.pattern && *rk + static_cast<int>(row.pattern->orbit_count()) != row.rk_S)
                out.push_back(w + "rk_S differs from rk_SG plus the orbit count");
        }
    for (const auto& c : ds.cases) {
        const std::string w = "case " + std::to_string(c.number) + ": ";
        auto side = [&](const CaseSide& s, const std::string& name) {
            if (ds.tables.empty()) return;
            const TableRow& row = ds.row(s.row);
            if (row.deg != s.deg) out.push_back(w + name + " Deg differs from the table row");
            if (row.q_S != s.q_S) out.push_back(w + name + " q_S differs from the table row");
            if (row.rk_S != s.rk_S) out.push_back(w + name + " rk_S differs from the table row");
        };
        side(c.big, "big");
        for (const auto& s : c.small) side(s, "small");
        for (std::size_t i = 0; i < c.markings.size(); ++i) {
            const Marking& m = c.markings[i];
            const std::string wm = w + "marking " + std::to_string(i) + ": ";
            std::set<int> big, small;
            try {
                for (const auto& orb : m.orbits)
                    for (const auto& l : orb)
                        if (!big.insert(label_index(l, m.model)).second) out.push_back(wm + "label " + l + " repeated in orbits");
                for (const auto& orb : m.suborbits)
                    for (const auto& l : orb)
                        if (!small.insert(label_index(l, m.model)).second)
                            out.push_back(wm + "label " + l + " repeated in suborbits");
            } catch (const perm_parse_error& e) {
                out.push_back(wm + e.what());
                continue;
            }
            if (big != small) out.push_back(wm + "suborbits do not partition the orbits");
            if (c.big.pattern && m.orbits.size() != c.big.pattern->orbit_count())
                out.push_back(wm + "orbit count differs from the big Deg");
            const CaseSide& sm = c.small[m.small_index];
            if (sm.pattern && m.suborbits.size() != sm.pattern->orbit_count())
                out.push_back(wm + "suborbit count differs from the small Deg");
        }
    }
    return out;
}

}  // namespace nv
