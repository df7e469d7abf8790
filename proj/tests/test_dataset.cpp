#include "doctest.h"
#include "nv/dataset.hpp"
#include "nv/genus_symbol.hpp"

#include <json.hpp>

#include <fstream>
#include <set>

using namespace nv;
namespace fs = std::filesystem;

namespace {

const Dataset& shipped() {
    static const Dataset ds = load_dataset(default_data_dir());
    return ds;
}

/// Copy of the shipped data directory that a test may edit.
struct ScratchData {
    fs::path dir;
    explicit ScratchData(const std::string& name) {
        dir = fs::temp_directory_path() / ("nv_test_" + name);
        fs::remove_all(dir);
        fs::copy(default_data_dir(), dir, fs::copy_options::recursive);
    }
    ~ScratchData() { fs::remove_all(dir); }

    nlohmann::json read(const std::string& rel) const {
        std::ifstream in(dir / rel);
        return nlohmann::json::parse(in);
    }
    void write(const std::string& rel, const nlohmann::json& j) const {
        std::ofstream out(dir / rel);
        out << j.dump(1);
    }
};

}  // namespace

TEST_CASE("an empty directory is an empty dataset") {
    const fs::path dir = fs::temp_directory_path() / "nv_test_empty";
    fs::remove_all(dir);
    fs::create_directories(dir);
    const Dataset ds = load_dataset(dir);
    CHECK(ds.empty());
    CHECK(consistency_problems(ds).empty());
    fs::remove_all(dir);
}

TEST_CASE("shipped dataset sizes") {
    const Dataset& ds = shipped();
    CHECK(ds.tables.size() == 4);
    CHECK(ds.cases.size() == 82);
    CHECK(ds.subgroups.size() == 27);
    std::size_t rows = 0;
    for (const auto& [t, v] : ds.tables) rows += v.size();
    CHECK(rows > 250);
    for (int i = 1; i <= 82; ++i) CHECK(ds.find_case(i) != nullptr);
}

TEST_CASE("a malformed symbol is a load error") {
    ScratchData s("bad_symbol");
    auto t = s.read("tables/table1.json");
    t["rows"][0]["q_S"] = "2_X^{+1}";
    s.write("tables/table1.json", t);
    CHECK_THROWS_AS(load_dataset(s.dir), dataset_error);
}

TEST_CASE("a dangling row reference is a link error") {
    ScratchData s("bad_link");
    auto c = s.read("cases/case01.json");
    c["big"]["row"]["index"] = 9999;
    s.write("cases/case01.json", c);
    CHECK_THROWS_AS(load_dataset(s.dir), link_error);
}

TEST_CASE("parse_deg") {
    SUBCASE("list") {
        DegPattern p = parse_deg("(A1,A1,(2A1)_I)⊂4A1");
        REQUIRE(p.orbit_count() == 3);
        CHECK(p.orbits[2].type.to_string() == "2A1");
        CHECK(p.orbits[2].tag == "I");
        CHECK(p.full_type.to_string() == "4A1");
        CHECK_FALSE(p.matrix);
    }
    SUBCASE("single type") {
        DegPattern p = parse_deg("16A1");
        CHECK(p.orbit_count() == 1);
        CHECK(p.full_type.to_string() == "16A1");
    }
    SUBCASE("matrix") {
        DegPattern p = parse_deg("2A1 6A1 10A1 / 4A1 4A3 / 8A1 ⊂ 2A1⊔4A3");
        REQUIRE(p.orbit_count() == 3);
        REQUIRE(p.matrix);
        CHECK(p.cell(0, 2)->type.to_string() == "10A1");
        CHECK(p.cell(1, 2)->type.to_string() == "4A3");
        CHECK(p.full_type.to_string() == "2A1⊔4A3");
    }
    CHECK_THROWS_AS(parse_deg("((2A1)_I,4A1)⊂6A1)_I"), deg_parse_error);
}

TEST_CASE("every consistency problem sits in a flagged case") {
    const auto problems = consistency_problems(shipped());
    CHECK_FALSE(problems.empty());
    for (const auto& p : problems) {
        CAPTURE(p);
        REQUIRE(p.starts_with("case "));
        const ProofCase* c = shipped().find_case(std::stoi(p.substr(5)));
        REQUIRE(c);
        CHECK(c->suspect);
    }
    const Dataset fixed = load_dataset(default_data_dir(), {.apply_corrections = true});
    for (const auto& p : consistency_problems(fixed)) {
        CAPTURE(p);
        const ProofCase* c = fixed.find_case(std::stoi(p.substr(5)));
        CHECK((c && c->suspect));
    }
}

TEST_CASE("corrections apply only on request") {
    const Dataset& plain = shipped();
    const Dataset fixed = load_dataset(default_data_dir(), {.apply_corrections = true});
    const ProofCase* c75 = plain.find_case(75);
    REQUIRE(c75);
    CHECK(c75->suspect);
    CHECK_FALSE(c75->corrected);
    const ProofCase* f75 = fixed.find_case(75);
    CHECK_FALSE(f75->suspect);
    CHECK(f75->corrected);
    CHECK(f75->markings[0].subgroup_generators[1].find("a28") == std::string::npos);
    // a row whose issue has no proposed value stays suspect
    const auto& t2 = fixed.tables.at(2);
    auto row100 = std::find_if(t2.begin(), t2.end(), [](const TableRow& r) { return r.index == 100; });
    REQUIRE(row100 != t2.end());
    CHECK(row100->suspect);
}

TEST_CASE("every case side names a row with its n and Deg") {
    const Dataset& ds = shipped();
    std::set<RowRef> rows;
    for (const auto& c : ds.cases) {
        for (const CaseSide* s : {&c.big}) rows.insert(s->row);
        for (const auto& s : c.small) {
            const TableRow& r = ds.row(s.row);
            CHECK(r.n == s.n);
            CHECK(r.deg == s.deg);
            rows.insert(s.row);
        }
        const TableRow& r = ds.row(c.big.row);
        CHECK(r.n == c.big.n);
        CHECK(r.deg == c.big.deg);
    }
    CHECK(rows.size() >= 60);
}

TEST_CASE("table symbols round-trip through the canonical form") {
    std::size_t n = 0;
    for (const auto& [t, rows] : shipped().tables)
        for (const auto& r : rows) {
            std::vector<std::string> texts{r.q_S};
            if (r.q_SG) texts.push_back(r.q_SG_reading ? *r.q_SG_reading : *r.q_SG);
            for (const auto& s : texts) {
                if (r.suspect) continue;
                CAPTURE(s);
                const std::string c = canonical_text(s);
                CHECK(canonical_text(c) == c);
                ++n;
            }
        }
    CHECK(n > 250);
}

TEST_CASE("case group names carry catalog numbers") {
    CHECK(catalog_number_of("H_{21,1}") == 21);
    CHECK(catalog_number_of("H_{75,2}") == 75);
    CHECK_THROWS_AS(catalog_number_of("Q8"), std::invalid_argument);
    for (const auto& c : shipped().cases)
        for (const auto& m : c.markings) CHECK(catalog_number_of(m.group_name) == c.big.n);
}
