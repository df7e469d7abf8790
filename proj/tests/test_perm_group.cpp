#include "doctest.h"
#include "nv/dataset.hpp"
#include "nv/group.hpp"

#include <algorithm>
#include <random>

using namespace nv;

namespace {

const std::vector<std::string> kH21 = {
    "(a2 a20) (a3 a10) (a5 a6) (a8 a11) (a9 a21) (a12 a22) (a17 a23) (a19 a24)",
    "(a2 a19) (a3 a5) (a6 a10) (a8 a9) (a11 a21) (a12 a23) (a17 a22) (a20 a24)",
    "(a1 a16) (a2 a20) (a3 a6) (a5 a10) (a12 a23) (a14 a18) (a17 a22) (a19 a24)",
    "(a1 a14) (a2 a24) (a3 a5) (a6 a10) (a12 a22) (a16 a18) (a17 a23) (a19 a20)"};

const std::vector<std::string> kCase1Sub = {
    "(a2 a19) (a3 a5) (a6 a10) (a8 a9) (a11 a21) (a12 a23) (a17 a22) (a20 a24)",
    "(a2 a20) (a3 a10) (a5 a6) (a8 a11) (a9 a21) (a12 a22) (a17 a23) (a19 a24)",
    "(a1 a14) (a3 a10) (a5 a6) (a8 a21) (a9 a11) (a12 a23) (a16 a18) (a17 a22)"};

std::vector<std::vector<std::string>> named(const PermGroup& g) {
    std::vector<std::vector<std::string>> out;
    for (const auto& o : orbits(g)) {
        std::vector<std::string> s;
        for (int x : o) s.push_back(label_name(x, g.model()));
        out.push_back(s);
    }
    return out;
}

const Dataset& shipped() {
    static const Dataset ds = load_dataset(default_data_dir());
    return ds;
}

}  // namespace

TEST_CASE("parse_cycles") {
    CHECK(parse_cycles("()", LabelModel::N23).is_identity());
    CHECK(parse_cycles("", LabelModel::N23).is_identity());
    Permutation p = parse_cycles(kH21[0], LabelModel::N23);
    CHECK(p.order() == 2);
    CHECK(p.moved_points() == 16);
    CHECK(p(1) == 19);
    Permutation q = parse_cycles("$(\\alpha_{2}\\alpha_{20})(\\alpha_{3}\\alpha_{10})$", LabelModel::N23);
    CHECK(q(1) == 19);
    CHECK(q(2) == 9);
    Permutation r = parse_cycles("(α_{1,3}α_{3,3})(α_{1,4}α_{3,5})", LabelModel::N21);
    CHECK(r(label_index("a1,3", LabelModel::N21)) == label_index("a3,3", LabelModel::N21));
    CHECK(label_index("a1,3", LabelModel::N21) == 6);
    CHECK(label_index("a2,12", LabelModel::N22) == 23);
    CHECK(label_name(23, LabelModel::N22) == "a2,12");
}

TEST_CASE("parse_cycles rejects malformed text") {
    CHECK_THROWS_AS(parse_cycles("(a1 a2) (a2 a3)", LabelModel::N23), perm_parse_error);
    CHECK_THROWS_AS(parse_cycles("(a1 a25)", LabelModel::N23), perm_parse_error);
    CHECK_THROWS_AS(parse_cycles("(a1 a2", LabelModel::N23), perm_parse_error);
    CHECK_THROWS_AS(parse_cycles("a1 a2)", LabelModel::N23), perm_parse_error);
    CHECK_THROWS_AS(parse_cycles("(a4 a1,9)", LabelModel::N22), perm_parse_error);
    CHECK_THROWS_AS(parse_cycles("(a1,3 a4,1)", LabelModel::N21), perm_parse_error);
    CHECK_THROWS_AS(parse_cycles("(a12 a28)", LabelModel::N23), perm_parse_error);
    try {
        parse_cycles("(a1 a2) (a3 a1)", LabelModel::N23);
        FAIL("expected an error");
    } catch (const perm_parse_error& e) {
        CHECK(e.position == 12);
    }
}

TEST_CASE("permutation algebra") {
    Permutation a = Permutation::from_cycles({{0, 1, 2}}), b = Permutation::from_cycles({{0, 1}});
    CHECK((a * b)(0) == 0);  // a first: 0 -> 1, then b: 1 -> 0
    CHECK((a * a.inverse()).is_identity());
    CHECK(a.order() == 3);
    CHECK((a * b).order() == 2);
    CHECK(a.to_string(LabelModel::N23) == "(a1 a2 a3)");
}

TEST_CASE("closure and orbits of H_{21,1}") {
    PermGroup trivial(LabelModel::N23, {});
    CHECK(trivial.order() == 1);
    CHECK(orbits(trivial).size() == 24);

    PermGroup g = PermGroup::from_text(kH21, LabelModel::N23);
    CHECK(g.order() == 16);
    auto orb = named(g);
    int four = 0, fixed = 0;
    for (const auto& o : orb) {
        if (o.size() == 4) ++four;
        if (o.size() == 1) ++fixed;
    }
    CHECK(four == 5);
    CHECK(fixed == 4);
    CHECK(std::find(orb.begin(), orb.end(), std::vector<std::string>{"a1", "a14", "a16", "a18"}) != orb.end());

    PermGroup h = PermGroup::from_text(kCase1Sub, LabelModel::N23);
    CHECK(h.order() == 8);
    auto sub = named(h);
    CHECK(std::find(sub.begin(), sub.end(), std::vector<std::string>{"a1", "a14"}) != sub.end());
    CHECK(std::find(sub.begin(), sub.end(), std::vector<std::string>{"a16", "a18"}) != sub.end());
    CHECK(contains_subgroup(g, h));
    CHECK(contains_subgroup(g, g));
    CHECK_FALSE(contains_subgroup(h, g));
    CHECK_THROWS_AS(contains_subgroup(g, PermGroup(LabelModel::N21, {})), group_error);
}

TEST_CASE("orbits do not depend on generator order") {
    std::vector<std::string> rev(kH21.rbegin(), kH21.rend());
    CHECK(orbits(PermGroup::from_text(kH21, LabelModel::N23)) == orbits(PermGroup::from_text(rev, LabelModel::N23)));
}

TEST_CASE("closure bound") {
    // S_8 has 40320 elements
    PermGroup big(LabelModel::points, {Permutation::from_cycles({{0, 1, 2, 3, 4, 5, 6, 7}}), Permutation::from_cycles({{0, 1}})});
    CHECK_THROWS_AS(big.elements(), group_error);
}

TEST_CASE("textbook constructions reproduce the catalog fingerprints") {
    const auto& ds = shipped();
    auto tb = textbook_groups();
    for (const auto& g : ds.groups) {
        INFO(g.name);
        if (g.fingerprint_source != "construction") continue;
        REQUIRE(tb.count(g.n) == 1);
        CHECK(fingerprint(tb.at(g.n)) == g.fingerprint);
        CHECK(tb.at(g.n).order() == g.order);
    }
}

TEST_CASE("the catalog is fingerprint-separated") {
    const auto& ds = shipped();
    CHECK(ds.groups.size() == 29);
    CHECK_NOTHROW(check_catalog_separated(ds.catalog()));
    auto cat = ds.catalog();
    cat.push_back(cat.front());
    cat.back().name = "copy";
    CHECK_THROWS_AS(check_catalog_separated(cat), ambiguity_error);
    CHECK_THROWS_AS(identify_type(PermGroup(LabelModel::points, {Permutation::from_cycles({{0, 1}})}), cat), ambiguity_error);
}

TEST_CASE("identify_type examples") {
    const auto cat = shipped().catalog();
    CHECK(identify_type(PermGroup::from_text(kH21, LabelModel::N23), cat) == "C2^4");
    CHECK(identify_type(PermGroup::from_text(kCase1Sub, LabelModel::N23), cat) == "C2^3");
    auto tb = textbook_groups();
    CHECK(identify_type(tb.at(12), cat) == "Q8");
    CHECK(identify_type(tb.at(10), cat) == "D8");
    CHECK(fingerprint(tb.at(12)).element_orders.at(4) == 6);
    CHECK(fingerprint(tb.at(10)).element_orders.at(4) == 2);
    PermGroup c5(LabelModel::points, {Permutation::from_cycles({{0, 1, 2, 3, 4}})});
    CHECK(identify_type(c5, cat) == "unrecognized");
}

TEST_CASE("every case group closes to its stated type") {
    const auto& ds = shipped();
    const auto cat = ds.catalog();
    int checked = 0;
    for (const auto& c : ds.cases) {
        if (c.suspect) continue;
        for (const auto& m : c.markings) {
            INFO("case ", c.number);
            PermGroup g = PermGroup::from_text(m.generators, m.model);
            CHECK(identify_type(g, cat) == ds.group(c.big.n)->name);
            CHECK(g.order() == ds.group(c.big.n)->order);
            PermGroup h = PermGroup::from_text(m.subgroup_generators, m.model);
            CHECK(identify_type(h, cat) == ds.group(c.small[m.small_index].n)->name);
            CHECK(contains_subgroup(g, h));
            ++checked;
        }
    }
    CHECK(checked > 70);
}

TEST_CASE("subgroup search in H_{21,1}") {
    const auto& ds = shipped();
    PermGroup g = PermGroup::from_text(kH21, LabelModel::N23);
    CHECK(find_isomorphic_subgroups(g, ds.group(9)->fingerprint).size() == 15);
    CHECK(find_isomorphic_subgroups(g, ds.group(1)->fingerprint).size() == 15);
    CHECK(find_isomorphic_subgroups(g, fingerprint(PermGroup(LabelModel::N23, {}))).size() == 1);
    for (const auto& h : find_isomorphic_subgroups(g, ds.group(3)->fingerprint)) {
        CHECK(contains_subgroup(g, h));
        CHECK(fingerprint(h) == ds.group(3)->fingerprint);
    }
}

TEST_CASE("subgroup search deduplicates conjugates") {
    const auto& ds = shipped();
    auto tb = textbook_groups();
    // S4: one class of C2^2 normal plus one non-normal; three classes of order-2 subgroups split as 2 classes
    auto v4 = find_isomorphic_subgroups(tb.at(34), ds.group(3)->fingerprint);
    CHECK(v4.size() == 2);
    auto c2 = find_isomorphic_subgroups(tb.at(34), ds.group(1)->fingerprint);
    CHECK(c2.size() == 2);
    auto c4 = find_isomorphic_subgroups(tb.at(34), ds.group(4)->fingerprint);
    CHECK(c4.size() == 1);
    CHECK_THROWS_AS(find_isomorphic_subgroups(tb.at(61), ds.group(1)->fingerprint), scope_error);
}
