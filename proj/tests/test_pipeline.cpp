#include "doctest.h"
#include "nv/genus_symbol.hpp"
#include "nv/pipeline.hpp"

#include <fstream>
#include <set>

using namespace nv;

namespace {

const Context& context() {
    static const Context ctx(load_dataset(default_data_dir()), default_data_dir(), {});
    return ctx;
}

const Check* find_check(const Report& r, const std::string& name) {
    for (const auto& c : r.checks)
        if (c.name == name) return &c;
    return nullptr;
}

std::vector<Permutation> case_generators(int number, bool subgroup = false) {
    const Marking& mk = context().data().find_case(number)->markings.at(0);
    return parse_generators(subgroup ? mk.subgroup_generators : mk.generators, mk.model);
}

const TableRow& row_of(int table, int index) { return context().data().row({table, index}); }

}  // namespace

TEST_CASE("degeneration of Case 1: H_{21,1} with the orbit {a1, a16, a14, a18}") {
    const Context& ctx = context();
    const Alignment sigma = *ctx.marking_alignment(1, 0);
    const auto orbits = parse_orbits({{"a1", "a16", "a14", "a18"}}, LabelModel::N23);
    Report r = verify_degeneration(ctx, LabelModel::N23, sigma, case_generators(1), orbits, row_of(1, 37));
    CHECK(r.verdict() == Verdict::pass);
    CHECK(find_check(r, "rk_S")->computed == "16");
    CHECK(find_check(r, "q_S")->computed == "2_II^{+4},4_II^{+2}");
    CHECK(find_check(r, "rk_SG")->computed == "15");
    CHECK(find_check(r, "q_SG")->computed == "2_II^{+6},8_1^{+1}");
    CHECK(find_check(r, "Dyn")->computed == "4A1");
}

TEST_CASE("degeneration of Case 2: the 16-element orbit of H_{21,2}") {
    const Context& ctx = context();
    const ProofCase* c = ctx.data().find_case(2);
    const Marking& mk = c->markings[0];
    Report r = verify_degeneration(ctx, mk.model, *ctx.marking_alignment(2, 0), case_generators(2),
                                   parse_orbits(mk.orbits, mk.model), row_of(1, 38));
    CHECK(r.verdict() == Verdict::pass);
    CHECK(find_check(r, "rk_S")->computed == "16");
    CHECK(find_check(r, "q_S")->computed == "2_II^{+6}");
    CHECK(find_check(r, "roots of S")->computed == "32");
}

TEST_CASE("no orbits gives S = S_G") {
    const Context& ctx = context();
    const NiemeierModel& m = ctx.model(LabelModel::N23);
    const Alignment sigma = *ctx.marking_alignment(1, 0);
    std::vector<Permutation> gens;
    for (const auto& g : case_generators(1)) gens.push_back(sigma.apply(m, g));
    const Degeneration d = compute_degeneration(m, gens, {});
    CHECK(d.S.basis == d.SG.basis);
    CHECK(d.roots_in_S == 0);
    CHECK(d.full_type.empty());
}

TEST_CASE("a generator that breaks the glue gives DATA-SUSPECT") {
    const Context& ctx = context();
    const NiemeierModel& m = ctx.model(LabelModel::N23);
    const auto bad = parse_cycles("(a1 a2)", LabelModel::N23);
    Report r = verify_degeneration(ctx, LabelModel::N23, Alignment::identity(m), {bad},
                                   parse_orbits({{"a3"}}, LabelModel::N23), row_of(1, 0));
    CHECK(r.verdict() == Verdict::data_suspect);
    CHECK(r.reason() == skip_reason::lift_failure);
    CHECK_THROWS_AS(compute_degeneration(m, {bad}, {}), lift_error);
}

TEST_CASE("symbol mismatches report both canonical symbols and the oracle") {
    const FiniteQuadraticForm a1 = discriminant_form_gram(IntMatrix{{2}}, SignModel::negative);
    Check ok = symbol_check("q", "2_7^{+1}", a1, 4096);
    CHECK(ok.verdict == Verdict::pass);
    CHECK(ok.detail == "oracle: isomorphic");
    Check other = symbol_check("q", "2_1^{+1}", a1, 4096);
    CHECK(other.verdict == Verdict::fail);
    CHECK(other.detail.find("2_1^{+1}") != std::string::npos);
    CHECK(other.detail.find("2_7^{+1}") != std::string::npos);
    CHECK(other.detail.find("oracle: not isomorphic") != std::string::npos);
    Check unrealizable = symbol_check("q", "2_1^{-1}", a1, 4096);
    CHECK(unrealizable.verdict == Verdict::fail);
    // product of two primes
    const FiniteQuadraticForm d = discriminant_form_gram(IntMatrix{{2, 0}, {0, 6}}, SignModel::positive);
    CHECK(symbol_check("q", print_symbol(genus_symbol(d)), d, 4096).verdict == Verdict::pass);
}

TEST_CASE("List 1 cases") {
    const Context& ctx = context();
    SUBCASE("Case 1 passes every check") {
        Report r = verify_list1_case(ctx, *ctx.data().find_case(1));
        CHECK(r.verdict() == Verdict::pass);
        for (const char* name : {"G1 ⊂ G", "type G", "type G1", "suborbits refine orbits", "rk S1 = rk S",
                                 "q_S1 ≅ q_S", "Dyn(S1) = Dyn(S)"}) {
            CAPTURE(name);
            REQUIRE(find_check(r, name));
            CHECK(find_check(r, name)->verdict == Verdict::pass);
        }
    }
    SUBCASE("Case 40 compares against 2_5^{-1},8_II^{-2}") {
        Report r = verify_list1_case(ctx, *ctx.data().find_case(40));
        CHECK(r.verdict() == Verdict::pass);
        const Check* q = find_check(r, "big.q_S");
        REQUIRE(q);
        CHECK(q->expected.find("8_II^{-2}") != std::string::npos);
    }
    SUBCASE("Case 34 checks both small sides") {
        Report r = verify_list1_case(ctx, *ctx.data().find_case(34));
        CHECK(r.verdict() == Verdict::pass);
        CHECK(find_check(r, "m1.small.q_S"));
        CHECK(find_check(r, "m2.small.q_S"));
    }
    SUBCASE("a suspect case is skipped") {
        Report r = verify_list1_case(ctx, *ctx.data().find_case(75));
        CHECK(r.verdict() == Verdict::skip);
        CHECK(r.reason() == skip_reason::data_suspect);
        CHECK(verdict_text(r.verdict(), r.reason()) == "SKIP(data-suspect)");
    }
}

TEST_CASE("corrected cases run when corrections are applied") {
    const Context ctx(load_dataset(default_data_dir(), {.apply_corrections = true}), default_data_dir(),
                      {.apply_corrections = true});
    for (int n : {19, 75}) {
        CAPTURE(n);
        Report r = verify_list1_case(ctx, *ctx.data().find_case(n));
        CHECK(r.verdict() == Verdict::pass);
    }
}

TEST_CASE("reports are independent of the worker count") {
    const Dataset ds = load_dataset(default_data_dir());
    const std::vector<int> some{1, 5, 19, 34, 40};
    const Context one(ds, default_data_dir(), {.jobs = 1});
    const Context three(ds, default_data_dir(), {.jobs = 3});
    const std::string a = reports_json(verify_cases(one, some), "x").dump();
    const std::string b = reports_json(verify_cases(three, some), "x").dump();
    CHECK(a == b);
    const auto j = nlohmann::json::parse(a);
    CHECK(j["schema_version"] == kReportSchemaVersion);
    CHECK(j["reports"][0]["id"] == 1);
    CHECK(j["reports"][4]["id"] == 40);
    CHECK(j["summary"]["skip"] == 1);
}

TEST_CASE("exit codes follow the verdicts") {
    Report ok;
    ok.add(pass_check("a", "1", "1"));
    Report skipped;
    skipped.add(skip_check("b", skip_reason::out_of_scope));
    Report bad;
    bad.add(fail_check("c", "1", "2"));
    CHECK(exit_code_for({ok, skipped}) == 0);
    CHECK(exit_code_for({ok, bad}) == 1);
    CHECK(skipped.verdict() == Verdict::skip);
    CHECK(skipped.reason() == skip_reason::out_of_scope);
}

TEST_CASE("group invariants") {
    const Context& ctx = context();
    Report r21 = verify_group_invariants(ctx, 21);
    CHECK(r21.verdict() == Verdict::pass);
    CHECK(r21.checks.size() >= 2);
    for (const auto& c : r21.checks)
        if (c.name.ends_with("rk_SG")) CHECK(c.computed == "15");
    Report none = verify_group_invariants(ctx, 33);
    CHECK(none.verdict() == Verdict::skip);
}

TEST_CASE("subgroup lists") {
    const Context& ctx = context();
    auto entry = [&](int n) {
        for (const auto& e : ctx.data().subgroups)
            if (e.n == n) return e;
        FAIL("no entry");
        return SubgroupListEntry{};
    };
    auto passed = [](const Report& r) {
        std::set<std::string> out;
        for (const auto& c : r.checks)
            if (c.verdict == Verdict::pass && c.name.starts_with("n1=")) out.insert(c.name.substr(3));
        return out;
    };
    Report s21 = verify_subgroup_list(ctx, entry(21), SubgroupMode::search);
    CHECK(s21.verdict() == Verdict::pass);
    CHECK(passed(s21) == std::set<std::string>{"1", "3", "9"});
    Report s22 = verify_subgroup_list(ctx, entry(22), SubgroupMode::search);
    CHECK(passed(s22) == std::set<std::string>{"1", "3", "4", "9", "10"});
    Report s75 = verify_subgroup_list(ctx, entry(75), SubgroupMode::stated);
    CHECK(s75.verdict() == Verdict::pass);
    CHECK(passed(s75) == std::set<std::string>{"9", "10", "12", "17", "21", "22", "39", "49"});
    for (const auto& c : s75.checks)
        if (c.verdict != Verdict::pass) CHECK(c.reason == skip_reason::out_of_scope);
}

TEST_CASE("alignment table") {
    const Context& ctx = context();
    const AlignmentTable& t = ctx.alignments();
    CHECK(t.global.size() == 3);
    const AlignmentTable back = alignment_table_from_json(alignment_table_json(t));
    CHECK(back.global == t.global);
    CHECK(back.overrides == t.overrides);
    const auto file = default_data_dir() / "alignments.json";
    if (std::filesystem::exists(file)) {
        const AlignmentTable fresh = ctx.compute_alignments();
        CHECK(fresh.global == t.global);
        CHECK(fresh.overrides == t.overrides);
        CHECK(fresh.failures == t.failures);
    }
}

TEST_CASE("build reports") {
    const Context& ctx = context();
    for (auto [id, roots] : {std::pair{LabelModel::N23, "48"}, std::pair{LabelModel::N22, "72"},
                             std::pair{LabelModel::N21, "96"}}) {
        Report r = verify_build(ctx, id);
        CHECK(r.verdict() == Verdict::pass);
        CHECK(find_check(r, "roots")->computed == roots);
        CHECK(find_check(r, "det")->computed == "1");
    }
}
