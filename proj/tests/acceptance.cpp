// One PASS/FAIL line per acceptance criterion; nonzero exit if any fails.
#include "nv/genus_symbol.hpp"
#include "nv/pipeline.hpp"

#include <chrono>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <thread>

using namespace nv;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

int failures = 0;

void line(int k, const std::string& title, bool ok, const std::string& detail) {
    std::cout << (ok ? "PASS" : "FAIL") << "  " << k << ". " << title << ": " << detail << std::endl;
    if (!ok) ++failures;
}

const Check* find_check(const Report& r, const std::string& name) {
    for (const auto& c : r.checks)
        if (c.name == name) return &c;
    return nullptr;
}

bool ends_with_check(const Report& r, const std::string& suffix, Verdict v, int* seen = nullptr) {
    bool ok = true;
    for (const auto& c : r.checks)
        if (c.name == suffix || c.name.ends_with("." + suffix)) {
            if (seen) ++*seen;
            ok = ok && c.verdict == v;
        }
    return ok;
}

IntMatrix random_even_gram(std::mt19937& rng, std::size_t n) {
    std::uniform_int_distribution<int> off(-2, 2), extra(0, 2);
    IntMatrix g(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) g(i, j) = g(j, i) = off(rng);
    for (std::size_t i = 0; i < n; ++i) {
        long row = 0;
        for (std::size_t j = 0; j < n; ++j)
            if (j != i) row += std::abs(g(i, j).get_si());
        long d = row + 1 + extra(rng);
        g(i, i) = d + (d % 2);
    }
    return g;
}

IntMatrix block_sum(const IntMatrix& a, const IntMatrix& b) {
    IntMatrix g(a.rows() + b.rows(), a.rows() + b.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.rows(); ++j) g(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
        for (std::size_t j = 0; j < b.rows(); ++j) g(a.rows() + i, a.rows() + j) = b(i, j);
    return g;
}

struct RunForm {
    FiniteQuadraticForm form;
    int rank = 0;  // rank of the negative definite lattice it came from
};

/// Discriminant forms of every S_G and S met while recomputing the non-suspect cases.
std::vector<RunForm> run_forms(const Context& ctx) {
    std::vector<RunForm> out;
    for (const auto& c : ctx.data().cases) {
        if (c.suspect) continue;
        for (std::size_t k = 0; k < c.markings.size(); ++k) {
            const Marking& mk = c.markings[k];
            const auto sigma = ctx.marking_alignment(c.number, static_cast<int>(k));
            if (!sigma) continue;
            const NiemeierModel& m = ctx.model(mk.model);
            auto relabel = [&](const std::vector<std::string>& gens, const std::vector<std::vector<std::string>>& orbs) {
                std::vector<Permutation> g;
                for (const auto& p : parse_generators(gens, mk.model)) g.push_back(sigma->apply(m, p));
                std::vector<std::vector<int>> o;
                for (const auto& orbit : parse_orbits(orbs, mk.model)) {
                    std::vector<int> v;
                    for (int l : orbit) v.push_back(sigma->apply_label(m, l));
                    o.push_back(std::move(v));
                }
                return std::pair{g, o};
            };
            for (const auto& [g, o] : {relabel(mk.generators, mk.orbits), relabel(mk.subgroup_generators, mk.suborbits)}) {
                try {
                    const Degeneration d = compute_degeneration(m, g, o);
                    out.push_back({d.q_SG, static_cast<int>(d.SG.rank())});
                    out.push_back({d.q_S, static_cast<int>(d.S.rank())});
                } catch (const lift_error&) {
                }
            }
        }
    }
    return out;
}

bool same_form(const FiniteQuadraticForm& a, const FiniteQuadraticForm& b) {
    return a.orders == b.orders && a.b == b.b && a.q == b.q;
}

}  // namespace

int main() {
    const auto dir = default_data_dir();
    VerifyOptions opts;
    opts.jobs = std::max(1u, std::thread::hardware_concurrency());
    const Context ctx(load_dataset(dir), dir, opts);

    // 1. reconstruction
    {
        const auto t0 = Clock::now();
        bool ok = true;
        std::ostringstream d;
        for (auto [id, roots] : {std::pair{LabelModel::N21, 96}, std::pair{LabelModel::N22, 72},
                                 std::pair{LabelModel::N23, 48}}) {
            Report r = verify_build(ctx, id);
            const Check* c = find_check(r, "roots");
            ok = ok && r.verdict() == Verdict::pass && c && c->computed == std::to_string(roots);
            d << model_name(id) << " " << (c ? c->computed : "?") << " roots; ";
        }
        const double s = since(t0);
        ok = ok && s < 10;
        d << s << " s";
        line(1, "Niemeier reconstruction", ok, d.str());
    }

    // 2. Table 1 coinvariant columns
    {
        const std::vector<int> listed{9, 10, 12, 16, 17, 21, 22, 26, 30, 34, 39, 40, 49, 51, 55, 56, 61, 65, 75};
        std::set<int> witnessed;
        for (const auto& c : ctx.data().cases)
            for (const auto& mk : c.markings) {
                witnessed.insert(c.big.n);
                if (mk.small_index < static_cast<int>(c.small.size()) && !mk.subgroup_generators.empty())
                    witnessed.insert(c.small[mk.small_index].n);
            }
        bool ok = true;
        int passed = 0;
        std::vector<int> absent, bad;
        for (int n : listed)
            if (!witnessed.count(n)) absent.push_back(n);
        for (int n : witnessed) {
            if (!ctx.data().table1_row(n)) continue;
            Report r = verify_group_invariants(ctx, n);
            if (r.verdict() == Verdict::pass)
                ++passed;
            else if (!(r.verdict() == Verdict::skip && r.reason() == skip_reason::no_generators)) {
                ok = false;
                bad.push_back(n);
            }
        }
        Report r21 = verify_group_invariants(ctx, 21);
        const Check* rk = nullptr;
        for (const auto& c : r21.checks)
            if (c.name.ends_with("rk_SG")) rk = &c;
        ok = ok && rk && rk->computed == "15";
        int involutions = 0;
        bool inv_ok = true;
        for (auto [order, n] : {std::pair{2, 1}, std::pair{3, 2}, std::pair{4, 4}}) {
            Report c = verify_cyclic_elements(ctx, order, n);
            for (const auto& ch : c.checks) {
                if (order == 2) ++involutions;
                inv_ok = inv_ok && ch.verdict != Verdict::fail;
            }
            inv_ok = inv_ok && c.verdict() == Verdict::pass;
        }
        ok = ok && inv_ok && involutions > 0;
        std::ostringstream d;
        d << passed << " groups PASS";
        if (!bad.empty()) {
            d << ", not passing:";
            for (int n : bad) d << " " << n;
        }
        if (!absent.empty()) {
            d << "; no case carries generators of type";
            for (int n : absent) d << " " << n;
        }
        d << "; " << involutions << " involution checks " << (inv_ok ? "PASS" : "FAIL");
        line(2, "Table 1 coinvariant columns", ok, d.str());
    }

    // 3 and 4. cases
    {
        std::vector<int> all;
        for (const auto& c : ctx.data().cases) all.push_back(c.number);
        const auto t0 = Clock::now();
        const std::vector<Report> reports = verify_cases(ctx, all);
        const double s = since(t0);
        const Summary sum = summarize(reports);
        std::set<RowRef> rows;
        for (const auto& c : ctx.data().cases) {
            if (c.suspect) continue;
            rows.insert(c.big.row);
            for (const auto& side : c.small) rows.insert(side.row);
        }
        bool example = false;
        for (const auto& r : reports)
            if (r.id == 39) {
                const Check* rk = find_check(r, "big.rk_S");
                const Check* q = find_check(r, "big.q_S");
                example = rk && q && rk->computed == "19" && q->verdict == Verdict::pass;
            }
        std::ostringstream d;
        d << sum.pass << " PASS, " << sum.fail << " FAIL, " << sum.skip << " SKIP, " << sum.data_suspect
          << " DATA-SUSPECT; " << rows.size() << " distinct rows; " << s << " s";
        line(3, "degeneration rows", sum.pass >= 70 && sum.fail == 0 && rows.size() >= 60 && s < 300 && example,
             d.str());

        bool ok = true;
        int checked = 0, cases = 0;
        for (const auto& r : reports) {
            const ProofCase* c = ctx.data().find_case(r.id);
            if (!c || c->suspect) continue;
            ++cases;
            for (const char* name : {"rk S1 = rk S", "q_S1 ≅ q_S", "Dyn(S1) = Dyn(S)"})
                ok = ends_with_check(r, name, Verdict::pass, &checked) && ok;
        }
        ok = ok && checked >= 3 * cases;
        std::ostringstream d4;
        d4 << checked << " checks over " << cases << " non-suspect cases";
        line(4, "List 1 isomorphism checks", ok, d4.str());
    }

    // 5. subgroup list
    {
        const auto search = verify_subgroups(ctx, SubgroupMode::search);
        const auto stated = verify_subgroups(ctx, SubgroupMode::stated);
        const Summary a = summarize(search), b = summarize(stated);
        auto listed_pass = [&](int n, std::set<std::string> want) {
            for (const auto& r : search)
                if (r.id == n) {
                    for (const auto& c : r.checks)
                        if (c.verdict == Verdict::pass && c.name.starts_with("n1=")) want.erase(c.name.substr(3));
                    return want.empty();
                }
            return false;
        };
        const bool ok = a.fail == 0 && b.fail == 0 && a.pass > 0 && b.pass > 0 &&
                        listed_pass(21, {"1", "3", "9"}) && listed_pass(22, {"1", "3", "4", "9", "10"});
        std::ostringstream d;
        d << "search " << a.pass << " PASS/" << a.fail << " FAIL/" << a.skip << " SKIP; stated " << b.pass << " PASS/"
          << b.fail << " FAIL/" << b.skip << " SKIP";
        line(5, "subgroup list", ok, d.str());
    }

    // 6. symbol vs oracle
    {
        const std::size_t bound = ctx.options().oracle_bound;
        std::vector<RunForm> forms;
        for (auto& f : run_forms(ctx)) {
            if (f.form.order() > bound) continue;
            bool dup = false;
            for (const auto& g : forms) dup = dup || same_form(g.form, f.form);
            if (!dup) forms.push_back(std::move(f));
        }
        bool ok = true;
        int milgram_bad = 0;
        std::size_t pairs = 0;
        std::map<std::string, std::vector<std::size_t>> by_order;
        for (std::size_t i = 0; i < forms.size(); ++i) {
            by_order[forms[i].form.order().get_str()].push_back(i);
            const auto s = gauss_signature(forms[i].form);
            if (!s || *s != (8 - forms[i].rank % 8) % 8) ++milgram_bad;
        }
        for (const auto& [order, idx] : by_order)
            for (std::size_t a = 0; a < idx.size(); ++a)
                for (std::size_t b = a + 1; b < idx.size(); ++b) {
                    const auto& f = forms[idx[a]].form;
                    const auto& g = forms[idx[b]].form;
                    const bool sym = genus_symbol(f) == genus_symbol(g);
                    if (sym != forms_isomorphic(f, g, bound)) {
                        ok = false;
                        std::cerr << "mismatch: " << print_symbol(genus_symbol(f)) << " vs "
                                  << print_symbol(genus_symbol(g)) << "\n";
                    }
                    ++pairs;
                }
        std::mt19937 rng(20240);
        int random_ok = 0, tested = 0;
        while (tested < 200) {
            std::size_t n1 = 1 + rng() % 3, n2 = 1 + rng() % 3;
            IntMatrix x = random_even_gram(rng, n1), y = random_even_gram(rng, n2);
            IntMatrix xy = block_sum(x, y);
            if (determinant(xy) > static_cast<long>(bound)) continue;
            ++tested;
            const auto lhs = discriminant_form_gram(xy);
            const auto rhs = direct_sum(discriminant_form_gram(x), discriminant_form_gram(y));
            const auto s = gauss_signature(lhs);
            if (forms_isomorphic(lhs, rhs, bound) && genus_symbol(lhs) == genus_symbol(rhs) && s &&
                *s == static_cast<int>((n1 + n2) % 8))
                ++random_ok;
        }
        ok = ok && milgram_bad == 0 && random_ok == 200;
        std::ostringstream d;
        d << forms.size() << " run forms, " << pairs << " equal-order pairs, " << milgram_bad
          << " Milgram failures; " << random_ok << "/200 random sums";
        line(6, "symbol/oracle equivalence", ok, d.str());
    }

    // 7. parser round trips
    {
        int total = 0, good = 0, bad = 0;
        std::vector<std::string> flagged;
        for (const auto& [t, rows] : ctx.data().tables)
            for (const auto& r : rows) {
                std::vector<std::string> texts{r.q_S};
                if (r.q_SG) texts.push_back(r.q_SG_reading ? *r.q_SG_reading : *r.q_SG);
                for (const auto& s : texts) {
                    ++total;
                    const std::string where = "table " + std::to_string(t) + " row " + std::to_string(r.index);
                    try {
                        const GenusSymbol parsed = parse_symbol(s);
                        if (!is_realizable(parsed)) {
                            // parses, but no finite form carries it
                            if (r.suspect)
                                flagged.push_back(where + " \"" + s + "\"");
                            else
                                ++bad;
                            continue;
                        }
                        const std::string printed = canonical_text(s);
                        const auto x = realize(parsed), y = realize(parse_symbol(printed));
                        const bool iso = x.order() <= ctx.options().oracle_bound
                                             ? forms_isomorphic(x, y, ctx.options().oracle_bound)
                                             : genus_symbol(x) == genus_symbol(y);
                        if (iso && canonical_text(printed) == printed)
                            ++good;
                        else
                            ++bad;
                    } catch (const std::exception& e) {
                        std::cerr << where << ": " << e.what() << "\n";
                        ++bad;
                    }
                }
            }
        std::ostringstream d;
        d << good << "/" << total << " strings round-trip, " << bad << " failures";
        for (const auto& f : flagged) d << "; DATA-SUSPECT " << f << " is unrealizable";
        line(7, "parser round trips", bad == 0 && good + static_cast<int>(flagged.size()) == total && good >= 250,
             d.str());
    }

    return failures == 0 ? 0 : 1;
}
