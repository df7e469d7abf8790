#include "nv/pipeline.hpp"

#include "nv/genus_symbol.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <thread>

namespace nv {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string two(int n) {
    std::string s = std::to_string(n);
    return s.size() < 2 ? "0" + s : s;
}

std::vector<int> sorted_copy(std::vector<int> v) {
    std::sort(v.begin(), v.end());
    return v;
}

std::string labels_text(const std::vector<int>& v, LabelModel m) {
    std::string s = "{";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + label_name(v[i], m);
    return s + "}";
}

/// Positive roots of the A_r components, as scaled ambient vectors.
std::vector<std::vector<Int>> positive_roots(const NiemeierModel& model) {
    std::vector<std::vector<Int>> out;
    const int r = model.comp_rank;
    for (int c = 0; c < model.components; ++c)
        for (int i = 0; i < r; ++i)
            for (int j = i; j < r; ++j) {
                std::vector<Int> v(kDegree, 0);
                for (int k = i; k <= j; ++k) v[c * r + k] = model.denom();
                out.push_back(std::move(v));
            }
    return out;
}

std::string deg_text_of(const Degeneration& d) {
    std::string s;
    const std::size_t t = d.orbit_types.size();
    for (std::size_t i = 0; i < t; ++i) {
        if (i) s += " / ";
        s += d.orbit_types[i].to_string();
        for (std::size_t j = i + 1; j < t; ++j) s += " " + d.pair_types[i][j].to_string();
    }
    return s + " ⊂ " + d.full_type.to_string();
}

/// Bijection computed orbit -> pattern orbit respecting types and, for matrices, pair cells.
bool match_orbits(const Degeneration& d, const DegPattern& p) {
    const std::size_t t = d.orbit_types.size();
    if (p.orbit_count() != t) return false;
    std::vector<int> image(t, -1);
    std::vector<bool> used(t, false);
    std::function<bool(std::size_t)> go = [&](std::size_t i) {
        if (i == t) return true;
        for (std::size_t k = 0; k < t; ++k) {
            if (used[k] || !(p.orbits[k].type == d.orbit_types[i])) continue;
            bool ok = true;
            if (p.matrix)
                for (std::size_t j = 0; j < i && ok; ++j) {
                    auto cell = p.cell(std::min<std::size_t>(k, image[j]), std::max<std::size_t>(k, image[j]));
                    ok = cell && cell->type == d.pair_types[j][i];
                }
            if (!ok) continue;
            used[k] = true;
            image[i] = static_cast<int>(k);
            if (go(i + 1)) return true;
            used[k] = false;
        }
        return false;
    };
    return go(0);
}

}  // namespace

// ---------------------------------------------------------------- computation

Lattice coinvariant_of(const NiemeierModel& model, const std::vector<Permutation>& generators) {
    AmbientAction action;
    for (std::size_t i = 0; i < generators.size(); ++i) {
        auto P = lift_permutation(model, generators[i]);
        if (!P)
            throw lift_error("generator " + std::to_string(i + 1) + " " + generators[i].to_string(model.id) +
                             " does not preserve " + model_name(model.id));
        action.push_back(std::move(*P));
    }
    return coinvariant_lattice(model.lattice, action);
}

Degeneration compute_degeneration(const NiemeierModel& model, const std::vector<Permutation>& generators,
                                  const std::vector<std::vector<int>>& orbits) {
    Degeneration d;
    d.SG = coinvariant_of(model, generators);
    const Lattice& N = model.lattice;

    std::vector<int> all;
    for (const auto& o : orbits) all.insert(all.end(), o.begin(), o.end());
    const IntMatrix R = model.root_vectors(all);
    d.S = saturate(coordinates_in(N, d.SG.basis.append_rows(R)), N);

    d.q_SG = discriminant_form(d.SG);
    d.q_S = discriminant_form(d.S);
    d.symbol_SG = print_symbol(genus_symbol(d.q_SG));
    d.symbol_S = print_symbol(genus_symbol(d.q_S));
    d.definite = is_positive_definite(d.S.gram());
    d.milgram = gauss_signature(d.q_S);

    d.full_type = dynkin_classify(R, N);
    const std::size_t t = orbits.size();
    d.pair_types.assign(t, std::vector<RootSystemType>(t));
    for (std::size_t i = 0; i < t; ++i) {
        d.orbit_types.push_back(dynkin_classify(model.root_vectors(orbits[i]), N));
        d.pair_types[i][i] = d.orbit_types[i];
        for (std::size_t j = i + 1; j < t; ++j) {
            std::vector<int> u = orbits[i];
            u.insert(u.end(), orbits[j].begin(), orbits[j].end());
            d.pair_types[i][j] = d.pair_types[j][i] = dynkin_classify(model.root_vectors(u), N);
        }
    }

    // v in N lies in the primitive S exactly when it is orthogonal to S^perp
    const Lattice perp = orthogonal_complement(d.S, N);
    const IntMatrix M = N.ambient_gram * perp.basis.transpose();
    for (const auto& v : positive_roots(model)) {
        std::vector<Int> w = row_times(v, M);
        if (std::all_of(w.begin(), w.end(), [](const Int& x) { return x == 0; })) d.roots_in_S += 2;
    }
    return d;
}

Check symbol_check(const std::string& name, const std::string& expected_text, const FiniteQuadraticForm& computed,
                   std::size_t oracle_bound) {
    const std::string got = print_symbol(genus_symbol(computed));
    GenusSymbol want;
    std::string want_text;
    try {
        want = canonicalize(parse_symbol(expected_text));
        want_text = print_symbol(want);
    } catch (const std::exception& e) {
        return fail_check(name, expected_text, got, std::string("expected symbol is invalid: ") + e.what());
    }
    const bool canonical_equal = want_text == got;
    std::string oracle;
    bool oracle_says = canonical_equal;
    if (computed.order() > oracle_bound) {
        oracle = "oracle: unavailable (|A| = " + computed.order().get_str() + ")";
    } else {
        try {
            oracle_says = forms_isomorphic(computed, realize(want), oracle_bound);
            oracle = oracle_says ? "oracle: isomorphic" : "oracle: not isomorphic";
        } catch (const oracle_unavailable&) {
            oracle = "oracle: unavailable";
        }
    }
    const std::string shown = want_text == expected_text ? want_text : expected_text + " = " + want_text;
    if (canonical_equal && oracle_says) {
        Check c = pass_check(name, shown, got);
        c.detail = oracle;
        return c;
    }
    std::string detail = canonical_equal ? "canonical symbols agree but " + oracle : "canonical " + want_text +
                                                                                        " vs " + got + "; " + oracle;
    return fail_check(name, shown, got, detail);
}

std::vector<Check> degeneration_checks(const Degeneration& d, const TableRow& expected, const TableRow* table1,
                                       std::size_t orbit_count, std::size_t oracle_bound) {
    std::vector<Check> out;
    std::optional<int> rk_SG = expected.rk_SG;
    if (!rk_SG && table1) rk_SG = table1->rk_SG;
    if (rk_SG)
        out.push_back(compare_check("rk_SG", std::to_string(*rk_SG), std::to_string(d.SG.rank())));
    if (table1 && table1->q_SG) {
        const std::string& text = table1->q_SG_reading ? *table1->q_SG_reading : *table1->q_SG;
        out.push_back(symbol_check("q_SG", text, d.q_SG, oracle_bound));
    }
    out.push_back(compare_check("S definite", "yes", d.definite ? "yes" : "no"));
    out.push_back(compare_check("rk_S", std::to_string(expected.rk_S), std::to_string(d.S.rank())));
    out.push_back(compare_check("rk_S = rk_SG + t", std::to_string(d.SG.rank() + orbit_count),
                                std::to_string(d.S.rank())));
    out.push_back(symbol_check("q_S", expected.q_S, d.q_S, oracle_bound));
    const int want_sig = static_cast<int>((8 - d.S.rank() % 8) % 8);
    out.push_back(compare_check("Milgram", std::to_string(want_sig), d.milgram ? std::to_string(*d.milgram) : "none"));
    out.push_back(compare_check("roots of S", std::to_string(d.full_type.root_count()), std::to_string(d.roots_in_S),
                                "S contains norm-2 vectors outside the orbit root subsystem"));
    if (!expected.pattern) {
        out.push_back(fail_check("Dyn", expected.deg, deg_text_of(d), "expected pattern does not parse"));
        return out;
    }
    out.push_back(compare_check("Dyn", expected.pattern->full_type.to_string(), d.full_type.to_string()));
    Check orb = compare_check("Dyn orbits", expected.deg, deg_text_of(d));
    orb.verdict = match_orbits(d, *expected.pattern) ? Verdict::pass : Verdict::fail;
    if (orb.verdict == Verdict::fail) orb.detail = "no orbit bijection matches the pattern";
    out.push_back(orb);
    return out;
}

// ---------------------------------------------------------------- alignments

nlohmann::json alignment_table_json(const AlignmentTable& t) {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["global"] = nlohmann::json::object();
    for (const auto& [m, a] : t.global) j["global"][model_name(m)] = {{"component", a.component}, {"sign", a.sign}};
    j["overrides"] = nlohmann::json::array();
    for (const auto& [key, a] : t.overrides)
        j["overrides"].push_back(
            {{"case", key.first}, {"marking", key.second}, {"component", a.component}, {"sign", a.sign}});
    j["failures"] = nlohmann::json::array();
    for (const auto& [key, why] : t.failures)
        j["failures"].push_back({{"case", key.first}, {"marking", key.second}, {"reason", why}});
    return j;
}

AlignmentTable alignment_table_from_json(const nlohmann::json& j) {
    AlignmentTable t;
    auto read = [](const nlohmann::json& a) {
        Alignment s;
        s.component = a.at("component").get<std::vector<int>>();
        s.sign = a.at("sign").get<std::vector<int>>();
        return s;
    };
    for (const auto& [name, a] : j.at("global").items()) t.global[model_from_name(name)] = read(a);
    for (const auto& o : j.value("overrides", nlohmann::json::array()))
        t.overrides[{o.at("case").get<int>(), o.at("marking").get<int>()}] = read(o);
    for (const auto& f : j.value("failures", nlohmann::json::array()))
        t.failures[{f.at("case").get<int>(), f.at("marking").get<int>()}] = f.at("reason").get<std::string>();
    return t;
}

struct Context::Lazy {
    std::once_flag model_once[3];
    std::unique_ptr<NiemeierModel> models[3];
    std::once_flag align_once;
    AlignmentTable table;
    std::mutex mu;
    std::map<std::pair<int, int>, std::optional<Alignment>> marking_cache;
};

namespace {

int model_slot(LabelModel id) {
    switch (id) {
        case LabelModel::N23: return 0;
        case LabelModel::N22: return 1;
        case LabelModel::N21: return 2;
        default: throw construction_error("no Niemeier lattice for label model " + model_name(id));
    }
}

bool lifts_all(const NiemeierModel& model, const Alignment& a, const std::vector<Permutation>& gens) {
    for (const auto& g : gens)
        if (!lift_permutation(model, a.apply(model, g))) return false;
    return true;
}

/// Generators of both groups of a marking; throws perm_parse_error on bad text.
std::vector<Permutation> marking_generators(const Marking& mk) {
    std::vector<Permutation> out = parse_generators(mk.generators, mk.model);
    for (auto& p : parse_generators(mk.subgroup_generators, mk.model)) out.push_back(p);
    return out;
}

}  // namespace

std::vector<std::vector<int>> parse_orbits(const std::vector<std::vector<std::string>>& orbits, LabelModel m) {
    std::vector<std::vector<int>> out;
    for (const auto& o : orbits) {
        std::vector<int> v;
        for (const auto& l : o) v.push_back(label_index(l, m));
        out.push_back(std::move(v));
    }
    return out;
}

std::vector<Permutation> parse_generators(const std::vector<std::string>& gens, LabelModel m) {
    std::vector<Permutation> out;
    for (const auto& g : gens) out.push_back(parse_cycles(g, m));
    return out;
}

Context::Context(Dataset ds, std::filesystem::path data_dir, VerifyOptions opts)
    : ds_(std::move(ds)), dir_(std::move(data_dir)), opts_(opts), lazy_(std::make_shared<Lazy>()) {}

const NiemeierModel& Context::model(LabelModel id) const {
    const int k = model_slot(id);
    std::call_once(lazy_->model_once[k],
                   [&] { lazy_->models[k] = std::make_unique<NiemeierModel>(build_niemeier(id, dir_)); });
    return *lazy_->models[k];
}

AlignmentTable Context::compute_alignments() const {
    AlignmentTable t;
    for (LabelModel id : {LabelModel::N23, LabelModel::N22, LabelModel::N21}) {
        std::vector<Permutation> gens;
        for (const auto& c : ds_.cases) {
            if (c.suspect) continue;
            for (const auto& mk : c.markings)
                if (mk.model == id)
                    for (const auto& p : marking_generators(mk)) gens.push_back(p);
        }
        std::sort(gens.begin(), gens.end());
        gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
        if (gens.empty()) continue;
        AlignResult r = align_code(model(id), gens);
        if (r.sigma) t.global[id] = *r.sigma;
    }
    for (const auto& c : ds_.cases)
        for (std::size_t k = 0; k < c.markings.size(); ++k) {
            const Marking& mk = c.markings[k];
            const std::pair<int, int> key{c.number, static_cast<int>(k)};
            std::vector<Permutation> gens;
            try {
                gens = marking_generators(mk);
            } catch (const std::exception& e) {
                t.failures[key] = std::string("generator text does not parse: ") + e.what();
                continue;
            }
            const NiemeierModel& m = model(mk.model);
            auto g = t.global.find(mk.model);
            if (g != t.global.end() && lifts_all(m, g->second, gens)) continue;
            AlignResult r = align_code(m, gens);
            if (r.sigma)
                t.overrides[key] = *r.sigma;
            else
                t.failures[key] = r.exhausted ? "no relabeling preserves the glue code (" + r.certificate + ")"
                                              : "alignment search hit its node limit";
        }
    return t;
}

const AlignmentTable& Context::alignments() const {
    std::call_once(lazy_->align_once, [&] {
        const auto file = dir_ / "alignments.json";
        if (std::filesystem::exists(file)) {
            std::ifstream in(file);
            lazy_->table = alignment_table_from_json(nlohmann::json::parse(in));
        } else {
            lazy_->table = compute_alignments();
        }
    });
    return lazy_->table;
}

std::optional<Alignment> Context::marking_alignment(int case_number, int marking_index) const {
    const std::pair<int, int> key{case_number, marking_index};
    {
        std::lock_guard<std::mutex> lock(lazy_->mu);
        auto it = lazy_->marking_cache.find(key);
        if (it != lazy_->marking_cache.end()) return it->second;
    }
    const ProofCase* c = ds_.find_case(case_number);
    if (!c || marking_index < 0 || marking_index >= static_cast<int>(c->markings.size())) return std::nullopt;
    const Marking& mk = c->markings[marking_index];
    std::optional<Alignment> result;
    std::vector<Permutation> gens;
    bool parsed = true;
    try {
        gens = marking_generators(mk);
    } catch (const std::exception&) {
        parsed = false;
    }
    if (parsed) {
        const NiemeierModel& m = model(mk.model);
        const AlignmentTable& t = alignments();
        auto o = t.overrides.find(key);
        auto g = t.global.find(mk.model);
        if (o != t.overrides.end() && lifts_all(m, o->second, gens))
            result = o->second;
        else if (g != t.global.end() && lifts_all(m, g->second, gens))
            result = g->second;
        else if (AlignResult r = align_code(m, gens); r.sigma)
            result = *r.sigma;
    }
    std::lock_guard<std::mutex> lock(lazy_->mu);
    lazy_->marking_cache[key] = result;
    return result;
}

// ---------------------------------------------------------------- degenerations

Report verify_degeneration(const Context& ctx, LabelModel id, const Alignment& sigma,
                           const std::vector<Permutation>& generators, const std::vector<std::vector<int>>& orbits,
                           const TableRow& expected) {
    const auto t0 = Clock::now();
    Report r;
    r.kind = ReportKind::table;
    r.id = expected.table * 1000 + expected.index;
    r.title = "table " + std::to_string(expected.table) + " row " + std::to_string(expected.index);
    const NiemeierModel& model = ctx.model(id);
    std::vector<Permutation> gens;
    for (const auto& g : generators) gens.push_back(sigma.apply(model, g));
    std::vector<std::vector<int>> orb;
    for (const auto& o : orbits) {
        std::vector<int> v;
        for (int l : o) v.push_back(sigma.apply_label(model, l));
        orb.push_back(std::move(v));
    }
    try {
        Degeneration d = compute_degeneration(model, gens, orb);
        r.add_all(degeneration_checks(d, expected, ctx.data().table1_row(expected.n), orbits.size(),
                                      ctx.options().oracle_bound));
    } catch (const lift_error& e) {
        r.forced = Verdict::data_suspect;
        r.forced_reason = skip_reason::lift_failure;
        Check c{"lift", "all generators preserve the lattice", e.what(), Verdict::data_suspect,
                skip_reason::lift_failure, ""};
        r.add(c);
    } catch (const std::exception& e) {
        r.add(fail_check("degeneration", "computable", "error", e.what()));
    }
    r.seconds = seconds_since(t0);
    return r;
}

namespace {

std::string group_name_of(const Dataset& ds, int n) {
    const GroupInfo* g = ds.group(n);
    return g ? g->name : "n=" + std::to_string(n);
}

/// Orbits of g, as sorted label lists.
std::set<std::vector<int>> orbit_set(const PermGroup& g) {
    std::set<std::vector<int>> out;
    for (const auto& o : orbits(g)) out.insert(sorted_copy(o));
    return out;
}

void case_marking_checks(const Context& ctx, const ProofCase& c, std::size_t k, Report& r) {
    const Dataset& ds = ctx.data();
    const Marking& mk = c.markings[k];
    const std::string pre = c.markings.size() > 1 ? "m" + std::to_string(k + 1) + "." : "";
    const LabelModel m = mk.model;
    std::vector<Permutation> gens, sub;
    std::vector<std::vector<int>> orbs, subs;
    try {
        gens = parse_generators(mk.generators, m);
        sub = parse_generators(mk.subgroup_generators, m);
        orbs = parse_orbits(mk.orbits, m);
        subs = parse_orbits(mk.suborbits, m);
    } catch (const std::exception& e) {
        r.add(fail_check(pre + "parse", "valid labels", "error", e.what()));
        return;
    }
    const PermGroup G(m, gens), G1(m, sub);
    const auto catalog = ds.catalog();
    const CaseSide& small = c.small.at(static_cast<std::size_t>(mk.small_index));

    r.add(compare_check(pre + "G1 ⊂ G", "yes", contains_subgroup(G, G1) ? "yes" : "no"));
    auto type_check = [&](const std::string& name, const PermGroup& g, int n) {
        try {
            r.add(compare_check(name, group_name_of(ds, n), identify_type(g, catalog),
                                "order " + std::to_string(g.order())));
        } catch (const std::exception& e) {
            r.add(fail_check(name, group_name_of(ds, n), "error", e.what()));
        }
    };
    type_check(pre + "type G", G, c.big.n);
    type_check(pre + "type G1", G1, small.n);

    // listed orbits are G-orbits, suborbits are G1-orbits refining them
    const auto go = orbit_set(G), ho = orbit_set(G1);
    std::string bad;
    for (const auto& o : orbs)
        if (!go.count(sorted_copy(o))) bad += " " + labels_text(o, m) + " is not a G-orbit;";
    std::set<int> uo, us;
    for (const auto& o : orbs) uo.insert(o.begin(), o.end());
    for (const auto& s : subs) {
        us.insert(s.begin(), s.end());
        if (!ho.count(sorted_copy(s))) bad += " " + labels_text(s, m) + " is not a G1-orbit;";
        bool inside = std::any_of(orbs.begin(), orbs.end(), [&](const std::vector<int>& o) {
            return std::all_of(s.begin(), s.end(), [&](int x) { return std::count(o.begin(), o.end(), x) > 0; });
        });
        if (!inside) bad += " " + labels_text(s, m) + " is not inside one orbit;";
    }
    if (uo != us) bad += " suborbits do not cover the orbits;";
    r.add(compare_check(pre + "suborbits refine orbits", "yes", bad.empty() ? "yes" : "no", bad));

    std::optional<Alignment> sigma = ctx.marking_alignment(c.number, static_cast<int>(k));
    if (!sigma) {
        r.add({pre + "lift", "generators preserve " + model_name(m), "no relabeling found", Verdict::data_suspect,
               skip_reason::lift_failure, ""});
        return;
    }
    const NiemeierModel& model = ctx.model(m);
    auto relabel_p = [&](const std::vector<Permutation>& v) {
        std::vector<Permutation> out;
        for (const auto& p : v) out.push_back(sigma->apply(model, p));
        return out;
    };
    auto relabel_o = [&](const std::vector<std::vector<int>>& v) {
        std::vector<std::vector<int>> out;
        for (const auto& o : v) {
            std::vector<int> w;
            for (int l : o) w.push_back(sigma->apply_label(model, l));
            out.push_back(std::move(w));
        }
        return out;
    };
    const std::size_t bound = ctx.options().oracle_bound;
    std::optional<Degeneration> dbig, dsmall;
    auto side = [&](const char* tag, const std::vector<Permutation>& g, const std::vector<std::vector<int>>& o,
                    const CaseSide& cs, std::optional<Degeneration>& out) {
        const TableRow& row = ds.row(cs.row);
        try {
            out = compute_degeneration(model, relabel_p(g), relabel_o(o));
            for (auto ch : degeneration_checks(*out, row, ds.table1_row(cs.n), o.size(), bound)) {
                ch.name = pre + tag + "." + ch.name;
                r.add(std::move(ch));
            }
        } catch (const lift_error& e) {
            r.add({pre + tag + ".lift", "generators preserve " + model_name(m), e.what(), Verdict::data_suspect,
                   skip_reason::lift_failure, ""});
        } catch (const std::exception& e) {
            r.add(fail_check(pre + tag + ".degeneration", "computable", "error", e.what()));
        }
    };
    side("big", gens, orbs, c.big, dbig);
    side("small", sub, subs, small, dsmall);
    if (!dbig || !dsmall) return;

    r.add(compare_check(pre + "rk S1 = rk S", std::to_string(dbig->S.rank()), std::to_string(dsmall->S.rank())));
    Check iso{pre + "q_S1 ≅ q_S", dbig->symbol_S, dsmall->symbol_S, Verdict::pass, "", ""};
    if (dbig->q_S.order() != dsmall->q_S.order()) {
        iso.verdict = Verdict::fail;
        iso.detail = "discriminant groups differ in order";
    } else if (dbig->q_S.order() > bound) {
        iso.verdict = iso.expected == iso.computed ? Verdict::pass : Verdict::fail;
        iso.detail = "oracle: unavailable; compared canonical symbols";
    } else {
        try {
            iso.verdict = forms_isomorphic(dbig->q_S, dsmall->q_S, bound) ? Verdict::pass : Verdict::fail;
            iso.detail = iso.verdict == Verdict::pass ? "oracle: isomorphic" : "oracle: not isomorphic";
        } catch (const oracle_unavailable&) {
            iso.verdict = iso.expected == iso.computed ? Verdict::pass : Verdict::fail;
            iso.detail = "oracle: unavailable; compared canonical symbols";
        }
    }
    r.add(iso);
    r.add(compare_check(pre + "Dyn(S1) = Dyn(S)", dbig->full_type.to_string(), dsmall->full_type.to_string()));
}

}  // namespace

Report verify_list1_case(const Context& ctx, const ProofCase& c) {
    const auto t0 = Clock::now();
    Report r;
    r.kind = ReportKind::case_;
    r.id = c.number;
    r.title = "case " + two(c.number);
    if (c.suspect) {
        r.forced = Verdict::skip;
        r.forced_reason = skip_reason::data_suspect;
        for (const auto& is : c.issues)
            r.add({"data " + is.path, is.correction, is.verbatim, Verdict::skip, skip_reason::data_suspect, is.reason});
        r.seconds = seconds_since(t0);
        return r;
    }
    for (std::size_t k = 0; k < c.markings.size(); ++k) case_marking_checks(ctx, c, k, r);
    if (c.markings.empty()) r.add(skip_check("markings", skip_reason::no_generators));
    r.seconds = seconds_since(t0);
    return r;
}

namespace {

/// Runs f(i) for i in [0, n) on the requested number of threads.
template <class F>
void parallel_for(std::size_t n, int jobs, F f) {
    const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(static_cast<std::size_t>(std::max(jobs, 1)), n));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++) f(i);
        });
    for (auto& t : pool) t.join();
}

}  // namespace

std::vector<Report> verify_cases(const Context& ctx, const std::vector<int>& numbers) {
    std::vector<const ProofCase*> todo;
    for (int n : numbers) {
        const ProofCase* c = ctx.data().find_case(n);
        if (!c) throw std::out_of_range("no case " + std::to_string(n));
        todo.push_back(c);
    }
    ctx.alignments();
    std::vector<Report> out(todo.size());
    parallel_for(todo.size(), ctx.options().jobs, [&](std::size_t i) { out[i] = verify_list1_case(ctx, *todo[i]); });
    sort_reports(out);
    return out;
}

// ---------------------------------------------------------------- groups and tables

namespace {

struct GroupWitness {
    int case_number = 0;
    int marking = 0;
    bool subgroup = false;
    LabelModel model = LabelModel::N23;
    std::vector<Permutation> generators;  // source labels
};

/// Non-suspect case groups of catalog type n (G of a big side, G1 of a small side).
std::vector<GroupWitness> group_witnesses(const Dataset& ds, std::optional<int> n) {
    std::vector<GroupWitness> out;
    std::set<std::pair<LabelModel, std::vector<Permutation>>> seen;
    for (const auto& c : ds.cases) {
        if (c.suspect) continue;
        for (std::size_t k = 0; k < c.markings.size(); ++k) {
            const Marking& mk = c.markings[k];
            const int small_n = c.small.at(static_cast<std::size_t>(mk.small_index)).n;
            for (bool sub : {false, true}) {
                if (n && (sub ? small_n : c.big.n) != *n) continue;
                GroupWitness w{c.number, static_cast<int>(k), sub, mk.model, {}};
                try {
                    w.generators = parse_generators(sub ? mk.subgroup_generators : mk.generators, mk.model);
                } catch (const std::exception&) {
                    continue;
                }
                std::vector<Permutation> key = w.generators;
                std::sort(key.begin(), key.end());
                if (seen.insert({mk.model, key}).second) out.push_back(std::move(w));
            }
        }
    }
    return out;
}

std::string witness_name(const GroupWitness& w) {
    return "case " + two(w.case_number) + (w.marking ? " m" + std::to_string(w.marking + 1) : "") +
           (w.subgroup ? " G1" : " G");
}

}  // namespace

Report verify_group_invariants(const Context& ctx, int n) {
    const auto t0 = Clock::now();
    Report r;
    r.kind = ReportKind::group;
    r.id = n;
    r.title = "group n=" + std::to_string(n);
    const Dataset& ds = ctx.data();
    const TableRow* t1 = ds.table1_row(n);
    if (!t1 || !t1->rk_SG) {
        r.forced = Verdict::skip;
        r.forced_reason = skip_reason::out_of_scope;
        return r;
    }
    const auto ws = group_witnesses(ds, n);
    if (ws.empty()) {
        r.forced = Verdict::skip;
        r.forced_reason = skip_reason::no_generators;
        return r;
    }
    for (const auto& w : ws) {
        const std::string pre = witness_name(w) + ": ";
        auto sigma = ctx.marking_alignment(w.case_number, w.marking);
        if (!sigma) {
            r.add({pre + "lift", "", "no relabeling found", Verdict::data_suspect, skip_reason::lift_failure, ""});
            continue;
        }
        const NiemeierModel& model = ctx.model(w.model);
        std::vector<Permutation> gens;
        for (const auto& g : w.generators) gens.push_back(sigma->apply(model, g));
        try {
            Lattice SG = coinvariant_of(model, gens);
            r.add(compare_check(pre + "rk_SG", std::to_string(*t1->rk_SG), std::to_string(SG.rank())));
            if (t1->q_SG)
                r.add(symbol_check(pre + "q_SG", t1->q_SG_reading ? *t1->q_SG_reading : *t1->q_SG,
                                   discriminant_form(SG), ctx.options().oracle_bound));
        } catch (const lift_error& e) {
            r.add({pre + "lift", "", e.what(), Verdict::data_suspect, skip_reason::lift_failure, ""});
        } catch (const std::exception& e) {
            r.add(fail_check(pre + "S_G", "computable", "error", e.what()));
        }
    }
    r.seconds = seconds_since(t0);
    return r;
}

Report verify_cyclic_elements(const Context& ctx, int order, int catalog_n) {
    const auto t0 = Clock::now();
    Report r;
    r.kind = ReportKind::group;
    r.id = catalog_n;
    r.title = "elements of order " + std::to_string(order);
    const Dataset& ds = ctx.data();
    const TableRow* t1 = ds.table1_row(catalog_n);
    if (!t1 || !t1->rk_SG || !t1->q_SG) {
        r.forced = Verdict::skip;
        r.forced_reason = skip_reason::out_of_scope;
        return r;
    }
    // class representatives per witness group, deduplicated across groups after relabeling
    std::set<std::pair<LabelModel, Permutation>> done;
    struct Job {
        std::string name;
        LabelModel model;
        Permutation g;
    };
    std::vector<Job> jobs;
    for (const auto& w : group_witnesses(ds, std::nullopt)) {
        auto sigma = ctx.marking_alignment(w.case_number, w.marking);
        if (!sigma) continue;
        const NiemeierModel& model = ctx.model(w.model);
        std::vector<Permutation> gens;
        for (const auto& g : w.generators) gens.push_back(sigma->apply(model, g));
        PermGroup G(w.model, gens);
        std::set<Permutation> covered;
        for (const auto& x : G.elements()) {
            if (x.order() != order || covered.count(x)) continue;
            for (const auto& t : G.elements()) covered.insert(t.inverse() * x * t);
            if (done.insert({w.model, x}).second) jobs.push_back({witness_name(w), w.model, x});
        }
    }
    std::vector<std::vector<Check>> results(jobs.size());
    parallel_for(jobs.size(), ctx.options().jobs, [&](std::size_t i) {
        const Job& j = jobs[i];
        const NiemeierModel& model = ctx.model(j.model);
        const std::string pre = j.name + " " + j.g.to_string(j.model) + ": ";
        try {
            Lattice SG = coinvariant_of(model, {j.g});
            results[i].push_back(compare_check(pre + "rk_SG", std::to_string(*t1->rk_SG), std::to_string(SG.rank())));
            results[i].push_back(symbol_check(pre + "q_SG", *t1->q_SG, discriminant_form(SG), ctx.options().oracle_bound));
        } catch (const std::exception& e) {
            results[i].push_back(fail_check(pre + "S_G", "computable", "error", e.what()));
        }
    });
    for (const auto& v : results) r.add_all(v);
    if (jobs.empty()) {
        r.forced = Verdict::skip;
        r.forced_reason = skip_reason::no_generators;
    }
    r.seconds = seconds_since(t0);
    return r;
}

std::vector<Report> verify_table(const Context& ctx, int table) {
    const Dataset& ds = ctx.data();
    auto it = ds.tables.find(table);
    if (it == ds.tables.end()) throw std::out_of_range("no table " + std::to_string(table));
    ctx.alignments();

    struct Witness {
        const ProofCase* c;
        std::size_t marking;
        bool small;
    };
    std::map<int, std::vector<Witness>> by_row;
    for (const auto& c : ds.cases) {
        if (c.suspect) continue;
        for (std::size_t k = 0; k < c.markings.size(); ++k) {
            const CaseSide& small = c.small.at(static_cast<std::size_t>(c.markings[k].small_index));
            if (c.big.row.table == table) by_row[c.big.row.index].push_back({&c, k, false});
            if (small.row.table == table) by_row[small.row.index].push_back({&c, k, true});
        }
    }
    const auto& rows = it->second;
    std::vector<Report> out(rows.size());
    parallel_for(rows.size(), ctx.options().jobs, [&](std::size_t i) {
        const TableRow& row = rows[i];
        const auto t0 = Clock::now();
        Report& r = out[i];
        r.kind = ReportKind::table;
        r.id = table * 1000 + row.index;
        r.title = "table " + std::to_string(table) + " row " + (row.index < 10 ? "0" : "") + std::to_string(row.index);
        if (row.suspect) {
            r.forced = Verdict::skip;
            r.forced_reason = skip_reason::data_suspect;
            for (const auto& is : row.issues)
                r.add({"data " + is.path, is.correction, is.verbatim, Verdict::skip, skip_reason::data_suspect,
                       is.reason});
            return;
        }
        auto w = by_row.find(row.index);
        if (w == by_row.end()) {
            r.forced = Verdict::skip;
            r.forced_reason = skip_reason::no_generators;
            return;
        }
        for (const auto& wi : w->second) {
            const Marking& mk = wi.c->markings[wi.marking];
            const std::string pre = "case " + two(wi.c->number) +
                                    (wi.c->markings.size() > 1 ? " m" + std::to_string(wi.marking + 1) : "") + ": ";
            auto sigma = ctx.marking_alignment(wi.c->number, static_cast<int>(wi.marking));
            if (!sigma) {
                r.add({pre + "lift", "", "no relabeling found", Verdict::data_suspect, skip_reason::lift_failure, ""});
                continue;
            }
            try {
                Report d = verify_degeneration(
                    ctx, mk.model, *sigma,
                    parse_generators(wi.small ? mk.subgroup_generators : mk.generators, mk.model),
                    parse_orbits(wi.small ? mk.suborbits : mk.orbits, mk.model), row);
                for (auto ch : d.checks) {
                    ch.name = pre + ch.name;
                    r.add(std::move(ch));
                }
            } catch (const std::exception& e) {
                r.add(fail_check(pre + "parse", "valid labels", "error", e.what()));
            }
        }
        r.seconds = seconds_since(t0);
    });
    if (table == 1) {
        std::set<int> ns;
        for (const auto& row : rows) ns.insert(row.n);
        for (int n : ns) {
            Report g = verify_group_invariants(ctx, n);
            if (g.verdict() != Verdict::skip || g.reason() != skip_reason::no_generators) out.push_back(std::move(g));
        }
        for (auto [order, n] : {std::pair{2, 1}, std::pair{3, 2}, std::pair{4, 4}})
            out.push_back(verify_cyclic_elements(ctx, order, n));
    }
    sort_reports(out);
    return out;
}

// ---------------------------------------------------------------- subgroup lists

Report verify_subgroup_list(const Context& ctx, const SubgroupListEntry& entry, SubgroupMode mode) {
    const auto t0 = Clock::now();
    const Dataset& ds = ctx.data();
    Report r;
    r.kind = ReportKind::subgroups;
    r.id = entry.n;
    r.title = "subgroups of n=" + std::to_string(entry.n) + (mode == SubgroupMode::search ? " (search)" : "");
    const auto ws = group_witnesses(ds, entry.n);
    if (ws.empty()) {
        r.forced = Verdict::skip;
        r.forced_reason = skip_reason::no_generators;
        return r;
    }
    const GroupWitness& w = ws.front();
    const PermGroup G(w.model, w.generators);
    const bool searchable = mode == SubgroupMode::search && G.order() <= kSubgroupSearchBound;
    const auto catalog = ds.catalog();

    // search happens in implemented labels so that each class can be lifted to the lattice
    std::optional<Alignment> sigma;
    if (searchable) sigma = ctx.marking_alignment(w.case_number, w.marking);
    if (searchable && !sigma) {
        r.forced = Verdict::data_suspect;
        r.forced_reason = skip_reason::lift_failure;
        return r;
    }
    const NiemeierModel* model = searchable ? &ctx.model(w.model) : nullptr;
    std::optional<PermGroup> Gi;
    if (searchable) {
        std::vector<Permutation> gens;
        for (const auto& g : w.generators) gens.push_back(sigma->apply(*model, g));
        Gi.emplace(w.model, gens);
    }
    // subgroup classes of type m, and how many of them have the Table 1 coinvariant lattice of m
    auto census = [&](const GroupInfo& info) -> std::pair<std::size_t, std::size_t> {
        const auto found = find_isomorphic_subgroups(*Gi, info.fingerprint);
        const TableRow* t1 = ds.table1_row(info.n);
        std::size_t typical = 0;
        if (t1 && t1->rk_SG && t1->q_SG) {
            const std::string want = canonical_text(t1->q_SG_reading ? *t1->q_SG_reading : *t1->q_SG);
            for (const auto& H : found) {
                const Lattice SH = coinvariant_of(*model, H.generators());
                if (static_cast<int>(SH.rank()) == *t1->rk_SG && print_symbol(genus_symbol(discriminant_form(SH))) == want)
                    ++typical;
            }
        }
        return {found.size(), typical};
    };

    for (int n1 : entry.n1) {
        const std::string name = "n1=" + std::to_string(n1);
        const GroupInfo* info = ds.group(n1);
        if (!info) {
            r.add(fail_check(name, "catalog entry", "missing"));
            continue;
        }
        if (searchable) {
            const auto [classes, typical] = census(*info);
            const std::string got = std::to_string(classes) + " classes, " + std::to_string(typical) + " with the Table 1 S_G";
            Check ch = typical ? pass_check(name, ">= 1 class with the Table 1 S_G", got)
                               : fail_check(name, ">= 1 class with the Table 1 S_G", got);
            ch.detail = "search in " + witness_name(w);
            r.add(ch);
            continue;
        }
        // stated mode: an embedding witnessed by a case with this container and this subgroup type
        std::optional<Check> witnessed;
        for (const auto& c : ds.cases) {
            if (c.suspect || c.big.n != entry.n) continue;
            for (const auto& mk : c.markings) {
                if (c.small.at(static_cast<std::size_t>(mk.small_index)).n != n1) continue;
                const PermGroup Gc(mk.model, parse_generators(mk.generators, mk.model));
                const PermGroup H(mk.model, parse_generators(mk.subgroup_generators, mk.model));
                const bool ok = contains_subgroup(Gc, H) && identify_type(H, catalog) == info->name;
                witnessed = compare_check(name, info->name + " ⊂ G", ok ? info->name + " ⊂ G" : "not embedded");
                witnessed->detail = "case " + two(c.number);
                break;
            }
            if (witnessed) break;
        }
        // chained: n1 occurs as a small side somewhere, and sits inside the G1 of a case with this container
        const bool in_list1 = std::any_of(ds.cases.begin(), ds.cases.end(), [&](const ProofCase& c) {
            return std::any_of(c.small.begin(), c.small.end(), [&](const CaseSide& s) { return s.n == n1; });
        });
        for (const auto& c : ds.cases) {
            if (witnessed || !in_list1) break;
            if (c.suspect || c.big.n != entry.n) continue;
            for (const auto& mk : c.markings) {
                const PermGroup Gc(mk.model, parse_generators(mk.generators, mk.model));
                const PermGroup H(mk.model, parse_generators(mk.subgroup_generators, mk.model));
                if (H.order() > kSubgroupSearchBound || H.order() % info->order != 0 || !contains_subgroup(Gc, H)) continue;
                if (find_isomorphic_subgroups(H, info->fingerprint).empty()) continue;
                witnessed = pass_check(name, info->name + " ⊂ G", info->name + " ⊂ G1 ⊂ G");
                witnessed->detail = "case " + two(c.number) + " G1";
                break;
            }
        }
        r.add(witnessed ? *witnessed : skip_check(name, skip_reason::out_of_scope));
    }
    if (searchable) {
        // no Table 1 group is missing: an unlisted abstract subgroup must not carry the Table 1 S_G of its type
        std::set<int> table1_ns;
        if (auto t = ds.tables.find(1); t != ds.tables.end())
            for (const auto& row : t->second) table1_ns.insert(row.n);
        std::string missing, abstract_only;
        for (int m : table1_ns) {
            const GroupInfo* info = ds.group(m);
            if (m == entry.n || !info || G.order() % info->order != 0) continue;
            if (std::count(entry.n1.begin(), entry.n1.end(), m)) continue;
            const auto [classes, typical] = census(*info);
            if (typical) missing += (missing.empty() ? "" : ",") + std::to_string(m);
            else if (classes) abstract_only += (abstract_only.empty() ? "" : ",") + std::to_string(m);
        }
        Check ch = compare_check("complete", "none missing", missing.empty() ? "none missing" : "missing " + missing);
        if (!abstract_only.empty())
            ch.detail = "abstract subgroups of type " + abstract_only + " occur with a different S_G";
        r.add(ch);
    }
    r.seconds = seconds_since(t0);
    return r;
}

std::vector<Report> verify_subgroups(const Context& ctx, SubgroupMode mode) {
    const auto& entries = ctx.data().subgroups;
    std::vector<Report> out(entries.size());
    parallel_for(entries.size(), ctx.options().jobs,
                 [&](std::size_t i) { out[i] = verify_subgroup_list(ctx, entries[i], mode); });
    sort_reports(out);
    return out;
}

// ---------------------------------------------------------------- build

Report verify_build(const Context& ctx, LabelModel id) {
    const auto t0 = Clock::now();
    Report r;
    r.kind = ReportKind::build;
    r.id = model_slot(id);
    r.title = "build " + model_name(id);
    try {
        const NiemeierModel& m = ctx.model(id);
        const IntMatrix gram = m.lattice.gram();
        r.add(compare_check("rank", "24", std::to_string(m.lattice.rank())));
        r.add(compare_check("det", "1", determinant(gram).get_str()));
        r.add(compare_check("even", "yes", is_even(gram) ? "yes" : "no"));
        const std::size_t want = static_cast<std::size_t>(m.components * m.comp_rank * (m.comp_rank + 1));
        r.add(compare_check("roots", std::to_string(want), std::to_string(count_roots(m))));
    } catch (const std::exception& e) {
        r.add(fail_check("construction", "lattice", "error", e.what()));
    }
    r.seconds = seconds_since(t0);
    return r;
}

}  // namespace nv
