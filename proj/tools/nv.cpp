#include "nv/genus_symbol.hpp"
#include "nv/pipeline.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <set>

namespace {

using namespace nv;

constexpr int kExitUsage = 2;
constexpr int kExitData = 3;

struct Flags {
    bool apply_corrections = false;
    int jobs = 1;
    std::size_t oracle_bound = 4096;
    std::string data_dir;
    std::string format = "text";
    bool verbose = false;
    bool timing = false;
};

std::filesystem::path data_dir_of(const Flags& f) {
    return f.data_dir.empty() ? default_data_dir() : std::filesystem::path(f.data_dir);
}

Context make_context(const Flags& f) {
    LoadOptions lo;
    lo.apply_corrections = f.apply_corrections;
    const auto dir = data_dir_of(f);
    VerifyOptions vo;
    vo.apply_corrections = f.apply_corrections;
    vo.jobs = f.jobs;
    vo.oracle_bound = f.oracle_bound;
    vo.timing = f.timing;
    return Context(load_dataset(dir, lo), dir, vo);
}

int emit(const std::vector<Report>& reports, const Flags& f, const std::string& command) {
    if (f.format == "json")
        std::cout << reports_json(reports, command, f.timing).dump(1) << "\n";
    else
        std::cout << reports_text(reports, f.verbose, f.timing);
    return exit_code_for(reports);
}

nlohmann::json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw dataset_error("cannot open " + path);
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw dataset_error(path + ": " + e.what());
    }
}

int cmd_build(const Flags& f, const std::string& name, bool show_gram) {
    const LabelModel id = model_from_name(name);
    Context ctx = make_context(f);
    Report r = verify_build(ctx, id);
    const NiemeierModel& m = ctx.model(id);
    if (show_gram) {
        const IntMatrix g = m.lattice.gram();
        for (std::size_t i = 0; i < g.rows(); ++i) {
            for (std::size_t j = 0; j < g.cols(); ++j) std::cout << (j ? " " : "") << g(i, j);
            std::cout << "\n";
        }
    }
    std::cout << model_name(id) << ": " << m.components << "A" << m.comp_rank << " glued by " << m.code.name << "\n";
    for (const auto& c : r.checks) std::cout << "  " << c.name << " = " << c.computed << "\n";
    return exit_code_for({r});
}

int cmd_genus(const std::string& file, bool negative) {
    const nlohmann::json j = read_json(file);
    const nlohmann::json& rows = j.is_object() ? j.at("gram") : j;
    std::vector<std::vector<Int>> g;
    for (const auto& row : rows) {
        std::vector<Int> v;
        for (const auto& x : row) v.emplace_back(x.get<long>());
        g.push_back(std::move(v));
    }
    const IntMatrix gram = IntMatrix::from_rows(g, g.empty() ? 0 : g.front().size());
    const auto form = discriminant_form_gram(gram, negative ? SignModel::negative : SignModel::positive);
    std::cout << print_symbol(genus_symbol(form)) << "\n";
    return 0;
}

int cmd_orbits(const std::string& file) {
    const nlohmann::json j = read_json(file);
    const auto print = [](const std::string& tag, const PermGroup& g, const std::vector<std::vector<std::string>>& listed) {
        const LabelModel m = g.model();
        std::cout << "  " << tag << ": order " << g.order() << "\n";
        std::set<std::vector<int>> computed;
        for (const auto& o : orbits(g)) {
            if (o.size() < 2) continue;
            computed.insert(o);
            std::cout << "    {";
            for (std::size_t i = 0; i < o.size(); ++i) std::cout << (i ? " " : "") << label_name(o[i], m);
            std::cout << "}\n";
        }
        for (const auto& o : parse_orbits(listed, m)) {
            std::vector<int> s = o;
            std::sort(s.begin(), s.end());
            const bool fixed = s.size() == 1 && g.order() >= 1 &&
                               std::all_of(g.generators().begin(), g.generators().end(),
                                           [&](const Permutation& p) { return p(s[0]) == s[0]; });
            std::cout << "    listed {";
            for (std::size_t i = 0; i < o.size(); ++i) std::cout << (i ? " " : "") << label_name(o[i], m);
            std::cout << "}: " << ((computed.count(s) || fixed) ? "orbit" : "NOT an orbit") << "\n";
        }
    };
    int k = 0;
    for (const auto& mk : j.at("markings")) {
        const LabelModel m = model_from_name(mk.at("model").get<std::string>());
        std::cout << "marking " << ++k << " (" << model_name(m) << ")\n";
        const PermGroup G(m, parse_generators(mk.at("group").at("generators").get<std::vector<std::string>>(), m));
        print("G", G, mk.at("orbits").get<std::vector<std::vector<std::string>>>());
        const PermGroup H(m, parse_generators(mk.at("subgroup").at("generators").get<std::vector<std::string>>(), m));
        print("G1", H, mk.at("suborbits").get<std::vector<std::vector<std::string>>>());
    }
    return 0;
}

int cmd_align(const Flags& f, bool write) {
    Context ctx = make_context(f);
    const AlignmentTable t = ctx.compute_alignments();
    const nlohmann::json j = alignment_table_json(t);
    if (write) {
        const auto file = data_dir_of(f) / "alignments.json";
        std::ofstream out(file);
        out << j.dump(1) << "\n";
        std::cout << "wrote " << file.string() << "\n";
    } else {
        std::cout << j.dump(1) << "\n";
    }
    for (const auto& [key, why] : t.failures) {
        const ProofCase* c = ctx.data().find_case(key.first);
        if (!c || !c->suspect) return 1;
    }
    return 0;
}

std::vector<int> parse_case_arg(const std::string& arg, const Dataset& ds) {
    std::vector<int> out;
    if (arg == "all") {
        for (const auto& c : ds.cases) out.push_back(c.number);
        return out;
    }
    const int n = std::stoi(arg);
    if (!ds.find_case(n)) throw CLI::ValidationError("case", "no case " + arg);
    out.push_back(n);
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Niemeier marking verifier"};
    app.require_subcommand(1);
    app.fallthrough();
    Flags f;
    app.add_flag("--apply-corrections", f.apply_corrections, "replace flagged transcription values by their corrections");
    app.add_option("--jobs,-j", f.jobs, "worker threads")->check(CLI::PositiveNumber);
    app.add_option("--oracle-bound", f.oracle_bound, "largest |A| for brute-force isomorphism");
    app.add_option("--data-dir", f.data_dir, "dataset directory (default: NV_DATA_DIR or the source tree)");
    app.add_option("--format", f.format, "output format")->check(CLI::IsMember({"text", "json"}));
    app.add_flag("--verbose,-v", f.verbose, "print every check");
    app.add_flag("--timing", f.timing, "include timings");

    std::string model, gram_file, case_file, case_arg;
    bool show_gram = true, negative = false, search = false, write = false;
    int table = 0;

    auto* build = app.add_subcommand("build", "construct a Niemeier lattice");
    build->add_option("model", model, "N21, N22 or N23")->required()->check(CLI::IsMember({"N21", "N22", "N23"}));
    build->add_flag("!--no-gram", show_gram, "omit the Gram matrix");

    auto* genus = app.add_subcommand("genus", "canonical genus symbol of a Gram matrix");
    genus->add_option("gram", gram_file, "JSON file with a Gram matrix")->required();
    genus->add_flag("--negative", negative, "read the matrix as the negative of the lattice form");

    auto* orb = app.add_subcommand("orbits", "orbits of the groups of a case file");
    orb->add_option("case", case_file, "case JSON file")->required();

    auto* verify = app.add_subcommand("verify", "run verifications");
    verify->require_subcommand(1);
    verify->fallthrough();
    auto* vt = verify->add_subcommand("table", "verify a table");
    vt->add_option("k", table, "table number")->required()->check(CLI::Range(1, 4));
    auto* vc = verify->add_subcommand("case", "verify proof cases");
    vc->add_option("n", case_arg, "case number or 'all'")->required();
    auto* vs = verify->add_subcommand("subgroups", "verify the subgroup list");
    vs->add_flag("--search", search, "search subgroups of small containers");

    auto* report = app.add_subcommand("report", "full verification report");
    auto* align = app.add_subcommand("align", "relabelings of the source data's Niemeier models");
    align->add_flag("--write", write, "store the result in alignments.json");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return e.get_exit_code() == 0 ? code : kExitUsage;
    }

    try {
        if (*build) return cmd_build(f, model, show_gram);
        if (*genus) return cmd_genus(gram_file, negative);
        if (*orb) return cmd_orbits(case_file);
        if (*align) return cmd_align(f, write);
        Context ctx = make_context(f);
        if (*vt) return emit(verify_table(ctx, table), f, "verify table " + std::to_string(table));
        if (*vc) return emit(verify_cases(ctx, parse_case_arg(case_arg, ctx.data())), f, "verify case " + case_arg);
        if (*vs)
            return emit(verify_subgroups(ctx, search ? SubgroupMode::search : SubgroupMode::stated), f,
                        std::string("verify subgroups") + (search ? " --search" : ""));
        if (*report) {
            std::vector<Report> all;
            for (LabelModel id : {LabelModel::N23, LabelModel::N22, LabelModel::N21}) all.push_back(verify_build(ctx, id));
            for (int t = 1; t <= 4; ++t)
                if (ctx.data().tables.count(t))
                    for (auto& r : verify_table(ctx, t)) all.push_back(std::move(r));
            std::vector<int> every;
            for (const auto& c : ctx.data().cases) every.push_back(c.number);
            for (auto& r : verify_cases(ctx, every)) all.push_back(std::move(r));
            for (auto mode : {SubgroupMode::stated, SubgroupMode::search})
                for (auto& r : verify_subgroups(ctx, mode)) all.push_back(std::move(r));
            return emit(all, f, "report");
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const dataset_error& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kExitData;
    } catch (const construction_error& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kExitData;
    } catch (const symbol_parse_error& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kExitData;
    } catch (const perm_parse_error& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kExitData;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
