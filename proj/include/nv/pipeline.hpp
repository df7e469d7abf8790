#pragma once

#include "nv/dataset.hpp"
#include "nv/finite_form.hpp"
#include "nv/niemeier.hpp"
#include "nv/report.hpp"

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>

namespace nv {

struct VerifyOptions {
    bool apply_corrections = false;
    int jobs = 1;
    std::size_t oracle_bound = 4096;
    bool timing = false;
};

/// Everything computed for one (group, orbits) degeneration, in implemented labels.
struct Degeneration {
    Lattice SG;
    Lattice S;
    FiniteQuadraticForm q_SG, q_S;
    std::string symbol_SG, symbol_S;  // canonical text
    RootSystemType full_type;
    std::vector<RootSystemType> orbit_types;
    std::vector<std::vector<RootSystemType>> pair_types;  // union of orbits i and j
    std::size_t roots_in_S = 0;                           // N-roots lying in S, both signs
    std::optional<int> milgram;                           // Gauss-sum signature of q_S
    bool definite = false;
};

/// Pure computation; throws lift_error if a generator does not preserve the lattice.
Degeneration compute_degeneration(const NiemeierModel& model, const std::vector<Permutation>& generators,
                                  const std::vector<std::vector<int>>& orbits);

/// Coinvariant lattice of the group generated by these (implemented-label) permutations.
Lattice coinvariant_of(const NiemeierModel& model, const std::vector<Permutation>& generators);

/// Compare a computed form with a table symbol: canonical text equality, cross-checked by the oracle.
Check symbol_check(const std::string& name, const std::string& expected_text, const FiniteQuadraticForm& computed,
                   std::size_t oracle_bound);

/// Global and per-marking relabelings, cached in alignments.json.
struct AlignmentTable {
    std::map<LabelModel, Alignment> global;
    /// (case, marking index) -> alignment, only where the global one does not lift every generator.
    std::map<std::pair<int, int>, Alignment> overrides;
    /// (case, marking index) with no alignment at all.
    std::map<std::pair<int, int>, std::string> failures;
};

nlohmann::json alignment_table_json(const AlignmentTable& t);
AlignmentTable alignment_table_from_json(const nlohmann::json& j);

class Context {
public:
    Context(Dataset ds, std::filesystem::path data_dir, VerifyOptions opts = {});

    const Dataset& data() const { return ds_; }
    const VerifyOptions& options() const { return opts_; }
    const std::filesystem::path& data_dir() const { return dir_; }

    /// Lazily built, shared between threads.
    const NiemeierModel& model(LabelModel id) const;
    /// Loaded from alignments.json when present, computed otherwise.
    const AlignmentTable& alignments() const;
    /// Computes the table from scratch, ignoring any cached file.
    AlignmentTable compute_alignments() const;
    /// Alignment for a marking, nullopt when no relabeling lifts its generators.
    std::optional<Alignment> marking_alignment(int case_number, int marking_index) const;

private:
    Dataset ds_;
    std::filesystem::path dir_;
    VerifyOptions opts_;
    struct Lazy;
    std::shared_ptr<Lazy> lazy_;
};

/// Degeneration checks against an expected table row; t = number of orbits.
std::vector<Check> degeneration_checks(const Degeneration& d, const TableRow& expected, const TableRow* table1,
                                       std::size_t orbit_count, std::size_t oracle_bound);

/// Single degeneration with source labels; DATA-SUSPECT report on lift failure.
Report verify_degeneration(const Context& ctx, LabelModel model, const Alignment& sigma,
                           const std::vector<Permutation>& generators, const std::vector<std::vector<int>>& orbits,
                           const TableRow& expected);

Report verify_list1_case(const Context& ctx, const ProofCase& c);
std::vector<Report> verify_cases(const Context& ctx, const std::vector<int>& numbers);

/// Rank and symbol of S_G for catalog number n, from every case group of that type.
Report verify_group_invariants(const Context& ctx, int n);
/// Coinvariant lattices of cyclic subgroups of order k taken from case groups (class representatives).
Report verify_cyclic_elements(const Context& ctx, int order, int catalog_n);

std::vector<Report> verify_table(const Context& ctx, int table);

enum class SubgroupMode { stated, search };
Report verify_subgroup_list(const Context& ctx, const SubgroupListEntry& entry, SubgroupMode mode);
std::vector<Report> verify_subgroups(const Context& ctx, SubgroupMode mode);

/// Build report for one model: determinant, evenness and root count.
Report verify_build(const Context& ctx, LabelModel id);

/// Label lists of a marking, parsed in its model.
std::vector<std::vector<int>> parse_orbits(const std::vector<std::vector<std::string>>& orbits, LabelModel m);
std::vector<Permutation> parse_generators(const std::vector<std::string>& gens, LabelModel m);

}  // namespace nv
