#pragma once

#include "nv/group.hpp"
#include "nv/lattice.hpp"

#include <filesystem>
#include <optional>

namespace nv {

struct construction_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct lift_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Linear code over Z/m given by generator rows.
struct GlueCode {
    std::string name;
    int m = 2;
    int length = 0;
    std::vector<std::vector<int>> rows;

    std::vector<std::vector<int>> codewords() const;
    int min_weight() const;
    /// Orthogonal under the standard dot product mod m and of size m^(length/2).
    bool is_self_dual() const;
};

GlueCode load_code(const std::filesystem::path& file);

struct NiemeierModel {
    LabelModel id = LabelModel::N23;
    int comp_rank = 1;   // A1, A2 or A3
    int components = 24;
    GlueCode code;
    Lattice lattice;     // ambient coordinates: simple roots, scaled by comp_rank + 1

    int denom() const { return comp_rank + 1; }
    int component_of(int label) const { return label / comp_rank; }
    /// Scaled ambient vector of the simple root with this label.
    std::vector<Int> root_vector(int label) const;
    IntMatrix root_vectors(const std::vector<int>& labels) const;
};

std::string code_file_for(LabelModel id);

/// Root lattice plus glue; asserts evenness, unimodularity and rank 24.
NiemeierModel build_niemeier(LabelModel id, const std::filesystem::path& data_dir);

/// Root count of the built lattice, by enumerating norm-2 vectors.
std::size_t count_roots(const NiemeierModel& model);

/// Ambient permutation matrix of p; throws lift_error if p breaks the simple-root structure.
IntMatrix permutation_matrix(const NiemeierModel& model, const Permutation& p);

/// The ambient map of p when it preserves the glued lattice, nullopt otherwise.
std::optional<IntMatrix> lift_permutation(const NiemeierModel& model, const Permutation& p);

/// Action of a label permutation on code coordinates: c'_{perm[j]} = sign[j] * c_j.
struct MonomialMap {
    std::vector<int> perm;
    std::vector<int> sign;
};
MonomialMap component_action(const NiemeierModel& model, const Permutation& p);

/// Relabeling of source components onto implemented ones, with diagram flips.
struct Alignment {
    std::vector<int> component;  // source component i -> implemented component
    std::vector<int> sign;       // -1 flips the chain of simple roots

    static Alignment identity(const NiemeierModel& model);
    /// Label bijection, source -> implemented.
    Permutation label_map(const NiemeierModel& model) const;
    /// The source permutation rewritten in implemented labels.
    Permutation apply(const NiemeierModel& model, const Permutation& source) const;
    int apply_label(const NiemeierModel& model, int source_label) const;
    bool operator==(const Alignment&) const = default;
};

struct AlignResult {
    std::optional<Alignment> sigma;
    std::size_t nodes = 0;
    bool exhausted = false;  // true when absence is certified by a complete search
    std::string certificate;
};

/// Backtracking search for a relabeling under which every generator preserves the code.
AlignResult align_code(const NiemeierModel& model, const std::vector<Permutation>& generators,
                       std::size_t node_limit = 20'000'000);

}  // namespace nv
