#pragma once

#include "nv/int_matrix.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace nv {

enum class SignModel { positive, negative };

struct lattice_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct coordinate_error : lattice_error {
    using lattice_error::lattice_error;
};
struct isometry_error : lattice_error {
    using lattice_error::lattice_error;
};
struct classification_error : lattice_error {
    using lattice_error::lattice_error;
};
struct unsupported_error : lattice_error {
    using lattice_error::lattice_error;
};

/// Sublattice of a scaled ambient space: true coordinates are basis / denom.
struct Lattice {
    std::size_t ambient_dim = 0;
    IntMatrix basis;         // rows
    Int denom = 1;
    IntMatrix ambient_gram;  // ambient_dim x ambient_dim
    SignModel sign = SignModel::positive;

    std::size_t rank() const { return basis.rows(); }
    /// basis * ambient_gram * basis^T / denom^2, asserted integral.
    IntMatrix gram() const;
    /// Same ambient data, different basis.
    Lattice with_basis(IntMatrix b) const;
    /// Inner product of two scaled ambient vectors, as a rational.
    Rat inner(const std::vector<Int>& x, const std::vector<Int>& y) const;
};

/// Lattice Z^n with the given Gram matrix (ambient = coordinates, denom 1).
Lattice lattice_from_gram(const IntMatrix& gram, SignModel sign = SignModel::positive);

bool is_even(const IntMatrix& gram);

/// Coordinates of the rows of vecs (scaled ambient) with respect to the basis of host.
IntMatrix coordinates_in(const Lattice& host, const IntMatrix& vecs);

/// Primitive closure in host of the span of sub_basis (rows given in host coordinates).
Lattice saturate(const IntMatrix& sub_basis, const Lattice& host);

Lattice orthogonal_complement(const Lattice& sub, const Lattice& host);

/// Linear maps acting on ambient row vectors (v -> v * P).
using AmbientAction = std::vector<IntMatrix>;

/// Matrix X with basis * P = X * basis; throws isometry_error if P does not preserve L.
IntMatrix induced_action(const Lattice& L, const IntMatrix& P, const std::string& name = "generator");

Lattice fixed_lattice(const Lattice& N, const AmbientAction& G);

/// Complement of the fixed lattice, with definiteness, root-freeness and
/// discriminant-triviality checks.
Lattice coinvariant_lattice(const Lattice& N, const AmbientAction& G);

struct ShortVectorOptions {
    bool both_signs = false;  // otherwise one vector per +- pair (first nonzero coordinate positive)
};

/// All v in L (as coordinate rows w.r.t. L's basis) with 0 < norm(v) <= max_norm.
std::vector<std::vector<Int>> short_vectors(const Lattice& L, const Int& max_norm, ShortVectorOptions opt = {});
/// Same, from a positive-definite Gram matrix.
std::vector<std::vector<Int>> short_vectors_gram(const IntMatrix& gram, const Int& max_norm, ShortVectorOptions opt = {});
/// Exhaustive box search; test oracle for small rank.
std::vector<std::vector<Int>> short_vectors_box(const IntMatrix& gram, const Int& max_norm, bool both_signs);

bool is_positive_definite(const IntMatrix& gram);

struct RootSystemType {
    std::map<std::pair<char, int>, int> parts;  // (family, rank) -> multiplicity

    int total_rank() const;
    int root_count() const;
    bool empty() const { return parts.empty(); }
    std::string to_string() const;  // e.g. "A1⊔2A3"
    bool operator==(const RootSystemType&) const = default;
    static RootSystemType parse(const std::string& text);
};

/// Classify a set of norm-2 vectors (scaled ambient rows of ctx) forming a simple root basis.
RootSystemType dynkin_classify(const IntMatrix& roots, const Lattice& ctx);
/// Same, from a Gram matrix of the roots.
RootSystemType dynkin_classify_gram(const IntMatrix& gram);

}  // namespace nv
