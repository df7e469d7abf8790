#pragma once

#include "nv/lattice.hpp"

#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace nv {

/// Finite abelian group sum Z/d_i (prime-power d_i) with a Q/2Z-valued quadratic form.
struct FiniteQuadraticForm {
    std::vector<Int> orders;
    std::vector<std::vector<Rat>> b;  // b(e_i, e_j) mod 1, in [0, 1)
    std::vector<Rat> q;               // q(e_i) mod 2, in [0, 2)

    std::size_t generators() const { return orders.size(); }
    Int order() const;
    /// Least common multiple of the cyclic orders.
    Int exponent() const;
    Rat bilinear(const std::vector<Int>& x, const std::vector<Int>& y) const;
    Rat quadratic(const std::vector<Int>& x) const;
    /// Throws std::logic_error if an invariant fails.
    void validate() const;
    std::string to_string() const;
};

Rat mod_rat(const Rat& x, long m);

FiniteQuadraticForm trivial_form();
/// Discriminant form of an even nondegenerate Gram matrix; negated for the negative model.
FiniteQuadraticForm discriminant_form_gram(const IntMatrix& gram, SignModel sign = SignModel::positive);
FiniteQuadraticForm discriminant_form(const Lattice& L);
FiniteQuadraticForm direct_sum(const FiniteQuadraticForm& f, const FiniteQuadraticForm& g);
FiniteQuadraticForm negate(const FiniteQuadraticForm& f);
/// The p-primary part, generators kept in their original order.
FiniteQuadraticForm p_part(const FiniteQuadraticForm& f, const Int& p);
std::vector<Int> primes_of(const FiniteQuadraticForm& f);

/// Normalized Gauss sum |A|^{-1/2} sum exp(pi i q(x)).
std::complex<double> gauss_sum(const FiniteQuadraticForm& f);
/// Signature mod 8 read off the Gauss sum, or nullopt if it is not an 8th root of unity.
std::optional<int> gauss_signature(const FiniteQuadraticForm& f);

struct oracle_unavailable : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Brute-force search for a q-preserving group isomorphism.
bool forms_isomorphic(const FiniteQuadraticForm& f, const FiniteQuadraticForm& g, std::size_t bound = 4096);

}  // namespace nv
