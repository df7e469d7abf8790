#pragma once

#include "nv/finite_form.hpp"

#include <string>
#include <vector>

namespace nv {

struct SymbolBlock {
    long prime = 2;
    int exponent = 1;  // scale = prime^exponent
    int rank = 0;
    int sign = 1;      // +1 or -1
    bool odd = false;  // type I (p = 2 only)
    int oddity = 0;    // mod 8, meaningful for odd blocks

    long scale() const;
    bool operator==(const SymbolBlock&) const = default;
};

struct GenusSymbol {
    std::vector<SymbolBlock> blocks;  // sorted by (prime, exponent)

    bool empty() const { return blocks.empty(); }
    Int order() const;
    bool operator==(const GenusSymbol&) const = default;
};

struct symbol_parse_error : std::runtime_error {
    std::size_t position;
    symbol_parse_error(const std::string& msg, std::size_t pos)
        : std::runtime_error(msg + " at position " + std::to_string(pos)), position(pos) {}
};

GenusSymbol parse_symbol(const std::string& text);
std::string print_symbol(const GenusSymbol& s);

/// Deterministic representative of the sign-walking / oddity-fusion class.
GenusSymbol canonicalize(const GenusSymbol& s);
/// Whether the symbol is realized by some finite quadratic form.
bool is_realizable(const GenusSymbol& s);

/// Symbol of a finite quadratic form, canonicalized.
GenusSymbol genus_symbol(const FiniteQuadraticForm& f);
/// Symbol straight from the Jordan splitting, before canonicalization.
GenusSymbol jordan_symbol(const FiniteQuadraticForm& f);

/// A finite quadratic form with the given symbol.
FiniteQuadraticForm realize(const GenusSymbol& s);

/// Canonical text of a table string.
std::string canonical_text(const std::string& text);

}  // namespace nv
