#pragma once

#include "nv/lattice.hpp"

#include <optional>
#include <string>
#include <vector>

namespace nv {

struct deg_parse_error : std::runtime_error {
    std::size_t position;
    deg_parse_error(const std::string& msg, std::size_t pos)
        : std::runtime_error(msg + " at position " + std::to_string(pos)), position(pos) {}
};

/// A sub-diagram type with its I/II decoration kept verbatim (empty if none).
struct DegCell {
    RootSystemType type;
    std::string tag;
};

struct DegPattern {
    std::vector<DegCell> orbits;
    RootSystemType full_type;
    /// Upper-triangular matrix of sub-diagrams, row i holding cells (i, i..k-1).
    std::optional<std::vector<std::vector<DegCell>>> matrix;
    std::string text;

    std::size_t orbit_count() const { return orbits.size(); }
    /// Union type of orbits i and j from the matrix; nullopt for list patterns.
    std::optional<DegCell> cell(std::size_t i, std::size_t j) const;
};

DegPattern parse_deg(const std::string& text);

}  // namespace nv
