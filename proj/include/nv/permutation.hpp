#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace nv {

/// Labeling of the 24 roots a permutation acts on.
enum class LabelModel {
    N23,     // a1..a24, one A1 per label
    N21,     // aI,J with I = 1..3 the simple root of the J-th A3, J = 1..8
    N22,     // aI,J with I = 1..2 the simple root of the J-th A2, J = 1..12
    points,  // abstract points 0..23, used for textbook constructions
};

constexpr int kDegree = 24;

std::string model_name(LabelModel m);
LabelModel model_from_name(const std::string& s);

struct perm_parse_error : std::runtime_error {
    std::size_t position;
    perm_parse_error(const std::string& msg, std::size_t pos)
        : std::runtime_error(msg + " at position " + std::to_string(pos)), position(pos) {}
};

/// Index 0..23 of a label such as "a7" or "a2,5"; throws perm_parse_error on failure.
int label_index(const std::string& label, LabelModel m);
std::string label_name(int index, LabelModel m);

/// Bijection of {0..23}; composition p * q applies p first.
class Permutation {
public:
    Permutation();
    explicit Permutation(const std::array<std::uint8_t, kDegree>& images);
    static Permutation from_images(const std::vector<int>& images);
    static Permutation from_cycles(const std::vector<std::vector<int>>& cycles);

    int operator()(int x) const { return img_[x]; }
    Permutation operator*(const Permutation& q) const;
    Permutation inverse() const;
    int order() const;
    bool is_identity() const;
    int moved_points() const;
    std::vector<std::vector<int>> cycles() const;
    std::string to_string(LabelModel m) const;
    const std::array<std::uint8_t, kDegree>& images() const { return img_; }

    auto operator<=>(const Permutation&) const = default;

private:
    std::array<std::uint8_t, kDegree> img_;
};

/// Disjoint cycle notation; "()" and "" give the identity.
Permutation parse_cycles(const std::string& text, LabelModel m);

}  // namespace nv
