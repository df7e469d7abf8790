#include "nv/group.hpp"

#include <functional>

namespace nv {

namespace {

Permutation cyc(std::vector<std::vector<int>> cycles) { return Permutation::from_cycles(cycles); }

Permutation shifted(const std::vector<int>& images, int offset) {
    std::vector<int> full(offset + images.size());
    for (int i = 0; i < offset; ++i) full[i] = i;
    for (std::size_t i = 0; i < images.size(); ++i) full[offset + i] = offset + images[i];
    return Permutation::from_images(full);
}

/// x -> a x + b on Z/m, placed at the given offset.
Permutation affine1(int m, int a, int b, int offset = 0) {
    std::vector<int> img(m);
    for (int x = 0; x < m; ++x) img[x] = (a * x + b) % m;
    return shifted(img, offset);
}

std::vector<Permutation> cyclic(int n, int offset = 0) { return {affine1(n, 1, 1, offset)}; }

std::vector<Permutation> dihedral(int n, int offset = 0) {
    std::vector<int> refl(n);
    for (int x = 0; x < n; ++x) refl[x] = (n - x) % n;
    return {affine1(n, 1, 1, offset), shifted(refl, offset)};
}

std::vector<Permutation> symmetric(int n, int offset = 0) {
    std::vector<int> swap(n);
    for (int x = 0; x < n; ++x) swap[x] = x;
    std::swap(swap[0], swap[1]);
    return {affine1(n, 1, 1, offset), shifted(swap, offset)};
}

std::vector<Permutation> alternating(int n, int offset = 0) {
    std::vector<Permutation> g;
    for (int k = 2; k < n; ++k) g.push_back(cyc({{offset, offset + 1, offset + k}}));
    return g;
}

std::vector<Permutation> elementary2(int rank) {
    std::vector<Permutation> g;
    for (int i = 0; i < rank; ++i) g.push_back(cyc({{2 * i, 2 * i + 1}}));
    return g;
}

/// Affine maps v -> M v + t on (Z/p)^2.
Permutation affine2(int p, std::array<int, 4> M, std::array<int, 2> t) {
    std::vector<int> img(p * p);
    for (int a = 0; a < p; ++a)
        for (int b = 0; b < p; ++b) {
            int x = (M[0] * a + M[1] * b + t[0]) % p, y = (M[2] * a + M[3] * b + t[1]) % p;
            img[a * p + b] = x * p + y;
        }
    return Permutation::from_images(img);
}

std::vector<Permutation> join(std::vector<Permutation> a, const std::vector<Permutation>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

PermGroup make(std::vector<Permutation> gens) { return PermGroup(LabelModel::points, std::move(gens)); }

/// Signed permutations of 4 coordinates, acting on the 8 points +-e_i.
std::vector<Permutation> pauli_group() {
    auto idx = [](int i, int s) { return 2 * i + (s > 0 ? 0 : 1); };
    auto mk = [&](const std::function<std::pair<int, int>(int, int)>& f) {
        std::vector<int> img(8);
        for (int i = 0; i < 4; ++i)
            for (int s : {1, -1}) {
                auto [j, t] = f(i, s);
                img[idx(i, s)] = idx(j, t);
            }
        return Permutation::from_images(img);
    };
    return {mk([](int i, int s) { return std::pair{i ^ 1, s}; }), mk([](int i, int s) { return std::pair{i ^ 2, s}; }),
            mk([](int i, int s) { return std::pair{i, (i & 1) ? -s : s}; }),
            mk([](int i, int s) { return std::pair{i, (i & 2) ? -s : s}; })};
}

/// Translations of F4^2 and the scalar of order 3, on 16 points.
std::vector<Permutation> f4_group() {
    const int mulw[4] = {0, 2, 3, 1};
    auto mk = [](const std::function<std::pair<int, int>(int, int)>& f) {
        std::vector<int> img(16);
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) {
                auto [x, y] = f(a, b);
                img[a * 4 + b] = x * 4 + y;
            }
        return Permutation::from_images(img);
    };
    std::vector<Permutation> g;
    for (auto [s, t] : {std::pair{1, 0}, {2, 0}, {0, 1}, {0, 2}})
        g.push_back(mk([s, t](int a, int b) { return std::pair{a ^ s, b ^ t}; }));
    g.push_back(mk([&](int a, int b) { return std::pair{mulw[a], mulw[b]}; }));
    return g;
}

/// Even permutations in S4 x S3 on 7 points.
std::vector<Permutation> even_part_s4_s3() {
    PermGroup s(LabelModel::points, join(symmetric(4), symmetric(3, 4)));
    std::vector<Permutation> even;
    for (const auto& x : s.elements()) {
        int transpositions = 0;
        for (const auto& c : x.cycles()) transpositions += static_cast<int>(c.size()) - 1;
        if (transpositions % 2 == 0) even.push_back(x);
    }
    return even;
}

}  // namespace

std::map<int, PermGroup> textbook_groups() {
    std::map<int, PermGroup> g;
    g[1] = make(cyclic(2));
    g[2] = make(cyclic(3));
    g[3] = make(elementary2(2));
    g[4] = make(cyclic(4));
    g[6] = make(dihedral(3));
    g[9] = make(elementary2(3));
    g[10] = make(dihedral(4));
    g[12] = make({cyc({{0, 1, 2, 3}, {4, 5, 6, 7}}), cyc({{0, 4, 2, 6}, {1, 7, 3, 5}})});
    g[16] = make(dihedral(5));
    g[17] = make(alternating(4));
    g[18] = make(dihedral(6));
    g[21] = make(elementary2(4));
    g[22] = make(join(cyclic(2), dihedral(4, 2)));
    g[26] = make({affine1(8, 1, 1), affine1(8, 3, 0)});
    g[30] = make({affine2(3, {1, 0, 0, 1}, {1, 0}), affine2(3, {1, 0, 0, 1}, {0, 1}), affine2(3, {2, 0, 0, 2}, {0, 0})});
    g[32] = make({affine1(5, 1, 1), affine1(5, 2, 0)});
    g[33] = make({affine1(7, 1, 1), affine1(7, 2, 0)});
    g[34] = make(symmetric(4));
    g[39] = make({cyc({{0, 1}, {2, 3}}), cyc({{0, 2}, {1, 3}}), cyc({{4, 5}, {6, 7}}), cyc({{4, 6}, {5, 7}}),
                  cyc({{0, 4}, {1, 5}, {2, 6}, {3, 7}})});
    g[40] = make(pauli_group());
    g[46] = make({affine2(3, {1, 0, 0, 1}, {1, 0}), affine2(3, {1, 0, 0, 1}, {0, 1}), affine2(3, {0, 2, 1, 0}, {0, 0})});
    g[48] = make(join(symmetric(3), symmetric(3, 3)));
    g[49] = make(f4_group());
    g[51] = make(join(cyclic(2), symmetric(4, 2)));
    g[55] = make(alternating(5));
    g[61] = make(even_part_s4_s3());
    return g;
}

}  // namespace nv
