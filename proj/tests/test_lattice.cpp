#include "doctest.h"
#include "nv/lattice.hpp"

#include <random>
#include <set>

using namespace nv;

namespace {

IntMatrix random_even_gram(std::mt19937& rng, std::size_t n) {
    // B * B^T for a random integer B, doubled to make it even
    for (;;) {
        std::uniform_int_distribution<int> d(-2, 2);
        IntMatrix b(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) b(i, j) = d(rng);
        IntMatrix g = b * b.transpose();
        if (determinant(g) == 0) continue;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) g(i, j) *= (i == j ? 2 : 1);
        if (!is_positive_definite(g)) continue;
        return g;
    }
}

IntMatrix cartan_a(std::size_t n) {
    IntMatrix g(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        g(i, i) = 2;
        if (i + 1 < n) g(i, i + 1) = g(i + 1, i) = -1;
    }
    return g;
}

}  // namespace

TEST_CASE("short vectors of Z with Gram [2]") {
    auto v = short_vectors_gram(IntMatrix{{2}}, 2, {.both_signs = true});
    REQUIRE(v.size() == 2);
    CHECK(v[0][0] == -1);
    CHECK(v[1][0] == 1);
}

TEST_CASE("short vectors agree with the box oracle on random small lattices") {
    std::mt19937 rng(31337);
    for (int t = 0; t < 120; ++t) {
        std::size_t n = 1 + rng() % 4;
        IntMatrix g = random_even_gram(rng, n);
        Int bound = 2 * (1 + static_cast<int>(rng() % 4));
        auto a = short_vectors_gram(g, bound, {.both_signs = true});
        auto b = short_vectors_box(g, bound, true);
        CHECK(a == b);
        std::set<std::vector<Int>> s(a.begin(), a.end());
        for (const auto& v : a) {
            std::vector<Int> w = v;
            for (auto& x : w) x = -x;
            CHECK(s.count(w) == 1);
        }
        auto half = short_vectors_gram(g, bound);
        CHECK(half.size() * 2 == a.size());
    }
}

TEST_CASE("root counts of A_n and D_4 by enumeration") {
    for (std::size_t n = 1; n <= 6; ++n) CHECK(short_vectors_gram(cartan_a(n), 2, {.both_signs = true}).size() == n * (n + 1));
    IntMatrix d4{{2, -1, 0, 0}, {-1, 2, -1, -1}, {0, -1, 2, 0}, {0, -1, 0, 2}};
    CHECK(short_vectors_gram(d4, 2, {.both_signs = true}).size() == 24);
}

TEST_CASE("saturate inside Z^2") {
    Lattice host = lattice_from_gram(IntMatrix{{2, 0}, {0, 2}});
    Lattice s = saturate(IntMatrix{{2, 0}}, host);
    CHECK(s.basis == IntMatrix{{1, 0}});
    Lattice p = saturate(IntMatrix{{1, 1}}, host);
    CHECK(p.basis == IntMatrix{{1, 1}});
    Lattice again = saturate(coordinates_in(host, s.basis), host);
    CHECK(again.basis == s.basis);
}

TEST_CASE("orthogonal complement edge cases") {
    Lattice host = lattice_from_gram(cartan_a(3));
    Lattice zero = host.with_basis(IntMatrix(0, 3));
    CHECK(orthogonal_complement(zero, host).rank() == 3);
    CHECK(orthogonal_complement(host, host).rank() == 0);
    Lattice first = host.with_basis(IntMatrix{{1, 0, 0}});
    Lattice c = orthogonal_complement(first, host);
    CHECK(c.rank() == 2);
    CHECK((host.basis.select_rows(0, 1) * host.ambient_gram * c.basis.transpose()).is_zero());
}

TEST_CASE("fixed and coinvariant lattices of a swap on A1+A1") {
    Lattice L = lattice_from_gram(IntMatrix{{2, 0}, {0, 2}});
    IntMatrix swap{{0, 1}, {1, 0}};
    Lattice fixed = fixed_lattice(L, {swap});
    CHECK(fixed.rank() == 1);
    CHECK(fixed.basis == IntMatrix{{1, 1}});
    CHECK(fixed_lattice(L, {}).rank() == 2);
    // complement of the fixed vector is spanned by (1,-1), of norm 4: no roots
    Lattice co = coinvariant_lattice(L, {swap});
    CHECK(co.rank() == 1);
    CHECK(co.gram() == IntMatrix{{4}});
    CHECK(fixed.rank() + co.rank() == L.rank());
}

TEST_CASE("coinvariant lattice rejects roots") {
    // 3-cycle on A1+A1+A1: complement has Gram [[4,-2],[-2,4]], root-free
    Lattice L = lattice_from_gram(IntMatrix{{2, 0, 0}, {0, 2, 0}, {0, 0, 2}});
    IntMatrix cyc{{0, 1, 0}, {0, 0, 1}, {1, 0, 0}};
    Lattice co = coinvariant_lattice(L, {cyc});
    CHECK(co.rank() == 2);
    // the sign change x -> -x on A1 has complement A1, which contains a root
    IntMatrix neg{{-1}};
    CHECK_THROWS_AS(coinvariant_lattice(lattice_from_gram(IntMatrix{{2}}), {neg}), classification_error);
}

TEST_CASE("isometry violations are reported") {
    Lattice L = lattice_from_gram(IntMatrix{{2, 0}, {0, 4}});
    IntMatrix swap{{0, 1}, {1, 0}};
    CHECK_THROWS_AS(fixed_lattice(L, {swap}), isometry_error);
}

TEST_CASE("dynkin classification") {
    CHECK(dynkin_classify_gram(IntMatrix{{2}}).to_string() == "A1");
    IntMatrix four(4, 4);
    for (int i = 0; i < 4; ++i) four(i, i) = 2;
    CHECK(dynkin_classify_gram(four).to_string() == "4A1");
    CHECK(dynkin_classify_gram(cartan_a(3)).to_string() == "A3");
    IntMatrix d4{{2, -1, 0, 0}, {-1, 2, -1, -1}, {0, -1, 2, 0}, {0, -1, 0, 2}};
    CHECK(dynkin_classify_gram(d4).to_string() == "D4");
    IntMatrix flipped{{2, 1, 0}, {1, 2, -1}, {0, -1, 2}};
    CHECK(dynkin_classify_gram(flipped).to_string() == "A3");
    IntMatrix cycle{{2, -1, -1}, {-1, 2, -1}, {-1, -1, 2}};
    CHECK_THROWS_AS(dynkin_classify_gram(cycle), classification_error);
    IntMatrix bad{{2, -2}, {-2, 2}};
    CHECK_THROWS_AS(dynkin_classify_gram(bad), classification_error);
    // E6: arms 1,2,2
    IntMatrix e6(6, 6);
    for (int i = 0; i < 6; ++i) e6(i, i) = 2;
    auto edge = [&](int a, int b) { e6(a, b) = e6(b, a) = -1; };
    edge(0, 1), edge(1, 2), edge(2, 3), edge(3, 4), edge(2, 5);
    CHECK_THROWS_AS(dynkin_classify_gram(e6), classification_error);
}

TEST_CASE("root system type parsing and counts") {
    RootSystemType t = RootSystemType::parse("A1⊔2A3⊔8A1");
    CHECK(t.to_string() == "9A1⊔2A3");
    CHECK(t.total_rank() == 15);
    CHECK(t.root_count() == 9 * 2 + 2 * 12);
    CHECK(RootSystemType::parse("4D4").root_count() == 96);
    CHECK(RootSystemType::parse("4A3⊔4A1") == RootSystemType::parse("4A1⊔4A3"));
    CHECK_THROWS(RootSystemType::parse("4E6"));
}

TEST_CASE("determinant equals discriminant group order via smith form") {
    std::mt19937 rng(77);
    for (int t = 0; t < 50; ++t) {
        IntMatrix g = random_even_gram(rng, 1 + rng() % 5);
        SmithForm s = smith_normal_form(g);
        Int p = 1;
        for (std::size_t i = 0; i < g.rows(); ++i) p *= s.D(i, i);
        CHECK(p == abs(determinant(g)));
    }
}
