#include "doctest.h"
#include "nv/int_matrix.hpp"

#include <random>

using namespace nv;

namespace {

IntMatrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c, int lo, int hi) {
    std::uniform_int_distribution<int> d(lo, hi);
    IntMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) m(i, j) = d(rng);
    return m;
}

void check_smith(const IntMatrix& m) {
    SmithForm s = smith_normal_form(m);
    CHECK(s.U * m * s.V == s.D);
    CHECK(abs(determinant(s.U)) == 1);
    CHECK(abs(determinant(s.V)) == 1);
    CHECK(s.U * s.U_inv == IntMatrix::identity(m.rows()));
    CHECK(s.V * s.V_inv == IntMatrix::identity(m.cols()));
    for (std::size_t i = 0; i < s.D.rows(); ++i)
        for (std::size_t j = 0; j < s.D.cols(); ++j)
            if (i != j) CHECK(s.D(i, j) == 0);
    const std::size_t k = std::min(m.rows(), m.cols());
    for (std::size_t i = 0; i + 1 < k; ++i) {
        CHECK(s.D(i, i) >= 0);
        if (s.D(i, i) == 0) CHECK(s.D(i + 1, i + 1) == 0);
        else CHECK(mpz_divisible_p(s.D(i + 1, i + 1).get_mpz_t(), s.D(i, i).get_mpz_t()));
    }
    CHECK(s.rank == rank(m));
}

}  // namespace

TEST_CASE("smith normal form of the identity") {
    SmithForm s = smith_normal_form(IntMatrix::identity(3));
    CHECK(s.D == IntMatrix::identity(3));
}

TEST_CASE("smith normal form of diag(2,2)") {
    SmithForm s = smith_normal_form(IntMatrix{{2, 0}, {0, 2}});
    CHECK(s.D == IntMatrix{{2, 0}, {0, 2}});
}

TEST_CASE("smith normal form of the A2 Cartan matrix") {
    IntMatrix a2{{2, -1}, {-1, 2}};
    SmithForm s = smith_normal_form(a2);
    CHECK(s.D == IntMatrix{{1, 0}, {0, 3}});
    check_smith(a2);
    CHECK(determinant(a2) == 3);
}

TEST_CASE("smith normal form properties on random matrices") {
    std::mt19937 rng(12345);
    for (int t = 0; t < 200; ++t) {
        std::size_t r = 1 + rng() % 6, c = 1 + rng() % 6;
        check_smith(random_matrix(rng, r, c, -9, 9));
    }
}

TEST_CASE("determinant against cofactor expansion") {
    std::mt19937 rng(7);
    for (int t = 0; t < 50; ++t) {
        IntMatrix m = random_matrix(rng, 3, 3, -5, 5);
        Int cof = m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
                  m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
        CHECK(determinant(m) == cof);
        CHECK(abs(determinant(m)) == [&] {
            SmithForm s = smith_normal_form(m);
            Int p = 1;
            for (std::size_t i = 0; i < 3; ++i) p *= s.D(i, i);
            return p;
        }());
    }
}

TEST_CASE("hermite normal form spans the same lattice") {
    std::mt19937 rng(99);
    for (int t = 0; t < 100; ++t) {
        IntMatrix m = random_matrix(rng, 1 + rng() % 5, 4, -6, 6);
        IntMatrix h = hermite_normal_form(m);
        CHECK(h.rows() == rank(m));
        std::vector<Int> x;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (h.rows() == 0) break;
            CHECK(solve_integer_row(h, m.row(i), x));
        }
        for (std::size_t i = 0; i < h.rows(); ++i) CHECK(solve_integer_row(hermite_normal_form(m), h.row(i), x));
        CHECK(hermite_normal_form(h) == h);
    }
}

TEST_CASE("left kernel is annihilating and saturated") {
    std::mt19937 rng(5);
    for (int t = 0; t < 100; ++t) {
        IntMatrix m = random_matrix(rng, 2 + rng() % 5, 1 + rng() % 3, -4, 4);
        IntMatrix k = left_kernel(m);
        CHECK(k.rows() == m.rows() - rank(m));
        if (k.rows() == 0) continue;
        CHECK((k * m).is_zero());
        CHECK(saturate_rows(k) == k);
    }
}

TEST_CASE("saturation of 2*e1 in Z^2") {
    IntMatrix s = saturate_rows(IntMatrix{{2, 0}});
    CHECK(s == IntMatrix{{1, 0}});
    IntMatrix t = saturate_rows(IntMatrix{{2, 4}, {0, 6}});
    CHECK(t == IntMatrix{{1, 0}, {0, 1}});
}

TEST_CASE("saturation is idempotent and contains the span") {
    std::mt19937 rng(2024);
    for (int t = 0; t < 100; ++t) {
        IntMatrix m = random_matrix(rng, 1 + rng() % 3, 4, -8, 8);
        IntMatrix s = saturate_rows(m);
        CHECK(saturate_rows(s) == s);
        CHECK(s.rows() == rank(m));
        std::vector<Int> x;
        for (std::size_t i = 0; i < m.rows(); ++i) CHECK(solve_integer_row(s, m.row(i), x));
    }
}
