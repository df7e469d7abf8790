#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace nv {

using Int = mpz_class;
using Rat = mpq_class;

struct dimension_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Dense row-major matrix over the integers.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
    IntMatrix(std::initializer_list<std::initializer_list<long>> init);

    static IntMatrix identity(std::size_t n);
    static IntMatrix from_rows(const std::vector<std::vector<Int>>& rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    Int& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Int& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    std::vector<Int> row(std::size_t i) const;
    void set_row(std::size_t i, const std::vector<Int>& v);
    void swap_rows(std::size_t i, std::size_t j);
    void swap_cols(std::size_t i, std::size_t j);
    /// row_i += c * row_j
    void add_row_multiple(std::size_t i, std::size_t j, const Int& c);
    /// col_i += c * col_j
    void add_col_multiple(std::size_t i, std::size_t j, const Int& c);
    void negate_row(std::size_t i);
    void negate_col(std::size_t j);

    IntMatrix transpose() const;
    IntMatrix select_rows(std::size_t begin, std::size_t end) const;
    IntMatrix append_rows(const IntMatrix& other) const;
    IntMatrix append_cols(const IntMatrix& other) const;

    bool is_symmetric() const;
    bool is_zero() const;

    bool operator==(const IntMatrix& o) const = default;

    std::string to_string() const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Int> a_;
};

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
IntMatrix scale(const IntMatrix& a, const Int& c);
/// Exact division of every entry; throws if some entry is not divisible.
IntMatrix divide_exact(const IntMatrix& a, const Int& c);

std::vector<Int> row_times(const std::vector<Int>& v, const IntMatrix& m);
Int dot(const std::vector<Int>& a, const std::vector<Int>& b);

/// Determinant by fraction-free elimination.
Int determinant(const IntMatrix& m);
std::size_t rank(const IntMatrix& m);

struct SmithForm {
    IntMatrix D;  // diagonal, d1 | d2 | ...
    IntMatrix U;  // unimodular, rows x rows
    IntMatrix V;  // unimodular, cols x cols
    IntMatrix U_inv;
    IntMatrix V_inv;
    std::size_t rank = 0;
};

/// U * M * V = D.  Pivots: smallest absolute value, then lowest row index.
SmithForm smith_normal_form(const IntMatrix& m);

/// Row-style Hermite normal form; zero rows are dropped.
IntMatrix hermite_normal_form(const IntMatrix& m);

/// Basis (as rows) of the saturated lattice {x in Z^rows : x * M = 0}.
IntMatrix left_kernel(const IntMatrix& m);

/// Rows that span the primitive closure in Z^cols of the row span of M, in HNF.
IntMatrix saturate_rows(const IntMatrix& m);

/// Solve x * B = v for integer x, B with independent rows; returns false if no integral solution.
bool solve_integer_row(const IntMatrix& b, const std::vector<Int>& v, std::vector<Int>& x);

}  // namespace nv
