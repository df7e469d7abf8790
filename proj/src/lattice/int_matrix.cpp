#include "nv/int_matrix.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace nv {

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    a_.reserve(rows_ * cols_);
    for (const auto& r : init) {
        if (r.size() != cols_) throw dimension_error("ragged initializer");
        for (long v : r) a_.emplace_back(v);
    }
}

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<Int>>& rows, std::size_t cols) {
    IntMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) m.set_row(i, rows[i]);
    return m;
}

std::vector<Int> IntMatrix::row(std::size_t i) const {
    return std::vector<Int>(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_);
}

void IntMatrix::set_row(std::size_t i, const std::vector<Int>& v) {
    if (v.size() != cols_) throw dimension_error("row length mismatch");
    std::copy(v.begin(), v.end(), a_.begin() + i * cols_);
}

void IntMatrix::swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(i, c), (*this)(j, c));
}

void IntMatrix::swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, i), (*this)(r, j));
}

void IntMatrix::add_row_multiple(std::size_t i, std::size_t j, const Int& c) {
    if (c == 0) return;
    for (std::size_t k = 0; k < cols_; ++k) (*this)(i, k) += c * (*this)(j, k);
}

void IntMatrix::add_col_multiple(std::size_t i, std::size_t j, const Int& c) {
    if (c == 0) return;
    for (std::size_t k = 0; k < rows_; ++k) (*this)(k, i) += c * (*this)(k, j);
}

void IntMatrix::negate_row(std::size_t i) {
    for (std::size_t k = 0; k < cols_; ++k) (*this)(i, k) = -(*this)(i, k);
}

void IntMatrix::negate_col(std::size_t j) {
    for (std::size_t k = 0; k < rows_; ++k) (*this)(k, j) = -(*this)(k, j);
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

IntMatrix IntMatrix::select_rows(std::size_t begin, std::size_t end) const {
    IntMatrix m(end - begin, cols_);
    for (std::size_t i = begin; i < end; ++i)
        for (std::size_t j = 0; j < cols_; ++j) m(i - begin, j) = (*this)(i, j);
    return m;
}

IntMatrix IntMatrix::append_rows(const IntMatrix& other) const {
    if (rows_ == 0) return other;
    if (other.rows_ == 0) return *this;
    if (other.cols_ != cols_) throw dimension_error("append_rows: column mismatch");
    IntMatrix m(rows_ + other.rows_, cols_);
    std::copy(a_.begin(), a_.end(), m.a_.begin());
    std::copy(other.a_.begin(), other.a_.end(), m.a_.begin() + a_.size());
    return m;
}

IntMatrix IntMatrix::append_cols(const IntMatrix& other) const {
    if (cols_ == 0) return other;
    if (other.cols_ == 0) return *this;
    if (other.rows_ != rows_) throw dimension_error("append_cols: row mismatch");
    IntMatrix m(rows_, cols_ + other.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j);
        for (std::size_t j = 0; j < other.cols_; ++j) m(i, cols_ + j) = other(i, j);
    }
    return m;
}

bool IntMatrix::is_symmetric() const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i + 1; j < cols_; ++j)
            if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
}

bool IntMatrix::is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](const Int& v) { return v == 0; });
}

std::string IntMatrix::to_string() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < rows_; ++i) {
        os << (i ? ",[" : "[");
        for (std::size_t j = 0; j < cols_; ++j) os << (j ? "," : "") << (*this)(i, j).get_str();
        os << ']';
    }
    os << ']';
    return os.str();
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols() != b.rows()) throw dimension_error("matrix product: inner dimension mismatch");
    IntMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Int& x = a(i, k);
            if (x == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += x * b(k, j);
        }
    return c;
}

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw dimension_error("matrix sum: shape mismatch");
    IntMatrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) + b(i, j);
    return c;
}

IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw dimension_error("matrix difference: shape mismatch");
    IntMatrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) - b(i, j);
    return c;
}

IntMatrix scale(const IntMatrix& a, const Int& c) {
    IntMatrix m = a;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) *= c;
    return m;
}

IntMatrix divide_exact(const IntMatrix& a, const Int& c) {
    IntMatrix m = a;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (!mpz_divisible_p(m(i, j).get_mpz_t(), c.get_mpz_t()))
                throw std::domain_error("divide_exact: entry not divisible by " + c.get_str());
            mpz_divexact(m(i, j).get_mpz_t(), m(i, j).get_mpz_t(), c.get_mpz_t());
        }
    return m;
}

std::vector<Int> row_times(const std::vector<Int>& v, const IntMatrix& m) {
    if (v.size() != m.rows()) throw dimension_error("row_times: length mismatch");
    std::vector<Int> out(m.cols());
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] == 0) continue;
        for (std::size_t j = 0; j < m.cols(); ++j) out[j] += v[i] * m(i, j);
    }
    return out;
}

Int dot(const std::vector<Int>& a, const std::vector<Int>& b) {
    if (a.size() != b.size()) throw dimension_error("dot: length mismatch");
    Int s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Int determinant(const IntMatrix& m) {
    if (m.rows() != m.cols()) throw dimension_error("determinant of a non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return 1;
    IntMatrix a = m;
    Int prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && a(p, k) == 0) ++p;
            if (p == n) return 0;
            a.swap_rows(k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                Int t = a(i, j) * a(k, k) - a(i, k) * a(k, j);
                mpz_divexact(a(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

std::size_t rank(const IntMatrix& m) {
    IntMatrix a = m;
    std::size_t r = 0;
    for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
        std::size_t p = r;
        while (p < a.rows() && a(p, c) == 0) ++p;
        if (p == a.rows()) continue;
        a.swap_rows(r, p);
        for (std::size_t i = r + 1; i < a.rows(); ++i) {
            if (a(i, c) == 0) continue;
            Int f = a(i, c), g = a(r, c);
            for (std::size_t j = c; j < a.cols(); ++j) a(i, j) = a(i, j) * g - a(r, j) * f;
        }
        ++r;
    }
    return r;
}

namespace {

struct SmithWork {
    IntMatrix A, U, Ui, V, Vi;

    void row_add(std::size_t i, std::size_t j, const Int& c) {
        A.add_row_multiple(i, j, c);
        U.add_row_multiple(i, j, c);
        Ui.add_col_multiple(j, i, -c);
    }
    void row_swap(std::size_t i, std::size_t j) {
        A.swap_rows(i, j);
        U.swap_rows(i, j);
        Ui.swap_cols(i, j);
    }
    void row_neg(std::size_t i) {
        A.negate_row(i);
        U.negate_row(i);
        Ui.negate_col(i);
    }
    void col_add(std::size_t i, std::size_t j, const Int& c) {
        A.add_col_multiple(i, j, c);
        V.add_col_multiple(i, j, c);
        Vi.add_row_multiple(j, i, -c);
    }
    void col_swap(std::size_t i, std::size_t j) {
        A.swap_cols(i, j);
        V.swap_cols(i, j);
        Vi.swap_rows(i, j);
    }
};

}  // namespace

SmithForm smith_normal_form(const IntMatrix& m) {
    const std::size_t R = m.rows(), C = m.cols();
    SmithWork w{m, IntMatrix::identity(R), IntMatrix::identity(R), IntMatrix::identity(C), IntMatrix::identity(C)};
    std::size_t t = 0;
    for (; t < std::min(R, C); ++t) {
        for (;;) {
            // pivot: smallest absolute value, then lowest row index, then lowest column
            std::size_t pi = R, pj = C;
            Int best;
            for (std::size_t i = t; i < R; ++i)
                for (std::size_t j = t; j < C; ++j) {
                    const Int& v = w.A(i, j);
                    if (v == 0) continue;
                    if (pi == R || mpz_cmpabs(v.get_mpz_t(), best.get_mpz_t()) < 0) {
                        best = v;
                        pi = i;
                        pj = j;
                    }
                }
            if (pi == R) goto done;
            w.row_swap(t, pi);
            w.col_swap(t, pj);
            bool clean = true;
            for (std::size_t i = t + 1; i < R; ++i) {
                if (w.A(i, t) == 0) continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), w.A(i, t).get_mpz_t(), w.A(t, t).get_mpz_t());
                w.row_add(i, t, -q);
                if (w.A(i, t) != 0) clean = false;
            }
            for (std::size_t j = t + 1; j < C; ++j) {
                if (w.A(t, j) == 0) continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), w.A(t, j).get_mpz_t(), w.A(t, t).get_mpz_t());
                w.col_add(j, t, -q);
                if (w.A(t, j) != 0) clean = false;
            }
            if (!clean) continue;
            // divisibility condition on the remaining block
            bool divides = true;
            for (std::size_t i = t + 1; i < R && divides; ++i)
                for (std::size_t j = t + 1; j < C; ++j)
                    if (!mpz_divisible_p(w.A(i, j).get_mpz_t(), w.A(t, t).get_mpz_t())) {
                        w.row_add(t, i, 1);
                        divides = false;
                        break;
                    }
            if (divides) break;
        }
        if (w.A(t, t) < 0) w.row_neg(t);
    }
done:
    SmithForm s{w.A, w.U, w.V, w.Ui, w.Vi, t};
    return s;
}

IntMatrix hermite_normal_form(const IntMatrix& m) {
    IntMatrix a = m;
    std::size_t r = 0;
    for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
        for (;;) {
            std::size_t p = a.rows();
            for (std::size_t i = r; i < a.rows(); ++i)
                if (a(i, c) != 0 && (p == a.rows() || mpz_cmpabs(a(i, c).get_mpz_t(), a(p, c).get_mpz_t()) < 0)) p = i;
            if (p == a.rows()) break;
            a.swap_rows(r, p);
            bool done = true;
            for (std::size_t i = r + 1; i < a.rows(); ++i) {
                if (a(i, c) == 0) continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), a(i, c).get_mpz_t(), a(r, c).get_mpz_t());
                a.add_row_multiple(i, r, -q);
                if (a(i, c) != 0) done = false;
            }
            if (done) break;
        }
        if (r < a.rows() && a(r, c) != 0) {
            if (a(r, c) < 0) a.negate_row(r);
            for (std::size_t i = 0; i < r; ++i) {
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), a(i, c).get_mpz_t(), a(r, c).get_mpz_t());
                a.add_row_multiple(i, r, -q);
            }
            ++r;
        }
    }
    return a.select_rows(0, r);
}

IntMatrix left_kernel(const IntMatrix& m) {
    if (m.rows() == 0) return IntMatrix(0, 0);
    SmithForm s = smith_normal_form(m);
    if (s.rank == m.rows()) return IntMatrix(0, m.rows());
    return hermite_normal_form(s.U.select_rows(s.rank, m.rows()));
}

IntMatrix saturate_rows(const IntMatrix& m) {
    if (m.rows() == 0) return IntMatrix(0, m.cols());
    SmithForm s = smith_normal_form(m);
    return hermite_normal_form(s.V_inv.select_rows(0, s.rank));
}

bool solve_integer_row(const IntMatrix& b, const std::vector<Int>& v, std::vector<Int>& x) {
    if (v.size() != b.cols()) throw dimension_error("solve_integer_row: length mismatch");
    SmithForm s = smith_normal_form(b);
    std::vector<Int> w = row_times(v, s.V);
    std::vector<Int> y(b.rows());
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i < s.rank) {
            if (!mpz_divisible_p(w[i].get_mpz_t(), s.D(i, i).get_mpz_t())) return false;
            mpz_divexact(y[i].get_mpz_t(), w[i].get_mpz_t(), s.D(i, i).get_mpz_t());
        } else if (w[i] != 0) {
            return false;
        }
    }
    for (std::size_t i = s.rank; i < y.size(); ++i) y[i] = 0;
    x = row_times(y, s.U);
    return true;
}

}  // namespace nv
