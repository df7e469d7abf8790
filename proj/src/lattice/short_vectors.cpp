#include "nv/lattice.hpp"

#include <algorithm>
#include <cmath>

namespace nv {

namespace {

Rat round_half(const Rat& x) {
    // nearest integer, ties toward +infinity
    Rat h = x + Rat(1, 2);
    Int f;
    mpz_fdiv_q(f.get_mpz_t(), h.get_num_mpz_t(), h.get_den_mpz_t());
    return Rat(f);
}

/// Lattice reduction of a positive-definite Gram matrix; returns T with T*G*T^T reduced.
IntMatrix reduce_basis(const IntMatrix& gram_in) {
    const std::size_t n = gram_in.rows();
    IntMatrix G = gram_in;
    IntMatrix T = IntMatrix::identity(n);
    if (n <= 1) return T;
    std::vector<std::vector<Rat>> mu(n, std::vector<Rat>(n));
    std::vector<Rat> B(n);
    const Rat delta(3, 4);

    auto red = [&](std::size_t k, std::size_t l) {
        if (abs(mu[k][l]) * 2 <= 1) return;
        Int q = round_half(mu[k][l]).get_num();
        Int gkk = G(k, k) - 2 * q * G(l, k) + q * q * G(l, l);
        for (std::size_t j = 0; j < n; ++j)
            if (j != k) G(k, j) -= q * G(l, j);
        G(k, k) = gkk;
        for (std::size_t j = 0; j < n; ++j) G(j, k) = G(k, j);
        T.add_row_multiple(k, l, -q);
        mu[k][l] -= q;
        for (std::size_t i = 0; i < l; ++i) mu[k][i] -= q * mu[l][i];
    };

    B[0] = G(0, 0);
    std::size_t k = 1, kmax = 0;
    while (k < n) {
        if (k > kmax) {
            kmax = k;
            for (std::size_t j = 0; j < k; ++j) {
                Rat s = G(k, j);
                for (std::size_t i = 0; i < j; ++i) s -= mu[j][i] * mu[k][i] * B[i];
                mu[k][j] = s / B[j];
            }
            Rat s = G(k, k);
            for (std::size_t j = 0; j < k; ++j) s -= mu[k][j] * mu[k][j] * B[j];
            B[k] = s;
            if (B[k] <= 0) throw unsupported_error("Gram matrix is not positive definite");
        }
        red(k, k - 1);
        if (B[k] < (delta - mu[k][k - 1] * mu[k][k - 1]) * B[k - 1]) {
            G.swap_rows(k, k - 1);
            G.swap_cols(k, k - 1);
            T.swap_rows(k, k - 1);
            for (std::size_t j = 0; j + 1 < k; ++j) std::swap(mu[k][j], mu[k - 1][j]);
            Rat m = mu[k][k - 1];
            Rat b = B[k] + m * m * B[k - 1];
            mu[k][k - 1] = m * B[k - 1] / b;
            B[k] = B[k - 1] * B[k] / b;
            B[k - 1] = b;
            for (std::size_t i = k + 1; i <= kmax; ++i) {
                Rat t = mu[i][k];
                mu[i][k] = mu[i][k - 1] - m * t;
                mu[i][k - 1] = t + mu[k][k - 1] * mu[i][k];
            }
            if (k > 1) --k;
        } else {
            for (std::size_t l = k - 1; l-- > 0;) red(k, l);
            ++k;
        }
    }
    return T;
}

/// Integer range {x : (x + u)^2 <= r}.
bool integer_range(const Rat& u, const Rat& r, Int& lo, Int& hi) {
    if (r < 0) return false;
    double c = -u.get_d(), s = std::sqrt(std::max(0.0, r.get_d()));
    Int a(std::floor(c - s) - 1), b(std::ceil(c + s) + 1);
    auto ok = [&](const Int& x) {
        Rat d = Rat(x) + u;
        return d * d <= r;
    };
    while (a <= b && !ok(a)) ++a;
    while (b >= a && !ok(b)) --b;
    if (a > b) return false;
    lo = a;
    hi = b;
    return true;
}

bool first_nonzero_positive(const std::vector<Int>& v) {
    for (const Int& x : v)
        if (x != 0) return x > 0;
    return false;
}

}  // namespace

std::vector<std::vector<Int>> short_vectors_gram(const IntMatrix& gram, const Int& max_norm, ShortVectorOptions opt) {
    const std::size_t n = gram.rows();
    std::vector<std::vector<Int>> out;
    if (n == 0 || max_norm <= 0) return out;
    if (!is_positive_definite(gram)) throw unsupported_error("short_vectors requires a definite lattice");

    IntMatrix T = reduce_basis(gram);
    IntMatrix R = T * gram * T.transpose();

    // Q(x) = sum_i q[i][i] * (x_i + sum_{j>i} q[i][j] x_j)^2
    std::vector<std::vector<Rat>> q(n, std::vector<Rat>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) q[i][j] = R(i, j);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            q[j][i] = q[i][j];
            q[i][j] /= q[i][i];
        }
        for (std::size_t k = i + 1; k < n; ++k)
            for (std::size_t l = k; l < n; ++l) q[k][l] -= q[k][i] * q[i][l];
    }

    std::vector<Int> x(n), lo(n), hi(n);
    std::vector<Rat> Tb(n), U(n);
    const Rat C(max_norm);
    std::size_t i = n - 1;
    Tb[i] = C;
    U[i] = 0;
    bool have = integer_range(U[i], Tb[i] / q[i][i], lo[i], hi[i]);
    if (!have) return out;
    x[i] = lo[i] - 1;
    for (;;) {
        ++x[i];
        if (x[i] > hi[i]) {
            if (++i == n) break;
            continue;
        }
        Rat d = Rat(x[i]) + U[i];
        Rat rest = Tb[i] - q[i][i] * d * d;
        if (i == 0) {
            bool zero = std::all_of(x.begin(), x.end(), [](const Int& v) { return v == 0; });
            if (!zero) {
                std::vector<Int> v = row_times(x, T);
                if (opt.both_signs || first_nonzero_positive(v)) out.push_back(std::move(v));
            }
            continue;
        }
        --i;
        Tb[i] = rest;
        Rat u = 0;
        for (std::size_t j = i + 1; j < n; ++j) u += q[i][j] * x[j];
        U[i] = u;
        if (!integer_range(U[i], Tb[i] / q[i][i], lo[i], hi[i])) {
            ++i;
            continue;
        }
        x[i] = lo[i] - 1;
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::vector<Int>> short_vectors(const Lattice& L, const Int& max_norm, ShortVectorOptions opt) {
    if (L.sign != SignModel::positive && L.sign != SignModel::negative) throw unsupported_error("unknown sign model");
    return short_vectors_gram(L.gram(), max_norm, opt);
}

std::vector<std::vector<Int>> short_vectors_box(const IntMatrix& gram, const Int& max_norm, bool both_signs) {
    const std::size_t n = gram.rows();
    std::vector<std::vector<Int>> out;
    if (n == 0) return out;
    // |x_i| <= sqrt(max_norm * (G^{-1})_ii)
    Int det = determinant(gram);
    std::vector<Int> bound(n);
    for (std::size_t i = 0; i < n; ++i) {
        IntMatrix minor(n - 1, n - 1);
        for (std::size_t a = 0, ra = 0; a < n; ++a) {
            if (a == i) continue;
            for (std::size_t b = 0, cb = 0; b < n; ++b) {
                if (b == i) continue;
                minor(ra, cb++) = gram(a, b);
            }
            ++ra;
        }
        Int num = max_norm * (n == 1 ? Int(1) : determinant(minor));
        Int fl;
        mpz_fdiv_q(fl.get_mpz_t(), num.get_mpz_t(), det.get_mpz_t());
        mpz_sqrt(bound[i].get_mpz_t(), fl.get_mpz_t());
    }
    std::vector<Int> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = -bound[i];
    for (;;) {
        bool zero = std::all_of(x.begin(), x.end(), [](const Int& v) { return v == 0; });
        if (!zero) {
            Int nrm = dot(row_times(x, gram), x);
            if (nrm <= max_norm && (both_signs || first_nonzero_positive(x))) out.push_back(x);
        }
        std::size_t k = 0;
        while (k < n && x[k] == bound[k]) {
            x[k] = -bound[k];
            ++k;
        }
        if (k == n) break;
        ++x[k];
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace nv
