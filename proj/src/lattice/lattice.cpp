#include "nv/lattice.hpp"

#include <algorithm>

namespace nv {

IntMatrix Lattice::gram() const {
    IntMatrix g = basis * ambient_gram * basis.transpose();
    return divide_exact(g, denom * denom);
}

Lattice Lattice::with_basis(IntMatrix b) const {
    Lattice L = *this;
    L.basis = std::move(b);
    if (L.basis.rows() == 0) L.basis = IntMatrix(0, ambient_dim);
    return L;
}

Rat Lattice::inner(const std::vector<Int>& x, const std::vector<Int>& y) const {
    Rat r(dot(row_times(x, ambient_gram), y), denom * denom);
    r.canonicalize();
    return r;
}

Lattice lattice_from_gram(const IntMatrix& gram, SignModel sign) {
    if (!gram.is_symmetric()) throw dimension_error("Gram matrix is not symmetric");
    Lattice L;
    L.ambient_dim = gram.rows();
    L.basis = IntMatrix::identity(gram.rows());
    L.denom = 1;
    L.ambient_gram = gram;
    L.sign = sign;
    return L;
}

bool is_even(const IntMatrix& gram) {
    for (std::size_t i = 0; i < gram.rows(); ++i)
        if (!mpz_even_p(gram(i, i).get_mpz_t())) return false;
    return true;
}

IntMatrix coordinates_in(const Lattice& host, const IntMatrix& vecs) {
    IntMatrix out(vecs.rows(), host.rank());
    if (vecs.rows() == 0) return out;
    SmithForm s = smith_normal_form(host.basis);
    for (std::size_t r = 0; r < vecs.rows(); ++r) {
        std::vector<Int> w = row_times(vecs.row(r), s.V);
        std::vector<Int> y(host.rank());
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (i < s.rank) {
                if (!mpz_divisible_p(w[i].get_mpz_t(), s.D(i, i).get_mpz_t()))
                    throw coordinate_error("vector " + std::to_string(r) + " does not lie in the host lattice");
                mpz_divexact(y[i].get_mpz_t(), w[i].get_mpz_t(), s.D(i, i).get_mpz_t());
            } else if (w[i] != 0) {
                throw coordinate_error("vector " + std::to_string(r) + " is outside the span of the host lattice");
            }
        }
        out.set_row(r, row_times(y, s.U));
    }
    return out;
}

Lattice saturate(const IntMatrix& sub_basis, const Lattice& host) {
    if (sub_basis.rows() == 0) return host.with_basis(IntMatrix(0, host.ambient_dim));
    if (sub_basis.cols() != host.rank()) throw coordinate_error("saturate: coordinates do not match host rank");
    IntMatrix c = saturate_rows(sub_basis);
    return host.with_basis(c * host.basis);
}

Lattice orthogonal_complement(const Lattice& sub, const Lattice& host) {
    if (sub.rank() == 0) return host;
    // x * (B_host A B_sub^T) = 0
    IntMatrix m = host.basis * host.ambient_gram * sub.basis.transpose();
    IntMatrix k = left_kernel(m);
    if (k.rows() == 0) return host.with_basis(IntMatrix(0, host.ambient_dim));
    return host.with_basis(k * host.basis);
}

IntMatrix induced_action(const Lattice& L, const IntMatrix& P, const std::string& name) {
    if (P.rows() != L.ambient_dim || P.cols() != L.ambient_dim)
        throw isometry_error(name + ": action has wrong dimension");
    if (P * L.ambient_gram * P.transpose() != L.ambient_gram)
        throw isometry_error(name + ": does not preserve the ambient form");
    try {
        return coordinates_in(L, L.basis * P);
    } catch (const coordinate_error&) {
        throw isometry_error(name + ": does not map the lattice into itself");
    }
}

Lattice fixed_lattice(const Lattice& N, const AmbientAction& G) {
    if (G.empty()) return N;
    IntMatrix stacked;
    const IntMatrix I = IntMatrix::identity(N.ambient_dim);
    for (std::size_t i = 0; i < G.size(); ++i) {
        induced_action(N, G[i], "generator " + std::to_string(i + 1));
        stacked = stacked.append_cols(N.basis * (G[i] - I));
    }
    IntMatrix k = left_kernel(stacked);
    if (k.rows() == 0) return N.with_basis(IntMatrix(0, N.ambient_dim));
    return N.with_basis(k * N.basis);
}

Lattice coinvariant_lattice(const Lattice& N, const AmbientAction& G) {
    Lattice fixed = fixed_lattice(N, G);
    Lattice co = orthogonal_complement(fixed, N);
    if (co.rank() == 0) return co;
    IntMatrix gram = co.gram();
    if (!is_positive_definite(gram))
        throw classification_error("coinvariant lattice is not definite");
    if (!short_vectors_gram(gram, 2).empty())
        throw classification_error("coinvariant lattice contains vectors of norm 2");
    // the discriminant action is trivial only for a unimodular host
    if (abs(determinant(N.gram())) != 1) return co;
    SmithForm s = smith_normal_form(gram);
    const IntMatrix I = IntMatrix::identity(co.rank());
    for (std::size_t g = 0; g < G.size(); ++g) {
        IntMatrix X = induced_action(co, G[g], "generator " + std::to_string(g + 1));
        IntMatrix m = s.U * (X - I);
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j)
                if (!mpz_divisible_p(m(i, j).get_mpz_t(), s.D(i, i).get_mpz_t()))
                    throw classification_error("group acts nontrivially on the discriminant group");
    }
    return co;
}

bool is_positive_definite(const IntMatrix& gram) {
    // leading principal minors
    for (std::size_t k = 1; k <= gram.rows(); ++k) {
        IntMatrix m(k, k);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) m(i, j) = gram(i, j);
        if (determinant(m) <= 0) return false;
    }
    return true;
}

}  // namespace nv
