#include "nv/finite_form.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace nv {

Rat mod_rat(const Rat& x, long m) {
    // x - m * floor(x / m)
    Rat y = x / m;
    Int f;
    mpz_fdiv_q(f.get_mpz_t(), y.get_num_mpz_t(), y.get_den_mpz_t());
    Rat r = x - Rat(f * m);
    r.canonicalize();
    return r;
}

Int FiniteQuadraticForm::order() const {
    Int n = 1;
    for (const Int& d : orders) n *= d;
    return n;
}

Int FiniteQuadraticForm::exponent() const {
    Int e = 1;
    for (const Int& d : orders) mpz_lcm(e.get_mpz_t(), e.get_mpz_t(), d.get_mpz_t());
    return e;
}

Rat FiniteQuadraticForm::bilinear(const std::vector<Int>& x, const std::vector<Int>& y) const {
    Rat s = 0;
    for (std::size_t i = 0; i < orders.size(); ++i) {
        if (x[i] == 0) continue;
        for (std::size_t j = 0; j < orders.size(); ++j)
            if (y[j] != 0) s += Rat(x[i] * y[j]) * b[i][j];
    }
    return mod_rat(s, 1);
}

Rat FiniteQuadraticForm::quadratic(const std::vector<Int>& x) const {
    Rat s = 0;
    for (std::size_t i = 0; i < orders.size(); ++i) {
        if (x[i] == 0) continue;
        s += Rat(x[i] * x[i]) * q[i];
        for (std::size_t j = i + 1; j < orders.size(); ++j)
            if (x[j] != 0) s += 2 * Rat(x[i] * x[j]) * b[i][j];
    }
    return mod_rat(s, 2);
}

void FiniteQuadraticForm::validate() const {
    const std::size_t n = orders.size();
    if (b.size() != n || q.size() != n) throw std::logic_error("finite form: inconsistent sizes");
    for (std::size_t i = 0; i < n; ++i) {
        if (orders[i] < 2) throw std::logic_error("finite form: cyclic order below 2");
        if (mod_rat(q[i], 1) != b[i][i]) throw std::logic_error("finite form: q(e) differs from b(e,e) mod 1");
        if (mod_rat(q[i] * Rat(orders[i] * orders[i]), 2) != 0)
            throw std::logic_error("finite form: q(d e) is not 0 mod 2");
        for (std::size_t j = 0; j < n; ++j) {
            if (b[i][j] != b[j][i]) throw std::logic_error("finite form: b not symmetric");
            if (mod_rat(b[i][j] * Rat(orders[i]), 1) != 0) throw std::logic_error("finite form: b(d e, f) nonzero");
        }
    }
}

std::string FiniteQuadraticForm::to_string() const {
    std::ostringstream os;
    os << "orders=[";
    for (std::size_t i = 0; i < orders.size(); ++i) os << (i ? "," : "") << orders[i];
    os << "] q=[";
    for (std::size_t i = 0; i < q.size(); ++i) os << (i ? "," : "") << q[i];
    os << "]";
    return os.str();
}

FiniteQuadraticForm trivial_form() { return {}; }

namespace {

std::vector<std::pair<Int, unsigned>> factor(Int n) {
    std::vector<std::pair<Int, unsigned>> out;
    for (Int p = 2; p * p <= n; ++p) {
        unsigned e = 0;
        while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
            n /= p;
            ++e;
        }
        if (e) out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

Rat rat_dot_gram(const std::vector<Rat>& x, const IntMatrix& g, const std::vector<Rat>& y) {
    Rat s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] == 0) continue;
        Rat t = 0;
        for (std::size_t j = 0; j < y.size(); ++j)
            if (y[j] != 0) t += Rat(g(i, j)) * y[j];
        s += x[i] * t;
    }
    return s;
}

}  // namespace

FiniteQuadraticForm discriminant_form_gram(const IntMatrix& gram, SignModel sign) {
    if (!gram.is_symmetric()) throw dimension_error("discriminant form: Gram matrix not symmetric");
    if (!is_even(gram)) throw unsupported_error("discriminant form of an odd lattice");
    FiniteQuadraticForm f;
    if (gram.rows() == 0) return f;
    SmithForm s = smith_normal_form(gram);
    if (s.rank < gram.rows()) throw unsupported_error("discriminant form of a degenerate lattice");
    std::vector<std::vector<Rat>> gens;
    for (std::size_t i = 0; i < gram.rows(); ++i) {
        const Int& d = s.D(i, i);
        if (d == 1) continue;
        std::vector<Rat> g(gram.rows());
        for (std::size_t j = 0; j < gram.rows(); ++j) {
            g[j] = Rat(s.U(i, j), d);
            g[j].canonicalize();
        }
        for (const auto& [p, e] : factor(d)) {
            Int pe;
            mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e);
            Rat m(d / pe);
            std::vector<Rat> h = g;
            for (auto& v : h) v *= m;
            gens.push_back(std::move(h));
            f.orders.push_back(pe);
        }
    }
    // order by prime, then by cyclic order
    std::vector<std::size_t> idx(gens.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    auto prime_of = [&](std::size_t i) { return factor(f.orders[i])[0].first; };
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        Int pa = prime_of(a), pb = prime_of(b);
        if (pa != pb) return pa < pb;
        return f.orders[a] < f.orders[b];
    });
    FiniteQuadraticForm out;
    const int sg = sign == SignModel::negative ? -1 : 1;
    for (std::size_t a : idx) out.orders.push_back(f.orders[a]);
    const std::size_t n = idx.size();
    out.b.assign(n, std::vector<Rat>(n));
    out.q.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            out.b[i][j] = mod_rat(sg * rat_dot_gram(gens[idx[i]], gram, gens[idx[j]]), 1);
        out.q[i] = mod_rat(sg * rat_dot_gram(gens[idx[i]], gram, gens[idx[i]]), 2);
    }
    return out;
}

FiniteQuadraticForm discriminant_form(const Lattice& L) { return discriminant_form_gram(L.gram(), L.sign); }

FiniteQuadraticForm direct_sum(const FiniteQuadraticForm& f, const FiniteQuadraticForm& g) {
    FiniteQuadraticForm h;
    const std::size_t n = f.generators(), m = g.generators();
    h.orders = f.orders;
    h.orders.insert(h.orders.end(), g.orders.begin(), g.orders.end());
    h.q = f.q;
    h.q.insert(h.q.end(), g.q.begin(), g.q.end());
    h.b.assign(n + m, std::vector<Rat>(n + m));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) h.b[i][j] = f.b[i][j];
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) h.b[n + i][n + j] = g.b[i][j];
    return h;
}

FiniteQuadraticForm negate(const FiniteQuadraticForm& f) {
    FiniteQuadraticForm g = f;
    for (auto& row : g.b)
        for (auto& v : row) v = mod_rat(-v, 1);
    for (auto& v : g.q) v = mod_rat(-v, 2);
    return g;
}

std::vector<Int> primes_of(const FiniteQuadraticForm& f) {
    std::vector<Int> ps;
    for (const Int& d : f.orders) {
        Int p = factor(d)[0].first;
        if (std::find(ps.begin(), ps.end(), p) == ps.end()) ps.push_back(p);
    }
    std::sort(ps.begin(), ps.end());
    return ps;
}

FiniteQuadraticForm p_part(const FiniteQuadraticForm& f, const Int& p) {
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < f.orders.size(); ++i)
        if (mpz_divisible_p(f.orders[i].get_mpz_t(), p.get_mpz_t())) keep.push_back(i);
    FiniteQuadraticForm g;
    for (std::size_t i : keep) {
        g.orders.push_back(f.orders[i]);
        g.q.push_back(f.q[i]);
        std::vector<Rat> row;
        for (std::size_t j : keep) row.push_back(f.b[i][j]);
        g.b.push_back(std::move(row));
    }
    return g;
}

std::complex<double> gauss_sum(const FiniteQuadraticForm& f) {
    std::complex<double> total(1.0, 0.0);
    for (const Int& p : primes_of(f)) {
        FiniteQuadraticForm g = p_part(f, p);
        const std::size_t n = g.generators();
        std::vector<Int> x(n);
        std::complex<double> s(0.0, 0.0);
        for (;;) {
            double v = g.quadratic(x).get_d();
            s += std::polar(1.0, std::numbers::pi * v);
            std::size_t k = 0;
            while (k < n && x[k] + 1 == g.orders[k]) x[k++] = 0;
            if (k == n) break;
            ++x[k];
        }
        total *= s / std::sqrt(g.order().get_d());
    }
    return total;
}

std::optional<int> gauss_signature(const FiniteQuadraticForm& f) {
    std::complex<double> z = gauss_sum(f);
    for (int s = 0; s < 8; ++s)
        if (std::abs(z - std::polar(1.0, std::numbers::pi * s / 4)) < 1e-7) return s;
    return std::nullopt;
}

}  // namespace nv
