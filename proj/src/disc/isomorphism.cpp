#include "nv/finite_form.hpp"

#include <algorithm>
#include <map>
#include <functional>
#include <numeric>

namespace nv {

namespace {

/// Integer model of a p-primary form: values scaled by 2E, b mod 2E, q mod 4E.
struct Table {
    long E = 1;
    std::vector<long> orders;
    std::vector<std::vector<long>> B;
    std::vector<long> Q;

    std::vector<std::vector<long>> elems;
    std::vector<long> elem_order, elem_q;
};

long scaled(const Rat& x, long E, long mod) {
    Rat v = x * (2 * E);
    if (v.get_den() != 1) throw std::logic_error("form value not in the expected lattice");
    long r = v.get_num().get_si() % mod;
    return r < 0 ? r + mod : r;
}

Table make_table(const FiniteQuadraticForm& f) {
    Table t;
    t.E = f.exponent().get_si();
    const std::size_t n = f.generators();
    for (const Int& o : f.orders) t.orders.push_back(o.get_si());
    t.B.assign(n, std::vector<long>(n));
    for (std::size_t i = 0; i < n; ++i) {
        t.Q.push_back(scaled(f.q[i], t.E, 4 * t.E));
        for (std::size_t j = 0; j < n; ++j) t.B[i][j] = scaled(f.b[i][j], t.E, 2 * t.E);
    }
    std::vector<long> c(n, 0);
    for (;;) {
        long ord = 1, q = 0;
        for (std::size_t i = 0; i < n; ++i) {
            long oi = t.orders[i] / std::gcd(c[i], t.orders[i]);
            ord = std::lcm(ord, oi);
            q += c[i] * c[i] % (4 * t.E) * t.Q[i];
            for (std::size_t j = i + 1; j < n; ++j) q += 2 * (c[i] * c[j] % (2 * t.E)) * t.B[i][j];
            q %= 4 * t.E;
        }
        t.elems.push_back(c);
        t.elem_order.push_back(ord);
        t.elem_q.push_back(q);
        std::size_t k = 0;
        while (k < n && c[k] + 1 == t.orders[k]) c[k++] = 0;
        if (k == n) break;
        ++c[k];
    }
    return t;
}

long pair_value(const Table& t, const std::vector<long>& x, const std::vector<long>& y) {
    const long m = 2 * t.E;
    long s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!x[i]) continue;
        for (std::size_t j = 0; j < y.size(); ++j)
            if (y[j]) s = (s + x[i] * y[j] % m * t.B[i][j]) % m;
    }
    return s;
}

bool isomorphic_primary(const FiniteQuadraticForm& f, const FiniteQuadraticForm& g) {
    if (f.order() != g.order()) return false;
    if (f.generators() == 0) return true;
    Table tf = make_table(f), tg = make_table(g);
    if (tf.E != tg.E) return false;

    std::map<std::pair<long, long>, long> hf, hg;
    for (std::size_t i = 0; i < tf.elems.size(); ++i) ++hf[{tf.elem_order[i], tf.elem_q[i]}];
    for (std::size_t i = 0; i < tg.elems.size(); ++i) ++hg[{tg.elem_order[i], tg.elem_q[i]}];
    if (hf != hg) return false;

    // generators of f, largest order first
    const std::size_t n = f.generators();
    std::vector<std::size_t> gens(n);
    std::iota(gens.begin(), gens.end(), 0);
    std::stable_sort(gens.begin(), gens.end(), [&](std::size_t a, std::size_t b) { return tf.orders[a] > tf.orders[b]; });

    std::vector<std::vector<std::size_t>> candidates(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t i = gens[k];
        for (std::size_t e = 0; e < tg.elems.size(); ++e)
            if (tg.elem_order[e] == tf.orders[i] && tg.elem_q[e] == tf.Q[i]) candidates[k].push_back(e);
    }

    std::vector<std::size_t> image(n);
    std::function<bool(std::size_t)> dfs = [&](std::size_t k) {
        if (k == n) return true;
        std::size_t i = gens[k];
        for (std::size_t e : candidates[k]) {
            bool ok = true;
            for (std::size_t l = 0; l < k && ok; ++l)
                ok = pair_value(tg, tg.elems[e], tg.elems[image[l]]) == tf.B[i][gens[l]];
            if (!ok) continue;
            image[k] = e;
            if (dfs(k + 1)) return true;
        }
        return false;
    };
    return dfs(0);
}

}  // namespace

bool forms_isomorphic(const FiniteQuadraticForm& f, const FiniteQuadraticForm& g, std::size_t bound) {
    if (f.order() != g.order()) return false;
    if (f.order() > Int(static_cast<unsigned long>(bound)))
        throw oracle_unavailable("discriminant group of order " + f.order().get_str() + " exceeds the oracle bound");
    if (primes_of(f) != primes_of(g)) return false;
    for (const Int& p : primes_of(f))
        if (!isomorphic_primary(p_part(f, p), p_part(g, p))) return false;
    return true;
}

}  // namespace nv
