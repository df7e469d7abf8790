#include "nv/genus_symbol.hpp"

#include <algorithm>
#include <map>

namespace nv {

namespace {

struct Splitter {
    const FiniteQuadraticForm& f;
    long p;
    std::vector<std::vector<Int>> gens;  // coordinates in f's generators
    std::vector<int> exps;               // order = p^exp

    Rat b(const std::vector<Int>& x, const std::vector<Int>& y) const { return f.bilinear(x, y); }
    Rat q(const std::vector<Int>& x) const { return f.quadratic(x); }
};

long ipow(long p, int e) {
    long r = 1;
    while (e-- > 0) r *= p;
    return r;
}

/// Integer value of r * scale, asserted integral.
Int scaled(const Rat& r, long scale) {
    Rat v = r * scale;
    if (v.get_den() != 1) throw std::logic_error("jordan splitting: value outside the expected lattice");
    return v.get_num();
}

Int mod_int(const Int& a, long m) {
    Int r;
    mpz_fdiv_r_ui(r.get_mpz_t(), a.get_mpz_t(), static_cast<unsigned long>(m));
    return r;
}

Int inverse_mod(const Int& a, long m) {
    Int r, mm(m);
    if (!mpz_invert(r.get_mpz_t(), a.get_mpz_t(), mm.get_mpz_t())) throw std::logic_error("jordan splitting: not a unit");
    return r;
}

void axpy(std::vector<Int>& y, const Int& c, const std::vector<Int>& x) {
    for (std::size_t i = 0; i < y.size(); ++i) y[i] -= c * x[i];
}

}  // namespace

struct JordanPiece {
    int exponent;
    int dim;           // 1 or 2
    Int a, s, c;       // dim 1: a = p^k q(x); dim 2: matrix [[a, s], [s, c]] of 2^k-scaled values
};

std::vector<JordanPiece> jordan_pieces(const FiniteQuadraticForm& pf, long p) {
    Splitter sp{pf, p, {}, {}};
    const std::size_t n = pf.generators();
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Int> e(n);
        e[i] = 1;
        sp.gens.push_back(e);
        int k = 0;
        Int d = pf.orders[i];
        while (d > 1) {
            if (!mpz_divisible_ui_p(d.get_mpz_t(), static_cast<unsigned long>(p)))
                throw std::logic_error("jordan splitting: order is not a power of p");
            d /= p;
            ++k;
        }
        sp.exps.push_back(k);
    }
    std::vector<JordanPiece> out;
    while (!sp.gens.empty()) {
        int K = *std::max_element(sp.exps.begin(), sp.exps.end());
        const long pk = ipow(p, K);
        std::vector<std::size_t> top;
        for (std::size_t i = 0; i < sp.gens.size(); ++i)
            if (sp.exps[i] == K) top.push_back(i);

        auto remove = [&](std::vector<std::size_t> idx) {
            std::sort(idx.rbegin(), idx.rend());
            for (std::size_t i : idx) {
                sp.gens.erase(sp.gens.begin() + static_cast<long>(i));
                sp.exps.erase(sp.exps.begin() + static_cast<long>(i));
            }
        };

        if (p != 2) {
            std::size_t pick = sp.gens.size();
            for (std::size_t i : top)
                if (mod_int(scaled(sp.b(sp.gens[i], sp.gens[i]), pk), p) != 0) {
                    pick = i;
                    break;
                }
            if (pick == sp.gens.size()) {
                for (std::size_t a = 0; a < top.size() && pick == sp.gens.size(); ++a)
                    for (std::size_t c = a + 1; c < top.size(); ++c) {
                        std::vector<Int> x = sp.gens[top[a]];
                        for (std::size_t t = 0; t < x.size(); ++t) x[t] += sp.gens[top[c]][t];
                        if (mod_int(scaled(sp.b(x, x), pk), p) != 0) {
                            sp.gens[top[a]] = x;
                            pick = top[a];
                            break;
                        }
                    }
            }
            if (pick == sp.gens.size()) throw std::logic_error("jordan splitting: degenerate form");
            const std::vector<Int> x = sp.gens[pick];
            Int u = mod_int(scaled(sp.b(x, x), pk), pk);
            Int uinv = inverse_mod(u, pk);
            for (std::size_t i = 0; i < sp.gens.size(); ++i) {
                if (i == pick) continue;
                Int c = mod_int(scaled(sp.b(sp.gens[i], x), pk) * uinv, pk);
                axpy(sp.gens[i], c, x);
            }
            out.push_back({K, 1, mod_int(scaled(sp.q(x), pk), 2 * pk), 0, 0});
            remove({pick});
            continue;
        }

        std::size_t pick = sp.gens.size();
        for (std::size_t i : top)
            if (mpz_odd_p(scaled(sp.q(sp.gens[i]), pk).get_mpz_t())) {
                pick = i;
                break;
            }
        if (pick != sp.gens.size()) {
            const std::vector<Int> x = sp.gens[pick];
            Int u = mod_int(scaled(sp.b(x, x), pk), pk);
            Int uinv = inverse_mod(u, pk);
            for (std::size_t i = 0; i < sp.gens.size(); ++i) {
                if (i == pick) continue;
                Int c = mod_int(scaled(sp.b(sp.gens[i], x), pk) * uinv, pk);
                axpy(sp.gens[i], c, x);
            }
            out.push_back({K, 1, mod_int(scaled(sp.q(x), pk), 2 * pk), 0, 0});
            remove({pick});
            continue;
        }
        std::size_t ia = sp.gens.size(), ic = sp.gens.size();
        for (std::size_t a = 0; a < top.size() && ia == sp.gens.size(); ++a)
            for (std::size_t c = a + 1; c < top.size(); ++c)
                if (mpz_odd_p(scaled(sp.b(sp.gens[top[a]], sp.gens[top[c]]), pk).get_mpz_t())) {
                    ia = top[a];
                    ic = top[c];
                    break;
                }
        if (ia == sp.gens.size()) throw std::logic_error("jordan splitting: degenerate 2-adic form");
        const std::vector<Int> x = sp.gens[ia], z = sp.gens[ic];
        Int m11 = mod_int(scaled(sp.b(x, x), pk), pk), m12 = mod_int(scaled(sp.b(x, z), pk), pk),
            m22 = mod_int(scaled(sp.b(z, z), pk), pk);
        Int det = mod_int(m11 * m22 - m12 * m12, pk);
        Int dinv = inverse_mod(det, pk);
        for (std::size_t i = 0; i < sp.gens.size(); ++i) {
            if (i == ia || i == ic) continue;
            Int r1 = scaled(sp.b(sp.gens[i], x), pk), r2 = scaled(sp.b(sp.gens[i], z), pk);
            // (alpha, beta) * M = (r1, r2)
            Int alpha = mod_int((r1 * m22 - r2 * m12) * dinv, pk);
            Int beta = mod_int((r2 * m11 - r1 * m12) * dinv, pk);
            axpy(sp.gens[i], alpha, x);
            axpy(sp.gens[i], beta, z);
        }
        out.push_back({K, 2, mod_int(scaled(sp.q(x), pk), 2 * pk), m12, mod_int(scaled(sp.q(z), pk), 2 * pk)});
        remove({ia, ic});
    }
    return out;
}

GenusSymbol jordan_symbol(const FiniteQuadraticForm& f) {
    GenusSymbol sym;
    for (const Int& P : primes_of(f)) {
        const long p = P.get_si();
        std::vector<JordanPiece> pieces = jordan_pieces(p_part(f, P), p);
        std::map<int, std::vector<JordanPiece>> by_scale;
        for (const auto& pc : pieces) by_scale[pc.exponent].push_back(pc);
        for (const auto& [k, ps] : by_scale) {
            SymbolBlock blk;
            blk.prime = p;
            blk.exponent = k;
            Int det = 1;
            int odd_sum = 0;
            for (const auto& pc : ps) {
                blk.rank += pc.dim;
                if (pc.dim == 1) {
                    det *= pc.a;
                    if (p == 2) {
                        blk.odd = true;
                        odd_sum += static_cast<int>(mod_int(pc.a, 8).get_si());
                    }
                } else {
                    det *= pc.a * pc.c - pc.s * pc.s;
                }
            }
            if (p == 2) {
                long d8 = mod_int(det, 8).get_si();
                blk.sign = (d8 == 1 || d8 == 7) ? 1 : -1;
                blk.oddity = blk.odd ? odd_sum % 8 : 0;
            } else {
                Int dm = mod_int(det, p);
                blk.sign = mpz_legendre(dm.get_mpz_t(), P.get_mpz_t());
            }
            sym.blocks.push_back(blk);
        }
    }
    return sym;
}

GenusSymbol genus_symbol(const FiniteQuadraticForm& f) { return canonicalize(jordan_symbol(f)); }

}  // namespace nv
