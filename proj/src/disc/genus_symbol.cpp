#include "nv/genus_symbol.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <queue>
#include <set>
#include <tuple>

namespace nv {

long SymbolBlock::scale() const {
    long s = 1;
    for (int i = 0; i < exponent; ++i) s *= prime;
    return s;
}

Int GenusSymbol::order() const {
    Int n = 1;
    for (const auto& b : blocks)
        for (int i = 0; i < b.rank; ++i) n *= b.scale();
    return n;
}

namespace {

bool prime_power(long n, long& p, int& e) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) {
            p = d;
            e = 0;
            while (n % d == 0) {
                n /= d;
                ++e;
            }
            return n == 1;
        }
    p = n;
    e = 1;
    return true;
}

class SymbolParser {
public:
    explicit SymbolParser(const std::string& t) : text_(t) {}

    GenusSymbol parse() {
        GenusSymbol s;
        skip();
        if (pos_ >= text_.size()) return s;
        if (text_[pos_] == '1') {
            std::size_t save = pos_;
            ++pos_;
            skip();
            if (pos_ >= text_.size()) return s;
            pos_ = save;
        }
        for (;;) {
            s.blocks.push_back(block());
            skip();
            if (pos_ >= text_.size()) break;
            if (text_[pos_] != ',') throw symbol_parse_error("expected ','", pos_);
            ++pos_;
        }
        std::sort(s.blocks.begin(), s.blocks.end(), [](const SymbolBlock& a, const SymbolBlock& b) {
            return std::tie(a.prime, a.exponent) < std::tie(b.prime, b.exponent);
        });
        for (std::size_t i = 1; i < s.blocks.size(); ++i)
            if (s.blocks[i].prime == s.blocks[i - 1].prime && s.blocks[i].exponent == s.blocks[i - 1].exponent)
                throw symbol_parse_error("repeated scale " + std::to_string(s.blocks[i].scale()), 0);
        return s;
    }

private:
    void skip() {
        while (pos_ < text_.size() &&
               (std::isspace(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '{' || text_[pos_] == '}' ||
                text_[pos_] == '$'))
            ++pos_;
    }

    long number() {
        skip();
        std::size_t start = pos_;
        long v = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            v = v * 10 + (text_[pos_] - '0');
            if (v > 1000000000L) throw symbol_parse_error("number too large", start);
            ++pos_;
        }
        if (pos_ == start) throw symbol_parse_error("expected a number", start);
        return v;
    }

    SymbolBlock block() {
        skip();
        std::size_t start = pos_;
        long scale = number();
        SymbolBlock b;
        if (!prime_power(scale, b.prime, b.exponent))
            throw symbol_parse_error("scale " + std::to_string(scale) + " is not a prime power", start);
        bool have_sub = false, have_sup = false;
        for (;;) {
            skip();
            if (pos_ >= text_.size()) break;
            char c = text_[pos_];
            if (c == '_' && !have_sub) {
                ++pos_;
                skip();
                std::size_t at = pos_;
                if (text_.compare(pos_, 2, "II") == 0) {
                    pos_ += 2;
                    b.odd = false;
                } else if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                    long t = number();
                    if (t > 7) throw symbol_parse_error("oddity out of range", at);
                    b.odd = true;
                    b.oddity = static_cast<int>(t);
                } else {
                    throw symbol_parse_error("unknown subscript", at);
                }
                have_sub = true;
            } else if (c == '^' && !have_sup) {
                ++pos_;
                skip();
                std::size_t at = pos_;
                if (pos_ >= text_.size() || (text_[pos_] != '+' && text_[pos_] != '-'))
                    throw symbol_parse_error("expected sign", at);
                b.sign = text_[pos_] == '+' ? 1 : -1;
                ++pos_;
                long n = number();
                if (n == 0) throw symbol_parse_error("zero rank", at);
                b.rank = static_cast<int>(n);
                have_sup = true;
            } else {
                break;
            }
        }
        if (!have_sup) throw symbol_parse_error("missing rank", pos_);
        if (b.prime == 2 && !have_sub) throw symbol_parse_error("2-adic block without type subscript", start);
        if (b.prime != 2 && have_sub) throw symbol_parse_error("odd block with a subscript", start);
        if (b.prime == 2 && !b.odd && b.rank % 2 != 0) throw symbol_parse_error("even block of odd rank", start);
        return b;
    }

    const std::string& text_;
    std::size_t pos_ = 0;
};

bool odd_block_valid(int n, int eps, int t) {
    t = ((t % 8) + 8) % 8;
    if ((t - n) % 2 != 0) return false;
    if (n == 1) return eps == 1 ? (t == 1 || t == 7) : (t == 3 || t == 5);
    if (n == 2) return eps == 1 ? t != 4 : t != 0;
    return true;
}

std::string block_text(const SymbolBlock& b) {
    std::string s = std::to_string(b.scale());
    if (b.prime == 2) s += b.odd ? "_" + std::to_string(b.oddity) : std::string("_II");
    s += "^{";
    s += b.sign > 0 ? '+' : '-';
    s += std::to_string(b.rank) + "}";
    return s;
}

struct TwoAdic {
    int K = 0;
    std::vector<int> n, odd, sign;  // indexed by exponent 0..K; index 0 is the invisible unimodular part
    std::vector<int> comp;          // compartment id or -1
    int ncomp = 0;
};

TwoAdic two_adic(const std::vector<SymbolBlock>& blocks) {
    TwoAdic t;
    for (const auto& b : blocks) t.K = std::max(t.K, b.exponent);
    t.n.assign(t.K + 2, 0);
    t.odd.assign(t.K + 2, 0);
    t.sign.assign(t.K + 2, 1);
    t.comp.assign(t.K + 2, -1);
    for (const auto& b : blocks) {
        t.n[b.exponent] = b.rank;
        t.odd[b.exponent] = b.odd;
        t.sign[b.exponent] = b.sign;
    }
    for (int k = 1; k <= t.K; ++k)
        if (t.odd[k]) t.comp[k] = (k > 1 && t.odd[k - 1]) ? t.comp[k - 1] : t.ncomp++;
    return t;
}

/// All ways to give each odd constituent an oddity consistent with its rank and sign.
void distributions(const TwoAdic& t, const std::vector<int>& sign, const std::vector<int>& totals,
                   std::vector<std::vector<int>>& out) {
    std::vector<int> members;
    for (int k = 1; k <= t.K; ++k)
        if (t.odd[k]) members.push_back(k);
    std::vector<int> odd(t.K + 1, 0);
    std::vector<int> sums(t.ncomp, 0);
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == members.size()) {
            for (int c = 0; c < t.ncomp; ++c)
                if (((sums[c] - totals[c]) % 8 + 8) % 8 != 0) return;
            out.push_back(odd);
            return;
        }
        int k = members[i];
        for (int v = 0; v < 8; ++v) {
            if (!odd_block_valid(t.n[k], sign[k], v)) continue;
            odd[k] = v;
            sums[t.comp[k]] += v;
            rec(i + 1);
            sums[t.comp[k]] -= v;
        }
    };
    rec(0);
}

std::vector<SymbolBlock> canonical_two_adic(const std::vector<SymbolBlock>& blocks) {
    if (blocks.empty()) return {};
    TwoAdic t = two_adic(blocks);
    std::vector<int> totals(t.ncomp, 0);
    for (const auto& b : blocks)
        if (b.odd) totals[t.comp[b.exponent]] = (totals[t.comp[b.exponent]] + b.oddity) % 8;

    auto linked = [&](int r) { return t.odd[r] || t.odd[r + 1]; };
    using State = std::pair<std::vector<int>, std::vector<int>>;
    std::set<State> seen;
    std::queue<State> todo;
    State start{t.sign, totals};
    seen.insert(start);
    todo.push(start);
    while (!todo.empty()) {
        State s = todo.front();
        todo.pop();
        for (int a = 0; a <= t.K; ++a) {
            if (a > 0 && t.n[a] == 0) continue;
            for (int b = a + 1; b <= t.K; ++b) {
                if (!linked(b - 1)) break;
                if (t.n[b] == 0) continue;
                State nx = s;
                if (a > 0) nx.first[a] = -nx.first[a];
                nx.first[b] = -nx.first[b];
                for (int r = a; r < b; ++r) {
                    int c = t.odd[r] ? t.comp[r] : t.comp[r + 1];
                    nx.second[c] = (nx.second[c] + 4) % 8;
                }
                if (seen.insert(nx).second) todo.push(nx);
            }
        }
    }

    bool found = false;
    std::vector<int> best_signs;
    std::string best_text;
    std::vector<SymbolBlock> best;
    for (const State& s : seen) {
        bool ok = true;
        for (int k = 1; k <= t.K; ++k)
            if (t.n[k] && !t.odd[k] && t.n[k] % 2) ok = false;
        if (!ok) continue;
        std::vector<std::vector<int>> dists;
        distributions(t, s.first, s.second, dists);
        std::vector<int> signs;
        for (int k = 1; k <= t.K; ++k)
            if (t.n[k]) signs.push_back(s.first[k] > 0 ? 0 : 1);
        for (const auto& d : dists) {
            std::vector<SymbolBlock> cand;
            std::string text;
            for (int k = 1; k <= t.K; ++k) {
                if (!t.n[k]) continue;
                SymbolBlock b;
                b.prime = 2;
                b.exponent = k;
                b.rank = t.n[k];
                b.sign = s.first[k];
                b.odd = t.odd[k];
                b.oddity = t.odd[k] ? d[k] : 0;
                text += block_text(b) + ",";
                cand.push_back(b);
            }
            if (!found || std::tie(signs, text) < std::tie(best_signs, best_text)) {
                found = true;
                best_signs = signs;
                best_text = text;
                best = cand;
            }
        }
    }
    if (!found) throw std::invalid_argument("2-adic symbol is not realizable");
    return best;
}

}  // namespace

GenusSymbol parse_symbol(const std::string& text) { return SymbolParser(text).parse(); }

std::string print_symbol(const GenusSymbol& s) {
    if (s.blocks.empty()) return "1";
    std::string out;
    for (const auto& b : s.blocks) {
        if (!out.empty()) out += ",";
        out += block_text(b);
    }
    return out;
}

GenusSymbol canonicalize(const GenusSymbol& s) {
    GenusSymbol out;
    std::vector<SymbolBlock> two;
    for (const auto& b : s.blocks) {
        if (b.rank <= 0) throw std::invalid_argument("symbol block of nonpositive rank");
        if (b.prime == 2) two.push_back(b);
    }
    std::sort(two.begin(), two.end(), [](const SymbolBlock& a, const SymbolBlock& b) { return a.exponent < b.exponent; });
    for (const auto& b : canonical_two_adic(two)) out.blocks.push_back(b);
    std::vector<SymbolBlock> rest;
    for (const auto& b : s.blocks)
        if (b.prime != 2) {
            SymbolBlock c = b;
            c.odd = false;
            c.oddity = 0;
            rest.push_back(c);
        }
    std::sort(rest.begin(), rest.end(), [](const SymbolBlock& a, const SymbolBlock& b) {
        return std::tie(a.prime, a.exponent) < std::tie(b.prime, b.exponent);
    });
    out.blocks.insert(out.blocks.end(), rest.begin(), rest.end());
    return out;
}

bool is_realizable(const GenusSymbol& s) {
    try {
        canonicalize(s);
        return true;
    } catch (const std::invalid_argument&) {
        return false;
    }
}

namespace {

long smallest_nonresidue(long p) {
    for (long v = 2; v < p; ++v) {
        Int a(v), pp(p);
        if (mpz_legendre(a.get_mpz_t(), pp.get_mpz_t()) == -1) return v;
    }
    return 1;
}

void add_cyclic(FiniteQuadraticForm& f, const Int& order, const Rat& q) {
    const std::size_t n = f.orders.size();
    f.orders.push_back(order);
    for (auto& row : f.b) row.push_back(0);
    f.b.emplace_back(n + 1, Rat(0));
    f.b[n][n] = mod_rat(q, 1);
    f.q.push_back(mod_rat(q, 2));
}

void add_plane(FiniteQuadraticForm& f, const Int& order, const Rat& qx, const Rat& bxz, const Rat& qz) {
    const std::size_t n = f.orders.size();
    add_cyclic(f, order, qx);
    add_cyclic(f, order, qz);
    f.b[n][n + 1] = f.b[n + 1][n] = mod_rat(bxz, 1);
}

}  // namespace

FiniteQuadraticForm realize(const GenusSymbol& s) {
    FiniteQuadraticForm f;
    for (const auto& b : s.blocks) {
        const long sc = b.scale();
        const Int order(sc);
        if (b.prime != 2) {
            long v = b.sign > 0 ? 1 : smallest_nonresidue(b.prime);
            auto even_rep = [&](long a) { return a % 2 == 0 ? a : a + sc; };
            for (int i = 0; i + 1 < b.rank; ++i) add_cyclic(f, order, Rat(even_rep(1), sc));
            add_cyclic(f, order, Rat(even_rep(v), sc));
            continue;
        }
        if (!b.odd) {
            for (int i = 0; i < b.rank / 2; ++i) {
                bool v = b.sign < 0 && i == 0;
                add_plane(f, order, Rat(v ? 2 : 0, sc), Rat(1, sc), Rat(v ? 2 : 0, sc));
            }
            continue;
        }
        // odd units u_i with sum = oddity and product in the sign class
        const int m = std::min(b.rank, 4);
        std::vector<int> u(b.rank, 1);
        bool done = false;
        std::vector<int> tail(m, 0);
        for (int code = 0; code < (1 << (2 * m)) && !done; ++code) {
            long sum = b.rank - m, prod = 1;
            for (int i = 0; i < m; ++i) {
                tail[i] = 2 * ((code >> (2 * i)) & 3) + 1;
                sum += tail[i];
                prod *= tail[i];
            }
            int sg = (prod % 8 == 1 || prod % 8 == 7) ? 1 : -1;
            if (sum % 8 == b.oddity && sg == b.sign) {
                for (int i = 0; i < m; ++i) u[b.rank - m + i] = tail[i];
                done = true;
            }
        }
        if (!done) throw std::invalid_argument("2-adic block " + block_text(b) + " is not realizable");
        for (int x : u) add_cyclic(f, order, Rat(x, sc));
    }
    return f;
}

std::string canonical_text(const std::string& text) { return print_symbol(canonicalize(parse_symbol(text))); }

}  // namespace nv
