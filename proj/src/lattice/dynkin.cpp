#include "nv/lattice.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

namespace nv {

int RootSystemType::total_rank() const {
    int r = 0;
    for (const auto& [k, m] : parts) r += k.second * m;
    return r;
}

int RootSystemType::root_count() const {
    int c = 0;
    for (const auto& [k, m] : parts) {
        int n = k.second;
        c += m * (k.first == 'A' ? n * (n + 1) : 2 * n * (n - 1));
    }
    return c;
}

std::string RootSystemType::to_string() const {
    std::string s;
    for (const auto& [k, m] : parts) {
        if (!s.empty()) s += "⊔";
        if (m != 1) s += std::to_string(m);
        s += k.first;
        s += std::to_string(k.second);
    }
    return s;
}

RootSystemType RootSystemType::parse(const std::string& text) {
    static const std::string sep = "⊔";
    RootSystemType t;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t end = text.find(sep, pos);
        std::string tok = text.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
        pos = end == std::string::npos ? text.size() : end + sep.size();
        std::size_t i = 0;
        while (i < tok.size() && std::isspace(static_cast<unsigned char>(tok[i]))) ++i;
        int mult = 0;
        while (i < tok.size() && std::isdigit(static_cast<unsigned char>(tok[i]))) mult = mult * 10 + (tok[i++] - '0');
        if (mult == 0) mult = 1;
        if (i >= tok.size() || (tok[i] != 'A' && tok[i] != 'D'))
            throw std::invalid_argument("root system type: expected A or D in '" + tok + "'");
        char fam = tok[i++];
        int rk = 0;
        std::size_t digits = 0;
        while (i < tok.size() && std::isdigit(static_cast<unsigned char>(tok[i]))) {
            rk = rk * 10 + (tok[i++] - '0');
            ++digits;
        }
        while (i < tok.size() && std::isspace(static_cast<unsigned char>(tok[i]))) ++i;
        if (digits == 0 || rk == 0 || i != tok.size())
            throw std::invalid_argument("root system type: malformed component '" + tok + "'");
        if (fam == 'D' && rk < 4) throw std::invalid_argument("root system type: D needs rank >= 4");
        t.parts[{fam, rk}] += mult;
    }
    return t;
}

RootSystemType dynkin_classify_gram(const IntMatrix& gram) {
    const std::size_t n = gram.rows();
    std::vector<std::vector<std::size_t>> adj(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (gram(i, i) != 2) throw classification_error("root of norm " + gram(i, i).get_str() + " in root basis");
        for (std::size_t j = i + 1; j < n; ++j) {
            const Int& v = gram(i, j);
            if (v == 0) continue;
            if (v != 1 && v != -1)
                throw classification_error("inner product " + v.get_str() + " between roots is outside {0,+-1}");
            adj[i].push_back(j);
            adj[j].push_back(i);
        }
    }
    RootSystemType t;
    std::vector<int> comp(n, -1);
    std::size_t ncomp = 0;
    for (std::size_t s = 0; s < n; ++s) {
        if (comp[s] >= 0) continue;
        std::vector<std::size_t> nodes{s};
        comp[s] = static_cast<int>(ncomp);
        for (std::size_t k = 0; k < nodes.size(); ++k)
            for (std::size_t w : adj[nodes[k]])
                if (comp[w] < 0) {
                    comp[w] = static_cast<int>(ncomp);
                    nodes.push_back(w);
                }
        ++ncomp;
        std::size_t e = 0;
        for (std::size_t v : nodes) e += adj[v].size();
        e /= 2;
        if (e != nodes.size() - 1) throw classification_error("root diagram contains a cycle");
        std::vector<std::size_t> branch;
        for (std::size_t v : nodes) {
            if (adj[v].size() > 3) throw classification_error("root diagram vertex of degree > 3");
            if (adj[v].size() == 3) branch.push_back(v);
        }
        const int r = static_cast<int>(nodes.size());
        if (branch.empty()) {
            t.parts[{'A', r}] += 1;
            continue;
        }
        if (branch.size() > 1) throw classification_error("root diagram with two branch points");
        std::vector<int> arms;
        for (std::size_t w : adj[branch[0]]) {
            int len = 1;
            std::size_t prev = branch[0], cur = w;
            while (adj[cur].size() == 2) {
                std::size_t nxt = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
                prev = cur;
                cur = nxt;
                ++len;
            }
            arms.push_back(len);
        }
        std::sort(arms.begin(), arms.end());
        if (arms[0] == 1 && arms[1] == 1) {
            t.parts[{'D', r}] += 1;
        } else {
            throw classification_error("E-type or unsupported branch configuration (arms " + std::to_string(arms[0]) + "," +
                                       std::to_string(arms[1]) + "," + std::to_string(arms[2]) + ")");
        }
    }
    return t;
}

RootSystemType dynkin_classify(const IntMatrix& roots, const Lattice& ctx) {
    IntMatrix g = roots * ctx.ambient_gram * roots.transpose();
    return dynkin_classify_gram(divide_exact(g, ctx.denom * ctx.denom));
}

}  // namespace nv
