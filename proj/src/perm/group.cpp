#include "nv/group.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>

namespace nv {

PermGroup::PermGroup(LabelModel m, std::vector<Permutation> gens) : model_(m) {
    for (auto& g : gens)
        if (!g.is_identity() && std::find(gens_.begin(), gens_.end(), g) == gens_.end()) gens_.push_back(g);
}

PermGroup PermGroup::from_text(const std::vector<std::string>& generators, LabelModel m) {
    std::vector<Permutation> gens;
    for (const auto& t : generators) gens.push_back(parse_cycles(t, m));
    return PermGroup(m, std::move(gens));
}

const PermGroup::Cache& PermGroup::materialize() const {
    std::lock_guard<std::mutex> lock(cache_->mu);
    if (cache_->ready) return *cache_;
    std::vector<Permutation> elems{Permutation()};
    std::set<Permutation> seen{Permutation()};
    for (std::size_t i = 0; i < elems.size(); ++i)
        for (const auto& g : gens_) {
            Permutation y = elems[i] * g;
            if (seen.insert(y).second) {
                if (elems.size() >= kClosureBound)
                    throw group_error("group closure exceeds " + std::to_string(kClosureBound) + " elements");
                elems.push_back(y);
            }
        }
    cache_->elements = std::move(elems);
    cache_->sorted.assign(seen.begin(), seen.end());
    cache_->ready = true;
    return *cache_;
}

const std::vector<Permutation>& PermGroup::elements() const { return materialize().elements; }

bool PermGroup::contains(const Permutation& p) const {
    const auto& s = materialize().sorted;
    return std::binary_search(s.begin(), s.end(), p);
}

std::vector<std::vector<int>> orbits(const PermGroup& g) {
    std::vector<int> parent(kDegree);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const auto& p : g.generators())
        for (int i = 0; i < kDegree; ++i) {
            int a = find(i), b = find(p(i));
            if (a != b) parent[std::max(a, b)] = std::min(a, b);
        }
    std::vector<std::vector<int>> out;
    std::vector<int> slot(kDegree, -1);
    for (int i = 0; i < kDegree; ++i) {
        int r = find(i);
        if (slot[r] < 0) {
            slot[r] = static_cast<int>(out.size());
            out.emplace_back();
        }
        out[slot[r]].push_back(i);
    }
    return out;
}

PermGroup derived_subgroup(const PermGroup& g) {
    std::set<Permutation> comms;
    const auto& el = g.elements();
    for (const auto& x : el)
        for (const auto& y : el) {
            Permutation c = x.inverse() * y.inverse() * x * y;
            if (!c.is_identity()) comms.insert(c);
        }
    return PermGroup(g.model(), std::vector<Permutation>(comms.begin(), comms.end()));
}

PermGroup center(const PermGroup& g) {
    std::vector<Permutation> z;
    for (const auto& x : g.elements()) {
        bool central = true;
        for (const auto& s : g.generators())
            if (x * s != s * x) {
                central = false;
                break;
            }
        if (central) z.push_back(x);
    }
    return PermGroup(g.model(), z);
}

namespace {

std::vector<long> prime_factors(long n) {
    std::vector<long> ps;
    for (long p = 2; p * p <= n; ++p)
        if (n % p == 0) {
            ps.push_back(p);
            while (n % p == 0) n /= p;
        }
    if (n > 1) ps.push_back(n);
    return ps;
}

Permutation power(const Permutation& x, long k) {
    Permutation r;
    for (long i = 0; i < k; ++i) r = r * x;
    return r;
}

/// Primary invariants of G/D, from counts of elements whose p^k-th power lies in D.
std::vector<long> abelian_invariants(const PermGroup& g, const PermGroup& d) {
    const long m = static_cast<long>(g.order() / d.order());
    std::vector<long> out;
    for (long p : prime_factors(m)) {
        std::vector<int> logs{0};
        long pk = 1;
        for (;;) {
            pk *= p;
            long count = 0;
            for (const auto& x : g.elements())
                if (d.contains(power(x, pk))) ++count;
            count /= static_cast<long>(d.order());
            int e = 0;
            while (count > 1) {
                count /= p;
                ++e;
            }
            if (e == logs.back()) break;
            logs.push_back(e);
        }
        // r[k] = number of invariants p^e with e >= k
        std::vector<int> r;
        for (std::size_t k = 1; k < logs.size(); ++k) r.push_back(logs[k] - logs[k - 1]);
        for (std::size_t k = 0; k < r.size(); ++k) {
            int cnt = r[k] - (k + 1 < r.size() ? r[k + 1] : 0);
            long q = 1;
            for (std::size_t i = 0; i <= k; ++i) q *= p;
            for (int i = 0; i < cnt; ++i) out.push_back(q);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

GroupFingerprint fingerprint(const PermGroup& g) {
    GroupFingerprint f;
    f.order = g.order();
    for (const auto& x : g.elements()) {
        int o = x.order();
        ++f.element_orders[o];
        f.exponent = std::lcm(f.exponent, static_cast<long>(o));
    }
    PermGroup d = derived_subgroup(g);
    f.derived = d.order();
    f.center = center(g).order();
    f.abelianization = abelian_invariants(g, d);
    return f;
}

std::string GroupFingerprint::to_string() const {
    std::ostringstream os;
    os << "order=" << order << " orders={";
    bool first = true;
    for (const auto& [o, c] : element_orders) {
        os << (first ? "" : ",") << o << ":" << c;
        first = false;
    }
    os << "} ab=[";
    for (std::size_t i = 0; i < abelianization.size(); ++i) os << (i ? "," : "") << abelianization[i];
    os << "] center=" << center << " derived=" << derived << " exponent=" << exponent;
    return os.str();
}

std::string identify_type(const PermGroup& g, const std::vector<CatalogEntry>& catalog) {
    GroupFingerprint f = fingerprint(g);
    std::vector<std::string> hits;
    for (const auto& e : catalog)
        if (e.fingerprint == f) hits.push_back(e.name);
    if (hits.empty()) return "unrecognized";
    if (hits.size() > 1) {
        std::string msg = "ambiguous fingerprint, candidates:";
        for (const auto& h : hits) msg += " " + h;
        throw ambiguity_error(msg);
    }
    return hits.front();
}

void check_catalog_separated(const std::vector<CatalogEntry>& catalog) {
    for (std::size_t i = 0; i < catalog.size(); ++i)
        for (std::size_t j = i + 1; j < catalog.size(); ++j)
            if (catalog[i].fingerprint == catalog[j].fingerprint)
                throw ambiguity_error("catalog entries " + catalog[i].name + " and " + catalog[j].name +
                                      " share a fingerprint");
}

bool contains_subgroup(const PermGroup& g, const PermGroup& h) {
    if (g.model() != h.model()) throw group_error("label model mismatch");
    // g is closed, so containing h's generators means containing h
    for (const auto& x : h.generators())
        if (!g.contains(x)) return false;
    return true;
}

std::vector<PermGroup> find_isomorphic_subgroups(const PermGroup& g, const GroupFingerprint& target) {
    const auto& el = g.elements();
    const std::size_t n = el.size();
    if (n > kSubgroupSearchBound)
        throw scope_error("subgroup search is limited to groups of order " + std::to_string(kSubgroupSearchBound) +
                          "; use contains_subgroup for group of order " + std::to_string(n));
    std::vector<std::vector<std::uint8_t>> mul(n, std::vector<std::uint8_t>(n));
    std::vector<std::uint8_t> inv(n);
    {
        std::map<Permutation, std::size_t> index;
        for (std::size_t i = 0; i < n; ++i) index[el[i]] = i;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) mul[i][j] = static_cast<std::uint8_t>(index.at(el[i] * el[j]));
            inv[i] = static_cast<std::uint8_t>(index.at(el[i].inverse()));
        }
    }
    using Mask = std::uint64_t;
    auto bit = [](std::size_t i) { return Mask{1} << i; };
    // subgroup generated by gens: right multiplication closure from the identity
    auto generate = [&](const std::vector<std::size_t>& gens) {
        Mask m = bit(0);
        std::vector<std::size_t> queue{0};
        for (std::size_t q = 0; q < queue.size(); ++q)
            for (std::size_t s : gens) {
                std::size_t y = mul[queue[q]][s];
                if (!(m & bit(y))) {
                    m |= bit(y);
                    queue.push_back(y);
                }
            }
        return m;
    };
    // every subgroup is reached by adjoining one element at a time
    std::map<Mask, std::vector<std::size_t>> all{{bit(0), {}}};
    std::deque<Mask> todo{bit(0)};
    while (!todo.empty()) {
        Mask h = todo.front();
        todo.pop_front();
        const std::vector<std::size_t> base = all.at(h);
        for (std::size_t x = 0; x < n; ++x) {
            if (h & bit(x)) continue;
            std::vector<std::size_t> gens = base;
            gens.push_back(x);
            Mask k = generate(gens);
            if (all.emplace(k, gens).second) todo.push_back(k);
        }
    }
    auto conj = [&](Mask h, std::size_t t) {
        Mask r = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (h & bit(i)) r |= bit(mul[mul[inv[t]][i]][t]);
        return r;
    };
    std::set<Mask> classes;
    std::vector<PermGroup> out;
    for (const auto& entry : all) {
        const Mask h = entry.first;
        if (static_cast<std::size_t>(std::popcount(h)) != target.order) continue;
        Mask canon = h;
        for (std::size_t t = 0; t < n; ++t) canon = std::min(canon, conj(h, t));
        if (!classes.insert(canon).second) continue;
        std::vector<Permutation> gens;
        for (std::size_t i : all.at(canon)) gens.push_back(el[i]);
        PermGroup sub(g.model(), gens);
        if (fingerprint(sub) == target) out.push_back(std::move(sub));
    }
    return out;
}

}  // namespace nv
