#include "nv/niemeier.hpp"

#include <algorithm>
#include <cstdint>
#include <unordered_map>

namespace nv {

namespace {

using Mask = std::uint32_t;

class Aligner {
public:
    Aligner(const NiemeierModel& model, const std::vector<Permutation>& gens, std::size_t limit)
        : L_(model.components), m_(model.code.m), limit_(limit) {
        words_ = model.code.codewords();
        min_weight_ = model.code.min_weight();
        for (const auto& g : gens) maps_.push_back(component_action(model, g));
        for (auto& mp : maps_) {
            std::vector<int> inv(L_);
            for (int j = 0; j < L_; ++j) inv[mp.perm[j]] = j;
            inverse_.push_back(inv);
        }
        // a 5-subset of a minimum-weight support determines it for the Golay codes
        if (m_ <= 3) {
            for (const auto& w : words_) {
                Mask s = 0;
                for (int j = 0; j < L_; ++j)
                    if (w[j]) s |= Mask{1} << j;
                if (std::popcount(s) != min_weight_) continue;
                std::vector<int> pts;
                for (int j = 0; j < L_; ++j)
                    if (s >> j & 1) pts.push_back(j);
                for_each_subset(pts, 5, [&](Mask sub) { blocks_[sub] = s; });
            }
            // the 5-subsets must determine the block uniquely for the test to be sound
            long expect = 1;
            for (int i = 0; i < 5; ++i) expect = expect * (L_ - i) / (i + 1);
            use_blocks_ = static_cast<long>(blocks_.size()) == expect;
        }
        // WLOG fixes from the transitivity of the code's automorphism group
        if (model.id == LabelModel::N23) fixed_positions_ = 5;
        if (model.id == LabelModel::N22) fixed_positions_ = 5;
        fix_first_sign_ = m_ > 2;
        order_search();
    }

    AlignResult run() {
        rho_.assign(L_, -1);
        eta_.assign(L_, 1);
        used_.assign(L_, false);
        tau_.assign(maps_.size(), std::vector<int>(L_, -1));
        tau_sign_.assign(maps_.size(), std::vector<int>(L_, 1));
        known_.assign(maps_.size(), {});
        AlignResult res;
        bool found = dfs(0);
        res.nodes = nodes_;
        if (found) {
            Alignment a;
            a.component = rho_;
            a.sign = eta_;
            res.sigma = a;
        } else if (nodes_ < limit_) {
            res.exhausted = true;
            res.certificate = "complete search over " + std::to_string(nodes_) + " nodes with " +
                              std::to_string(fixed_positions_) + " positions fixed by transitivity" +
                              (fix_first_sign_ ? " and one sign fixed by -1" : "") + ": no relabeling preserves the code";
        } else {
            res.certificate = "search stopped after " + std::to_string(nodes_) + " nodes";
        }
        return res;
    }

private:
    template <class F>
    static void for_each_subset(const std::vector<int>& pts, int k, F&& f) {
        std::vector<int> idx(k);
        for (int i = 0; i < k; ++i) idx[i] = i;
        const int n = static_cast<int>(pts.size());
        if (k > n) return;
        for (;;) {
            Mask s = 0;
            for (int i : idx) s |= Mask{1} << pts[i];
            f(s);
            int i = k - 1;
            while (i >= 0 && idx[i] == n - k + i) --i;
            if (i < 0) return;
            ++idx[i];
            for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
        }
    }

    /// Source components in breadth-first order along the generators.
    void order_search() {
        std::vector<bool> seen(L_, false);
        for (int s = 0; s < L_; ++s) {
            if (seen[s]) continue;
            std::vector<int> queue{s};
            seen[s] = true;
            for (std::size_t q = 0; q < queue.size(); ++q) {
                order_.push_back(queue[q]);
                for (std::size_t g = 0; g < maps_.size(); ++g)
                    for (int nb : {maps_[g].perm[queue[q]], inverse_[g][queue[q]]})
                        if (!seen[nb]) {
                            seen[nb] = true;
                            queue.push_back(nb);
                        }
            }
        }
    }

    bool dfs(std::size_t depth) {
        if (depth == order_.size()) return full_check();
        if (++nodes_ >= limit_) return false;
        const int i = order_[depth];
        for (int c = 0; c < L_; ++c) {
            if (used_[c]) continue;
            if (static_cast<int>(depth) < fixed_positions_ && c != static_cast<int>(depth)) continue;
            for (int s : {1, -1}) {
                if (s < 0 && (m_ == 2 || (fix_first_sign_ && depth == 0))) continue;
                rho_[i] = c;
                eta_[i] = s;
                used_[c] = true;
                std::vector<std::pair<std::size_t, int>> added;
                bool ok = extend(i, added);
                if (ok && dfs(depth + 1)) return true;
                for (auto [g, x] : added) {
                    tau_[g][x] = -1;
                    known_[g].pop_back();
                }
                used_[c] = false;
                rho_[i] = -1;
                eta_[i] = 1;
                if (nodes_ >= limit_) return false;
            }
        }
        return false;
    }

    int mod(int v) const { return ((v % m_) + m_) % m_; }

    bool extend(int i, std::vector<std::pair<std::size_t, int>>& added) {
        for (std::size_t g = 0; g < maps_.size(); ++g) {
            bool fresh = false;
            for (int a : {i, inverse_[g][i]}) {
                int b = maps_[g].perm[a];
                if (rho_[a] < 0 || rho_[b] < 0 || tau_[g][rho_[a]] >= 0) continue;
                tau_[g][rho_[a]] = rho_[b];
                tau_sign_[g][rho_[a]] = eta_[b] * maps_[g].sign[a] * eta_[a];
                known_[g].push_back(rho_[a]);
                added.push_back({g, rho_[a]});
                fresh = true;
            }
            if (!fresh) continue;
            if (use_blocks_ && !blocks_ok(g)) return false;
            if (static_cast<int>(known_[g].size()) >= min_weight_ && !projection_ok(g)) return false;
        }
        return true;
    }

    /// For each 5 known points containing the newest, the block through them maps onto a block.
    bool blocks_ok(std::size_t g) {
        const auto& K = known_[g];
        if (K.size() < 6) return true;
        const int x = K.back();
        Mask kmask = 0, kimg = 0;
        for (int z : K) {
            kmask |= Mask{1} << z;
            kimg |= Mask{1} << tau_[g][z];
        }
        std::vector<int> rest(K.begin(), K.end() - 1);
        bool ok = true;
        for_each_subset(rest, 4, [&](Mask sub) {
            if (!ok) return;
            Mask five = sub | (Mask{1} << x);
            Mask img = 0;
            for (int z = 0; z < L_; ++z)
                if (five >> z & 1) img |= Mask{1} << tau_[g][z];
            Mask O = blocks_.at(five), Oimg = blocks_.at(img);
            Mask mapped = 0;
            Mask in = O & kmask;
            for (int z = 0; z < L_; ++z)
                if (in >> z & 1) mapped |= Mask{1} << tau_[g][z];
            if (mapped != (Oimg & kimg)) ok = false;
        });
        return ok;
    }

    /// Projections of the code onto the known domain and onto its image correspond.
    bool projection_ok(std::size_t g) {
        const auto& K = known_[g];
        std::vector<std::uint64_t> a, b;
        a.reserve(words_.size());
        b.reserve(words_.size());
        for (const auto& w : words_) {
            std::uint64_t ea = 0, eb = 0;
            for (int z : K) {
                ea = ea * m_ + mod(tau_sign_[g][z] * w[z]);
                eb = eb * m_ + w[tau_[g][z]];
            }
            a.push_back(ea);
            b.push_back(eb);
        }
        std::sort(a.begin(), a.end());
        a.erase(std::unique(a.begin(), a.end()), a.end());
        std::sort(b.begin(), b.end());
        b.erase(std::unique(b.begin(), b.end()), b.end());
        return a == b;
    }

    bool full_check() {
        std::vector<std::vector<int>> sorted = words_;
        for (std::size_t g = 0; g < maps_.size(); ++g)
            for (const auto& w : words_) {
                std::vector<int> v(L_);
                for (int z = 0; z < L_; ++z) v[tau_[g][z]] = mod(tau_sign_[g][z] * w[z]);
                if (!std::binary_search(sorted.begin(), sorted.end(), v)) return false;
            }
        return true;
    }

    int L_, m_;
    std::size_t limit_;
    std::vector<std::vector<int>> words_;
    int min_weight_ = 0;
    std::vector<MonomialMap> maps_;
    std::vector<std::vector<int>> inverse_;
    std::unordered_map<Mask, Mask> blocks_;
    bool use_blocks_ = false;
    int fixed_positions_ = 0;
    bool fix_first_sign_ = false;
    std::vector<int> order_;

    std::vector<int> rho_, eta_;
    std::vector<bool> used_;
    std::vector<std::vector<int>> tau_, tau_sign_;
    std::vector<std::vector<int>> known_;
    std::size_t nodes_ = 0;
};

}  // namespace

AlignResult align_code(const NiemeierModel& model, const std::vector<Permutation>& generators, std::size_t node_limit) {
    bool preserved = true;
    for (const auto& g : generators) {
        component_action(model, g);
        if (!lift_permutation(model, g)) {
            preserved = false;
            break;
        }
    }
    if (preserved) {
        AlignResult res;
        res.sigma = Alignment::identity(model);
        return res;
    }
    return Aligner(model, generators, node_limit).run();
}

}  // namespace nv
