#include "pcsf/brute_force.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

#include "pcsf/steiner.hpp"

namespace pcsf {

namespace {

SolutionForest best_acyclic_subset(const PcInstance& inst,
                                   const std::vector<std::pair<int, int>>& must_separate,
                                   const BruteForceCaps& caps) {
    int m = inst.graph.edge_count();
    if (m > caps.max_edges) {
        std::ostringstream os;
        os << "edge-subset brute force capped at " << caps.max_edges << " edges (got " << m << ")";
        throw ValidationError(os.str());
    }
    bool have_best = false;
    SolutionForest best;
    for (unsigned long mask = 0; mask < (1ul << m); ++mask) {
        UnionFind uf(inst.graph.vertex_count());
        bool acyclic = true;
        std::vector<int> edges;
        for (int e = 0; e < m && acyclic; ++e)
            if (mask & (1ul << e)) {
                if (!uf.unite(inst.graph.edge(e).u, inst.graph.edge(e).v)) acyclic = false;
                edges.push_back(e);
            }
        if (!acyclic) continue;
        bool ok = true;
        for (const auto& [a, b] : must_separate)
            if (uf.same(a, b)) {
                ok = false;
                break;
            }
        if (!ok) continue;
        SolutionForest sol = evaluate(inst, edges);
        if (!have_best || sol.cost < best.cost) {
            best = std::move(sol);
            have_best = true;
        }
    }
    return best;
}

}  // namespace

SolutionForest brute_force_pcsf(const PcInstance& inst, const BruteForceCaps& caps) {
    return best_acyclic_subset(inst, {}, caps);
}

SolutionForest brute_force_pcsf_separating(const PcInstance& inst,
                                           const std::vector<std::pair<int, int>>& must_separate,
                                           const BruteForceCaps& caps) {
    return best_acyclic_subset(inst, must_separate, caps);
}

namespace {

// Set partitions in restricted-growth-string order.
void enumerate_partitions(int k, const std::function<void(const std::vector<int>&)>& fn) {
    std::vector<int> rgs(k, 0);
    std::function<void(int, int)> rec = [&](int i, int maxv) {
        if (i == k) {
            fn(rgs);
            return;
        }
        for (int v = 0; v <= maxv + 1; ++v) {
            rgs[i] = v;
            rec(i + 1, std::max(maxv, v));
        }
    };
    if (k == 0) {
        fn(rgs);
        return;
    }
    rec(0, -1);
}

}  // namespace

SolutionForest brute_force_pcsf_pairs(const PcInstance& inst, const BruteForceCaps& caps) {
    if (inst.kind != InstanceKind::Forest)
        throw ValidationError("pair-subset brute force needs a forest instance");
    int h = static_cast<int>(inst.pairs.size());
    if (h > caps.max_pairs) {
        std::ostringstream os;
        os << "pair-subset brute force capped at " << caps.max_pairs << " pairs (got " << h << ")";
        throw ValidationError(os.str());
    }
    // Cache exact Steiner trees per pair-group mask.
    std::map<unsigned, SteinerTree> group_cache;
    auto group_tree = [&](unsigned gmask) -> const SteinerTree& {
        auto it = group_cache.find(gmask);
        if (it != group_cache.end()) return it->second;
        std::vector<int> terms;
        for (int i = 0; i < h; ++i)
            if (gmask & (1u << i)) {
                terms.push_back(inst.pairs[i].s);
                terms.push_back(inst.pairs[i].t);
            }
        return group_cache.emplace(gmask, dreyfus_wagner(inst.graph, terms, caps.steiner_terminals))
            .first->second;
    };

    bool have_best = false;
    SolutionForest best;
    for (unsigned ymask = 0; ymask < (1u << h); ++ymask) {
        std::vector<int> chosen;
        for (int i = 0; i < h; ++i)
            if (ymask & (1u << i)) chosen.push_back(i);
        int k = static_cast<int>(chosen.size());
        enumerate_partitions(k, [&](const std::vector<int>& rgs) {
            int groups = k == 0 ? 0 : 1 + *std::max_element(rgs.begin(), rgs.end());
            std::vector<unsigned> gmasks(groups, 0);
            for (int i = 0; i < k; ++i) gmasks[rgs[i]] |= 1u << chosen[i];
            std::vector<int> edges;
            for (unsigned gm : gmasks) {
                const SteinerTree& st = group_tree(gm);
                if (!st.feasible) return;  // this grouping cannot be realized
                edges.insert(edges.end(), st.edges.begin(), st.edges.end());
            }
            std::sort(edges.begin(), edges.end());
            edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
            SolutionForest sol = evaluate(inst, edges);
            if (!have_best || sol.cost < best.cost) {
                best = std::move(sol);
                have_best = true;
            }
        });
    }
    return best;
}

SolutionForest brute_force_pcst(const PcInstance& inst, const BruteForceCaps& caps) {
    if (inst.kind != InstanceKind::Tree)
        throw ValidationError("PCST brute force needs a tree instance");
    std::vector<int> terminals;
    for (int v = 0; v < inst.graph.vertex_count(); ++v)
        if (v != inst.root && inst.vertex_penalty[v] > 0) terminals.push_back(v);
    int k = static_cast<int>(terminals.size());
    if (k + 1 > caps.steiner_terminals) {
        std::ostringstream os;
        os << "PCST brute force capped at " << caps.steiner_terminals - 1 << " terminals (got "
           << k << ")";
        throw ValidationError(os.str());
    }
    std::vector<int> all;
    all.push_back(inst.root);
    all.insert(all.end(), terminals.begin(), terminals.end());
    // Root occupies bit 0; the engine answers every terminal subset at once.
    SteinerSubsets engine(inst.graph, all, caps.steiner_terminals);

    bool have_best = false;
    SolutionForest best;
    for (unsigned wmask = 0; wmask < (1u << k); ++wmask) {
        unsigned full = (wmask << 1) | 1u;
        if (!engine.feasible(full)) continue;
        std::vector<int> edges = engine.tree_edges(full);
        SolutionForest sol = evaluate(inst, edges);
        if (!have_best || sol.cost < best.cost) {
            best = std::move(sol);
            have_best = true;
        }
    }
    if (!have_best) throw ValidationError("PCST brute force: no feasible subset");
    return best;
}

}  // namespace pcsf
