#include "pcsf/dp.hpp"

#include <algorithm>
#include <sstream>

namespace pcsf {

Partition canonical_partition(const Partition& raw) {
    Partition out(raw.size());
    std::map<int, int> remap;
    int next = 0;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        auto it = remap.find(raw[i]);
        if (it == remap.end()) it = remap.emplace(raw[i], next++).first;
        out[i] = it->second;
    }
    return out;
}

Partition join_partitions(const Partition& a, const Partition& b) {
    int n = static_cast<int>(a.size());
    UnionFind uf(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (a[i] == a[j] || b[i] == b[j]) uf.unite(i, j);
    Partition out(n);
    for (int i = 0; i < n; ++i) out[i] = uf.find(i);
    return canonical_partition(out);
}

bool is_refinement(const Partition& fine, const Partition& coarse) {
    for (std::size_t i = 0; i < fine.size(); ++i)
        for (std::size_t j = i + 1; j < fine.size(); ++j)
            if (fine[i] == fine[j] && coarse[i] != coarse[j]) return false;
    return true;
}

std::vector<Partition> all_partitions(int k) {
    std::vector<Partition> out;
    Partition rgs(k, 0);
    std::function<void(int, int)> rec = [&](int i, int maxv) {
        if (i == k) {
            out.push_back(rgs);
            return;
        }
        for (int v = 0; v <= maxv + 1; ++v) {
            rgs[i] = v;
            rec(i + 1, std::max(maxv, v));
        }
    };
    if (k == 0) {
        out.push_back({});
        return out;
    }
    rec(0, -1);
    return out;
}

std::vector<Partition> coarsenings(const Partition& base) {
    int blocks = base.empty() ? 0 : 1 + *std::max_element(base.begin(), base.end());
    std::vector<Partition> out;
    for (const Partition& block_part : all_partitions(blocks)) {
        Partition p(base.size());
        for (std::size_t i = 0; i < base.size(); ++i) p[i] = block_part[base[i]];
        out.push_back(canonical_partition(p));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::uint64_t pack_partition(const Partition& p) {
    std::uint64_t code = 0;
    for (std::size_t i = 0; i < p.size(); ++i)
        code |= static_cast<std::uint64_t>(p[i] & 0xF) << (4 * i);
    return code | (static_cast<std::uint64_t>(p.size()) << 56);
}

Partition unpack_partition(std::uint64_t code, int size) {
    Partition p(size);
    for (int i = 0; i < size; ++i) p[i] = static_cast<int>((code >> (4 * i)) & 0xF);
    return p;
}

namespace {

std::vector<int> mask_positions(std::uint32_t vmask) {
    std::vector<int> out;
    for (int i = 0; i < 32; ++i)
        if (vmask & (1u << i)) out.push_back(i);
    return out;
}

// Component partition of the chosen positions under the chosen edges.
Partition components_of(std::uint32_t vmask,
                        const std::vector<std::tuple<int, int, int>>& bag_edges,
                        std::uint64_t emask) {
    std::vector<int> pos = mask_positions(vmask);
    std::vector<int> index(32, -1);
    for (std::size_t i = 0; i < pos.size(); ++i) index[pos[i]] = static_cast<int>(i);
    UnionFind uf(static_cast<int>(pos.size()));
    for (std::size_t e = 0; e < bag_edges.size(); ++e) {
        if (!(emask & (1ull << e))) continue;
        uf.unite(index[std::get<0>(bag_edges[e])], index[std::get<1>(bag_edges[e])]);
    }
    Partition p(pos.size());
    for (std::size_t i = 0; i < pos.size(); ++i) p[i] = uf.find(static_cast<int>(i));
    return canonical_partition(p);
}

}  // namespace

PcstDp::PcstDp(const PcInstance& inst, const NiceTreeDecomposition& ntd)
    : inst_(inst), ntd_(ntd) {
    if (inst.kind != InstanceKind::Tree)
        throw ValidationError("the exact DP solves the vertex-penalty (tree) form");
    ctx_.resize(ntd.nodes.size());
    for (std::size_t i = 0; i < ntd.nodes.size(); ++i) {
        ctx_[i].bag = ntd.nodes[i].bag;
        if (ctx_[i].bag.size() > 14) throw ValidationError("bag too large for the DP encoding");
        const auto& bag = ctx_[i].bag;
        std::map<std::pair<int, int>, int> seen;
        for (int e = 0; e < inst.graph.edge_count(); ++e) {
            const Edge& ed = inst.graph.edge(e);
            if (ed.u == ed.v) continue;
            auto iu = std::lower_bound(bag.begin(), bag.end(), ed.u);
            auto iv = std::lower_bound(bag.begin(), bag.end(), ed.v);
            if (iu == bag.end() || *iu != ed.u || iv == bag.end() || *iv != ed.v) continue;
            int pa = static_cast<int>(iu - bag.begin());
            int pb = static_cast<int>(iv - bag.begin());
            if (pa > pb) std::swap(pa, pb);
            if (!seen.emplace(std::minmax(pa, pb), e).second)
                throw ValidationError("the DP needs a simple graph inside every bag");
            ctx_[i].bag_edges.emplace_back(pa, pb, e);
        }
        if (ctx_[i].bag_edges.size() > 60)
            throw ValidationError("bag edge list too large for the DP encoding");
    }
}

Rat PcstDp::bag_penalty_outside(int i, std::uint32_t vmask) const {
    Rat sum = 0;
    const auto& bag = ctx_[i].bag;
    for (std::size_t p = 0; p < bag.size(); ++p) {
        if (vmask & (1u << p)) continue;
        if (bag[p] == inst_.root) continue;  // the root is never priced
        sum += inst_.vertex_penalty[bag[p]];
    }
    return sum;
}

void PcstDp::relax(int i, const DpKey& key, const Rat& cost, const DpBack& back) {
    auto it = ctx_[i].table.find(key);
    if (it == ctx_[i].table.end()) {
        ctx_[i].table.emplace(key, DpEntry{cost, back});
    } else if (cost < it->second.cost) {
        it->second = DpEntry{cost, back};
    }
}

void PcstDp::solve_leaf(int i) {
    const auto& bag = ctx_[i].bag;
    const auto& bag_edges = ctx_[i].bag_edges;
    int nb = static_cast<int>(bag.size());
    for (std::uint32_t vmask = 0; vmask < (1u << nb); ++vmask) {
        // Edge subsets inside the chosen vertices.
        std::vector<std::size_t> usable;
        for (std::size_t e = 0; e < bag_edges.size(); ++e) {
            int pa = std::get<0>(bag_edges[e]), pb = std::get<1>(bag_edges[e]);
            if ((vmask & (1u << pa)) && (vmask & (1u << pb))) usable.push_back(e);
        }
        for (std::uint64_t pick = 0; pick < (1ull << usable.size()); ++pick) {
            std::uint64_t emask = 0;
            Rat length = 0;
            for (std::size_t j = 0; j < usable.size(); ++j)
                if (pick & (1ull << j)) {
                    emask |= 1ull << usable[j];
                    length += inst_.graph.edge(std::get<2>(bag_edges[usable[j]])).length;
                }
            Partition beta = components_of(vmask, bag_edges, emask);
            DpKey key{BagSubgraph{vmask, emask}, pack_partition(beta)};
            relax(i, key, length + bag_penalty_outside(i, vmask), DpBack{DpBack::Leaf, {}, {}});
        }
    }
}

void PcstDp::solve_join(int i) {
    int c1 = ntd_.nodes[i].child_left, c2 = ntd_.nodes[i].child_right;
    const auto& t1 = ctx_[c1].table;
    const auto& t2 = ctx_[c2].table;
    for (auto it1 = t1.begin(); it1 != t1.end(); ++it1) {
        int size = static_cast<int>(mask_positions(it1->first.h.vmask).size());
        Partition a1 = unpack_partition(it1->first.part, size);
        Rat length = 0;
        for (std::size_t e = 0; e < ctx_[i].bag_edges.size(); ++e)
            if (it1->first.h.emask & (1ull << e))
                length += inst_.graph.edge(std::get<2>(ctx_[i].bag_edges[e])).length;
        Rat shared_penalty = bag_penalty_outside(i, it1->first.h.vmask);
        for (auto it2 = t2.lower_bound(DpKey{it1->first.h, 0});
             it2 != t2.end() && it2->first.h == it1->first.h; ++it2) {
            Partition a2 = unpack_partition(it2->first.part, size);
            Partition joined = join_partitions(a1, a2);
            DpKey key{it1->first.h, pack_partition(joined)};
            // Both children price Length(H) and the unchosen bag vertices;
            // the overlap is exactly those two terms.
            Rat cost = it1->second.cost + it2->second.cost - length - shared_penalty;
            relax(i, key, cost, DpBack{DpBack::Join, it1->first, it2->first});
        }
    }
}

void PcstDp::solve_forget(int i) {
    int j = ntd_.nodes[i].child_left;
    int v = ntd_.nodes[i].vertex;
    const auto& cbag = ctx_[j].bag;
    int pv = static_cast<int>(
        std::lower_bound(cbag.begin(), cbag.end(), v) - cbag.begin());
    // Child edge -> parent edge index (or -1 for edges at v).
    std::vector<int> edge_map(ctx_[j].bag_edges.size(), -1);
    {
        std::map<std::pair<int, int>, int> parent_index;
        for (std::size_t e = 0; e < ctx_[i].bag_edges.size(); ++e)
            parent_index[{std::get<0>(ctx_[i].bag_edges[e]), std::get<1>(ctx_[i].bag_edges[e])}] =
                static_cast<int>(e);
        for (std::size_t e = 0; e < ctx_[j].bag_edges.size(); ++e) {
            int a = std::get<0>(ctx_[j].bag_edges[e]), b = std::get<1>(ctx_[j].bag_edges[e]);
            if (a == pv || b == pv) continue;
            int pa = a > pv ? a - 1 : a, pb = b > pv ? b - 1 : b;
            edge_map[e] = parent_index.at({pa, pb});
        }
    }
    Rat pi_v = ntd_.nodes[i].vertex == inst_.root ? Rat(0) : inst_.vertex_penalty[v];
    for (const auto& [ckey, centry] : ctx_[j].table) {
        bool v_in = ckey.h.vmask & (1u << pv);
        if (!v_in) {
            // The vertex leaves scope unused and pays its penalty now.
            std::uint32_t vmask = 0;
            for (int p = 0; p < 32; ++p)
                if (ckey.h.vmask & (1u << p)) vmask |= 1u << (p > pv ? p - 1 : p);
            std::uint64_t emask = 0;
            for (std::size_t e = 0; e < edge_map.size(); ++e)
                if ((ckey.h.emask & (1ull << e)) && edge_map[e] >= 0)
                    emask |= 1ull << edge_map[e];
            DpKey key{BagSubgraph{vmask, emask}, ckey.part};
            relax(i, key, centry.cost + pi_v, DpBack{DpBack::ForgetDrop, ckey, {}});
            continue;
        }
        // The vertex stays in the solution below; its component must already
        // touch the rest of the bag, otherwise it could never reach the root.
        std::vector<int> pos = mask_positions(ckey.h.vmask);
        int vidx = static_cast<int>(
            std::lower_bound(pos.begin(), pos.end(), pv) - pos.begin());
        Partition alpha = unpack_partition(ckey.part, static_cast<int>(pos.size()));
        bool singleton = true;
        for (std::size_t k = 0; k < pos.size(); ++k)
            if (static_cast<int>(k) != vidx && alpha[k] == alpha[vidx]) singleton = false;
        if (singleton) continue;
        std::uint32_t vmask = 0;
        for (int p = 0; p < 32; ++p)
            if ((ckey.h.vmask & (1u << p)) && p != pv) vmask |= 1u << (p > pv ? p - 1 : p);
        std::uint64_t emask = 0;
        bool ok = true;
        for (std::size_t e = 0; e < edge_map.size(); ++e) {
            if (!(ckey.h.emask & (1ull << e))) continue;
            if (edge_map[e] < 0) continue;  // edges at v vanish with v
            emask |= 1ull << edge_map[e];
        }
        if (!ok) continue;
        Partition reduced;
        for (std::size_t k = 0; k < pos.size(); ++k)
            if (static_cast<int>(k) != vidx) reduced.push_back(alpha[k]);
        DpKey key{BagSubgraph{vmask, emask}, pack_partition(canonical_partition(reduced))};
        relax(i, key, centry.cost, DpBack{DpBack::ForgetTake, ckey, {}});
    }
}

void PcstDp::solve_introduce(int i) {
    int j = ntd_.nodes[i].child_left;
    int v = ntd_.nodes[i].vertex;
    const auto& bag = ctx_[i].bag;
    int pv = static_cast<int>(std::lower_bound(bag.begin(), bag.end(), v) - bag.begin());
    // Child edge index -> parent edge index; parent edges at pv listed apart.
    std::vector<int> edge_map(ctx_[j].bag_edges.size(), -1);
    std::vector<std::size_t> v_edges;  // parent edge ids incident to pv
    {
        std::map<std::pair<int, int>, int> parent_index;
        for (std::size_t e = 0; e < ctx_[i].bag_edges.size(); ++e) {
            int a = std::get<0>(ctx_[i].bag_edges[e]), b = std::get<1>(ctx_[i].bag_edges[e]);
            parent_index[{a, b}] = static_cast<int>(e);
            if (a == pv || b == pv) v_edges.push_back(e);
        }
        for (std::size_t e = 0; e < ctx_[j].bag_edges.size(); ++e) {
            int a = std::get<0>(ctx_[j].bag_edges[e]), b = std::get<1>(ctx_[j].bag_edges[e]);
            int pa = a >= pv ? a + 1 : a, pb = b >= pv ? b + 1 : b;
            if (pa > pb) std::swap(pa, pb);
            edge_map[e] = parent_index.at({pa, pb});
        }
    }
    for (const auto& [ckey, centry] : ctx_[j].table) {
        // Remap the child subgraph into parent coordinates.
        std::uint32_t base_vmask = 0;
        for (int p = 0; p < 32; ++p)
            if (ckey.h.vmask & (1u << p)) base_vmask |= 1u << (p >= pv ? p + 1 : p);
        std::uint64_t base_emask = 0;
        for (std::size_t e = 0; e < edge_map.size(); ++e)
            if (ckey.h.emask & (1ull << e)) base_emask |= 1ull << edge_map[e];

        // Case 1: v stays out of the solution so far (it is a bag vertex at i,
        // so its penalty is settled when it is forgotten, not here).
        relax(i, DpKey{BagSubgraph{base_vmask, base_emask}, ckey.part},
              centry.cost, DpBack{DpBack::IntroSkip, ckey, {}});

        // Case 2: v enters with an edge set into distinct parts.
        std::vector<int> pos = mask_positions(ckey.h.vmask);
        Partition alpha = unpack_partition(ckey.part, static_cast<int>(pos.size()));
        // Candidate neighbors: parent edges at pv whose other end is chosen.
        std::vector<std::pair<int, std::size_t>> nbr;  // (child element index, parent edge)
        for (std::size_t e : v_edges) {
            int a = std::get<0>(ctx_[i].bag_edges[e]), b = std::get<1>(ctx_[i].bag_edges[e]);
            int other = a == pv ? b : a;
            int child_pos = other > pv ? other - 1 : other;
            if (!(ckey.h.vmask & (1u << child_pos))) continue;
            int idx = static_cast<int>(
                std::lower_bound(pos.begin(), pos.end(), child_pos) - pos.begin());
            nbr.emplace_back(idx, e);
        }
        for (std::uint32_t pick = 0; pick < (1u << nbr.size()); ++pick) {
            // At most one chosen neighbor per part of alpha.
            std::uint32_t parts_hit = 0;
            bool ok = true;
            Rat extra = 0;
            std::uint64_t emask = base_emask;
            for (std::size_t k = 0; k < nbr.size(); ++k) {
                if (!(pick & (1u << k))) continue;
                int part = alpha[nbr[k].first];
                if (parts_hit & (1u << part)) {
                    ok = false;
                    break;
                }
                parts_hit |= 1u << part;
                emask |= 1ull << nbr[k].second;
                extra += inst_.graph.edge(std::get<2>(ctx_[i].bag_edges[nbr[k].second])).length;
            }
            if (!ok) continue;
            // alpha'(v, S): merge the touched parts and absorb v.
            std::vector<int> new_pos = mask_positions(base_vmask | (1u << pv));
            Partition np(new_pos.size());
            int vslot = static_cast<int>(
                std::lower_bound(new_pos.begin(), new_pos.end(), pv) - new_pos.begin());
            int merged_id = 100;  // placeholder id, canonicalized below
            for (std::size_t k = 0, src = 0; k < new_pos.size(); ++k) {
                if (static_cast<int>(k) == vslot) {
                    np[k] = merged_id;
                    continue;
                }
                int a = alpha[src++];
                np[k] = (parts_hit & (1u << a)) ? merged_id : a;
            }
            DpKey key{BagSubgraph{base_vmask | (1u << pv), emask},
                      pack_partition(canonical_partition(np))};
            relax(i, key, centry.cost + extra, DpBack{DpBack::IntroTake, ckey, {}});
        }
    }
}

PcstDpResult PcstDp::solve() {
    for (std::size_t i = 0; i < ntd_.nodes.size(); ++i) {
        switch (ntd_.nodes[i].kind) {
            case NodeKind::Leaf: solve_leaf(static_cast<int>(i)); break;
            case NodeKind::Join: solve_join(static_cast<int>(i)); break;
            case NodeKind::Forget: solve_forget(static_cast<int>(i)); break;
            case NodeKind::Introduce: solve_introduce(static_cast<int>(i)); break;
        }
        stats_.total_entries += ctx_[i].table.size();
        stats_.max_node_entries = std::max(stats_.max_node_entries, ctx_[i].table.size());
    }
    stats_.nodes = static_cast<int>(ntd_.nodes.size());

    // Root: H contains the root vertex, alpha a single part; unchosen
    // top-level bag vertices still owe their penalties.
    int root = ntd_.root;
    const auto& bag = ctx_[root].bag;
    auto rit = std::lower_bound(bag.begin(), bag.end(), inst_.root);
    if (rit == bag.end() || *rit != inst_.root)
        throw ValidationError("root vertex missing from the root bag");
    int rpos = static_cast<int>(rit - bag.begin());
    bool found = false;
    Rat best;
    DpKey best_key;
    for (const auto& [key, entry] : ctx_[root].table) {
        if (!(key.h.vmask & (1u << rpos))) continue;
        int size = static_cast<int>(mask_positions(key.h.vmask).size());
        Partition alpha = unpack_partition(key.part, size);
        bool single = true;
        for (int p : alpha)
            if (p != 0) single = false;
        if (!single) continue;
        Rat total = entry.cost + bag_penalty_outside(root, key.h.vmask);
        if (!found || total < best) {
            found = true;
            best = total;
            best_key = key;
        }
    }
    if (!found) throw ValidationError("no feasible root entry");

    PcstDpResult out;
    out.cost = best;
    out.stats = stats_;
    collect_edges(root, best_key, out.tree_edges);
    std::sort(out.tree_edges.begin(), out.tree_edges.end());
    out.tree_edges.erase(std::unique(out.tree_edges.begin(), out.tree_edges.end()),
                         out.tree_edges.end());
    return out;
}

void PcstDp::collect_edges(int node, const DpKey& key, std::vector<int>& out) const {
    const DpEntry& entry = ctx_[node].table.at(key);
    switch (entry.back.kind) {
        case DpBack::Leaf: {
            for (std::size_t e = 0; e < ctx_[node].bag_edges.size(); ++e)
                if (key.h.emask & (1ull << e))
                    out.push_back(std::get<2>(ctx_[node].bag_edges[e]));
            break;
        }
        case DpBack::Join:
            collect_edges(ntd_.nodes[node].child_left, entry.back.child_a, out);
            collect_edges(ntd_.nodes[node].child_right, entry.back.child_b, out);
            break;
        case DpBack::ForgetDrop:
        case DpBack::ForgetTake:
            collect_edges(ntd_.nodes[node].child_left, entry.back.child_a, out);
            break;
        case DpBack::IntroSkip:
            collect_edges(ntd_.nodes[node].child_left, entry.back.child_a, out);
            break;
        case DpBack::IntroTake: {
            // Edges at the introduced vertex are the difference between this
            // subgraph and the child's.
            collect_edges(ntd_.nodes[node].child_left, entry.back.child_a, out);
            int v = ntd_.nodes[node].vertex;
            const auto& bag = ctx_[node].bag;
            int pv = static_cast<int>(
                std::lower_bound(bag.begin(), bag.end(), v) - bag.begin());
            for (std::size_t e = 0; e < ctx_[node].bag_edges.size(); ++e) {
                if (!(key.h.emask & (1ull << e))) continue;
                int a = std::get<0>(ctx_[node].bag_edges[e]), b = std::get<1>(ctx_[node].bag_edges[e]);
                if (a == pv || b == pv) out.push_back(std::get<2>(ctx_[node].bag_edges[e]));
            }
            break;
        }
        case DpBack::None:
            break;
    }
}

bool PcstDp::lookup(int node, const std::vector<int>& h_vertices,
                    const std::vector<int>& h_edges,
                    const std::vector<std::vector<int>>& parts, Rat* cost_out) const {
    const auto& bag = ctx_[node].bag;
    std::uint32_t vmask = 0;
    for (int v : h_vertices) {
        auto it = std::lower_bound(bag.begin(), bag.end(), v);
        if (it == bag.end() || *it != v) return false;
        vmask |= 1u << (it - bag.begin());
    }
    std::uint64_t emask = 0;
    for (int e : h_edges) {
        bool found = false;
        for (std::size_t k = 0; k < ctx_[node].bag_edges.size(); ++k)
            if (std::get<2>(ctx_[node].bag_edges[k]) == e) {
                emask |= 1ull << k;
                found = true;
            }
        if (!found) return false;
    }
    std::vector<int> pos = mask_positions(vmask);
    Partition alpha(pos.size(), -1);
    for (std::size_t part_id = 0; part_id < parts.size(); ++part_id)
        for (int v : parts[part_id]) {
            auto it = std::lower_bound(bag.begin(), bag.end(), v);
            int p = static_cast<int>(it - bag.begin());
            auto pit = std::lower_bound(pos.begin(), pos.end(), p);
            if (pit == pos.end() || *pit != p) return false;
            alpha[pit - pos.begin()] = static_cast<int>(part_id);
        }
    for (int a : alpha)
        if (a == -1) return false;
    DpKey key{BagSubgraph{vmask, emask}, pack_partition(canonical_partition(alpha))};
    auto it = ctx_[node].table.find(key);
    if (it == ctx_[node].table.end()) return false;
    if (cost_out) *cost_out = it->second.cost;
    return true;
}

std::string PcstDp::dump_tables(std::size_t max_entries_per_node) const {
    std::ostringstream os;
    for (std::size_t i = 0; i < ctx_.size(); ++i) {
        os << "node " << i << " kind ";
        switch (ntd_.nodes[i].kind) {
            case NodeKind::Leaf: os << "leaf"; break;
            case NodeKind::Join: os << "join"; break;
            case NodeKind::Introduce: os << "introduce " << ntd_.nodes[i].vertex; break;
            case NodeKind::Forget: os << "forget " << ntd_.nodes[i].vertex; break;
        }
        os << " bag [";
        for (int v : ctx_[i].bag) os << " " << v;
        os << " ] entries " << ctx_[i].table.size() << "\n";
        std::size_t count = 0;
        for (const auto& [key, entry] : ctx_[i].table) {
            if (++count > max_entries_per_node) {
                os << "  ...\n";
                break;
            }
            os << "  v=" << key.h.vmask << " e=" << key.h.emask << " part=" << key.part
               << " cost=" << rat_str(entry.cost) << "\n";
        }
    }
    return os.str();
}

PcstDpResult solve_pcst(const PcInstance& inst, const NiceTreeDecomposition& ntd) {
    PcstDp dp(inst, ntd);
    return dp.solve();
}

PcstDpResult solve_pcst(const PcInstance& inst) {
    TreeDecomposition td = heuristic_decomposition(inst.graph);
    NiceTreeDecomposition ntd = make_nice(td, inst.root);
    return solve_pcst(inst, ntd);
}

}  // namespace pcsf
