#include "pcsf/clustering.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "json.hpp"

namespace pcsf {

ContractedGraph contract_forest(const WeightedGraph& g, const std::vector<int>& forest_edges,
                                const Rat& epsilon) {
    if (epsilon <= 0) throw ValidationError("epsilon must be positive");
    UnionFind uf(g.vertex_count());
    for (int e : forest_edges)
        if (!uf.unite(g.edge(e).u, g.edge(e).v))
            throw ValidationError("contract_forest: edge set contains a cycle");

    // Components with at least one forest edge become supervertices.
    std::vector<char> has_edge(g.vertex_count(), 0);
    for (int e : forest_edges) has_edge[uf.find(g.edge(e).u)] = 1;

    ContractedGraph out;
    out.vertex_map.assign(g.vertex_count(), -1);
    for (int v = 0; v < g.vertex_count(); ++v) {
        int r = uf.find(v);
        int owner = has_edge[r] ? r : v;  // plain vertices stay their own class
        if (out.vertex_map[owner] == -1) {
            out.vertex_map[owner] = out.graph.add_vertex();
            out.preimage.emplace_back();
            out.potential.emplace_back(0);
            out.is_supervertex.push_back(has_edge[r]);
            out.tree_edges.emplace_back();
        }
        out.vertex_map[v] = out.vertex_map[owner];
        out.preimage[out.vertex_map[v]].push_back(v);
    }
    for (int e : forest_edges) {
        int q = out.vertex_map[g.edge(e).u];
        out.tree_edges[q].push_back(e);
        out.potential[q] += g.edge(e).length / epsilon;
    }

    // Quotient edges, parallel runs collapsed to the minimum length.
    std::map<std::pair<int, int>, int> best;
    for (int e = 0; e < g.edge_count(); ++e) {
        int qu = out.vertex_map[g.edge(e).u];
        int qv = out.vertex_map[g.edge(e).v];
        if (qu == qv) continue;  // self-loops are discarded
        auto key = std::minmax(qu, qv);
        auto it = best.find(key);
        if (it == best.end()) {
            int id = out.graph.add_edge(qu, qv, g.edge(e).length);
            best.emplace(key, id);
            out.edge_source.push_back(e);
        } else if (g.edge(e).length < out.graph.edge(it->second).length) {
            out.graph.set_edge_length(it->second, g.edge(e).length);
            out.edge_source[it->second] = e;
        }
    }
    return out;
}

ClusterRun run_clustering(const ContractedGraph& cg) {
    ClusterRun out;
    MoatSimulator sim(cg.graph, cg.potential);
    std::vector<Rat> remaining = cg.potential;  // per-vertex budget
    std::map<std::pair<int, int>, Rat> dual;    // (vertex, component) -> y

    MoatSimulator::Hooks hooks;
    hooks.advanced = [&](const Rat& delta) {
        if (delta == 0) return;
        // Growth of an active component is paid by its members, lowest
        // quotient id first; members of an active component always retain
        // enough budget in total.
        for (ComponentRecord& rec : sim.records()) {
            if (!rec.active) continue;
            Rat left = delta;
            for (int v : rec.vertices) {
                if (left == 0) break;
                if (remaining[v] == 0) continue;
                Rat take = remaining[v] <= left ? remaining[v] : left;
                remaining[v] -= take;
                left -= take;
                dual[{v, rec.id}] += take;
            }
            if (left != 0)
                throw ValidationError("internal: clustering growth exceeds member budgets");
        }
    };
    sim.run(hooks);

    out.f1 = sim.grown_edges();
    out.records = sim.records();
    for (const auto& [key, y] : dual)
        if (y > 0) out.dual.emplace_back(key.first, key.second, y);
    return out;
}

std::vector<int> prune(const ContractedGraph& cg, const ClusterRun& run) {
    std::vector<int> f2 = run.f1;
    auto crosses = [&](const ComponentRecord& rec, int e) {
        bool in_u = std::binary_search(rec.vertices.begin(), rec.vertices.end(),
                                       cg.graph.edge(e).u);
        bool in_v = std::binary_search(rec.vertices.begin(), rec.vertices.end(),
                                       cg.graph.edge(e).v);
        return in_u != in_v;
    };
    bool changed = true;
    while (changed) {
        changed = false;
        for (const ComponentRecord& rec : run.records) {
            if (!rec.died) continue;
            int hit = -1, count = 0;
            for (std::size_t j = 0; j < f2.size() && count < 2; ++j)
                if (crosses(rec, f2[j])) {
                    hit = static_cast<int>(j);
                    ++count;
                }
            if (count == 1) {
                f2.erase(f2.begin() + hit);
                changed = true;
                break;  // restart: removal can expose another unique crossing
            }
        }
    }
    return f2;
}

std::vector<int> exhausted_vertices(const std::vector<int>& h_edges, const ContractedGraph& cg,
                                    const ClusterRun& run) {
    std::vector<std::vector<int>> positive(cg.graph.vertex_count());
    for (const auto& [v, comp, y] : run.dual)
        if (y > 0) positive[v].push_back(comp);
    std::vector<int> out;
    for (int v = 0; v < cg.graph.vertex_count(); ++v) {
        bool exhausted = true;
        for (int comp : positive[v]) {
            const ComponentRecord& rec = run.records[comp];
            bool hit = false;
            for (int e : h_edges) {
                bool in_u = std::binary_search(rec.vertices.begin(), rec.vertices.end(),
                                               cg.graph.edge(e).u);
                bool in_v = std::binary_search(rec.vertices.begin(), rec.vertices.end(),
                                               cg.graph.edge(e).v);
                if (in_u != in_v) {
                    hit = true;
                    break;
                }
            }
            if (!hit) {
                exhausted = false;
                break;
            }
        }
        if (exhausted) out.push_back(v);
    }
    return out;
}

SplitResult split_instances(const PcInstance& inst, const ContractedGraph& cg,
                            const std::vector<int>& f2) {
    SplitResult out;
    UnionFind uf(cg.graph.vertex_count());
    for (int e : f2) uf.unite(cg.graph.edge(e).u, cg.graph.edge(e).v);

    // Pair ownership by F2 tree.
    std::map<int, std::vector<int>> owned;  // tree root -> pair ids
    for (std::size_t i = 0; i < inst.pairs.size(); ++i) {
        int qs = cg.vertex_map[inst.pairs[i].s];
        int qt = cg.vertex_map[inst.pairs[i].t];
        if (uf.find(qs) == uf.find(qt)) {
            owned[uf.find(qs)].push_back(static_cast<int>(i));
        } else {
            out.cross_tree_pairs.push_back(static_cast<int>(i));
        }
    }

    for (const auto& [root, pair_ids] : owned) {
        SplitPart part;
        part.pair_ids = pair_ids;
        part.instance = inst;
        part.instance.pairs.clear();
        for (int i : pair_ids) part.instance.pairs.push_back(inst.pairs[i]);

        for (int q = 0; q < cg.graph.vertex_count(); ++q) {
            if (uf.find(q) != root) continue;
            for (int v : cg.preimage[q]) part.tree_vertices_in_g.push_back(v);
            for (int e : cg.tree_edges[q]) part.tree_edges_in_g.push_back(e);
        }
        for (int e : f2)
            if (uf.find(cg.graph.edge(e).u) == root)
                part.tree_edges_in_g.push_back(cg.edge_source[e]);
        std::sort(part.tree_vertices_in_g.begin(), part.tree_vertices_in_g.end());
        std::sort(part.tree_edges_in_g.begin(), part.tree_edges_in_g.end());
        out.parts.push_back(std::move(part));
    }
    return out;
}

std::string cluster_json(const ContractedGraph& cg, const ClusterRun& run,
                         const std::vector<int>& f2) {
    nlohmann::ordered_json j;
    j["supervertices"] = nlohmann::ordered_json::array();
    for (int q = 0; q < cg.graph.vertex_count(); ++q)
        if (cg.is_supervertex[q])
            j["supervertices"].push_back(
                {{"id", q}, {"phi", rat_str(cg.potential[q])}, {"vertices", cg.preimage[q]}});
    j["f1"] = run.f1;
    j["f2"] = f2;
    j["dual"] = nlohmann::ordered_json::array();
    for (const auto& [v, comp, y] : run.dual) j["dual"].push_back({v, comp, rat_str(y)});
    return j.dump(2) + "\n";
}

}  // namespace pcsf
