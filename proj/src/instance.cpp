#include "pcsf/instance.hpp"

#include <sstream>

namespace pcsf {

Rat PcInstance::penalty_sum() const {
    Rat sum = 0;
    if (kind == InstanceKind::Forest) {
        for (const auto& p : pairs) sum += p.penalty;
    } else {
        for (int v = 0; v < graph.vertex_count(); ++v)
            if (v != root) sum += vertex_penalty[v];
    }
    return sum;
}

void PcInstance::validate() const {
    graph.validate();
    if (kind == InstanceKind::Forest) {
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            const auto& p = pairs[i];
            if (p.s < 0 || p.s >= graph.vertex_count() || p.t < 0 || p.t >= graph.vertex_count()) {
                std::ostringstream os;
                os << "pair " << i << " has endpoint outside the graph";
                throw ValidationError(os.str());
            }
            if (p.s == p.t) {
                std::ostringstream os;
                os << "pair " << i << " has identical endpoints";
                throw ValidationError(os.str());
            }
            if (p.penalty < 0) {
                std::ostringstream os;
                os << "pair " << i << " has negative penalty " << rat_str(p.penalty);
                throw ValidationError(os.str());
            }
        }
    } else {
        if (root < 0 || root >= graph.vertex_count())
            throw ValidationError("root vertex outside the graph");
        if (static_cast<int>(vertex_penalty.size()) != graph.vertex_count())
            throw ValidationError("vertex penalty table size mismatch");
        for (int v = 0; v < graph.vertex_count(); ++v)
            if (vertex_penalty[v] < 0) {
                std::ostringstream os;
                os << "vertex " << v << " has negative penalty";
                throw ValidationError(os.str());
            }
    }
}

SolutionForest evaluate(const PcInstance& inst, const std::vector<int>& edge_ids) {
    SolutionForest out;
    out.edges = edge_ids;
    out.length = 0;
    UnionFind uf(inst.graph.vertex_count());
    for (int e : edge_ids) {
        if (e < 0 || e >= inst.graph.edge_count()) {
            std::ostringstream os;
            os << "edge id " << e << " out of range";
            throw ValidationError(os.str());
        }
        out.length += inst.graph.edge(e).length;
        uf.unite(inst.graph.edge(e).u, inst.graph.edge(e).v);
    }
    out.penalty = 0;
    if (inst.kind == InstanceKind::Forest) {
        for (const auto& p : inst.pairs)
            if (!uf.same(p.s, p.t)) out.penalty += p.penalty;
    } else {
        for (int v = 0; v < inst.graph.vertex_count(); ++v)
            if (v != inst.root && inst.vertex_penalty[v] > 0 && !uf.same(v, inst.root))
                out.penalty += inst.vertex_penalty[v];
    }
    out.cost = out.length + out.penalty;
    return out;
}

namespace {

// Adds pendant vertex attached to v by a zero-length edge, extending the
// rotation when present.
int add_pendant(PcInstance& inst, int v) {
    int w = inst.graph.add_vertex();
    int e = inst.graph.add_edge(v, w, Rat(0));
    if (inst.rotation) {
        inst.rotation->at(v).push_back(2 * e);
        inst.rotation->push_back({2 * e + 1});
    }
    if (inst.normalization) inst.normalization->copy_of.push_back(inst.normalization->copy_of[v]);
    return w;
}

}  // namespace

PcInstance normalize_terminals(const PcInstance& inst) {
    PcInstance out = inst;
    out.kind = InstanceKind::Forest;
    out.pairs.clear();
    out.root = -1;
    out.vertex_penalty.clear();

    Normalization norm;
    norm.from_tree = inst.kind == InstanceKind::Tree;
    norm.original_n = inst.graph.vertex_count();
    if (inst.normalization) {
        norm = *inst.normalization;  // keep the original mapping on re-normalization
    } else {
        norm.copy_of.resize(inst.graph.vertex_count());
        for (int v = 0; v < inst.graph.vertex_count(); ++v) norm.copy_of[v] = v;
    }
    out.normalization = norm;

    // occupied[v]: v already hosts a terminal occurrence.
    std::vector<char> occupied(out.graph.vertex_count(), 0);
    auto place = [&](int v) -> int {
        bool reusable = out.graph.incident(v).size() == 1 && !occupied[v] &&
                        out.graph.edge(out.graph.incident(v)[0]).length == 0;
        if (reusable) {
            occupied[v] = 1;
            return v;
        }
        int w = add_pendant(out, v);
        occupied.push_back(1);
        return w;
    };

    if (inst.kind == InstanceKind::Forest) {
        for (const auto& p : inst.pairs) {
            if (p.penalty == 0) continue;  // zero-penalty pairs die at time zero anyway
            TerminalPair q;
            q.s = place(p.s);
            q.t = place(p.t);
            q.penalty = p.penalty;
            out.pairs.push_back(q);
        }
    } else {
        out.normalization->pair_source_vertex.clear();
        for (int v = 0; v < inst.graph.vertex_count(); ++v) {
            if (v == inst.root || inst.vertex_penalty[v] == 0) continue;
            TerminalPair q;
            q.s = place(v);
            q.t = add_pendant(out, inst.root);  // distinct root pendant per pair
            occupied.push_back(1);
            q.penalty = inst.vertex_penalty[v];
            out.pairs.push_back(q);
            out.normalization->pair_source_vertex.push_back(v);
        }
    }
    out.normalized = true;
    return out;
}

}  // namespace pcsf
