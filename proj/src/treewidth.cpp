#include "pcsf/treewidth.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <sstream>

namespace pcsf {

int TreeDecomposition::width() const {
    int w = 0;
    for (const auto& bag : bags) w = std::max(w, static_cast<int>(bag.size()));
    return w - 1;
}

int NiceTreeDecomposition::width() const {
    int w = 0;
    for (const auto& node : nodes) w = std::max(w, static_cast<int>(node.bag.size()));
    return w - 1;
}

TreeDecomposition heuristic_decomposition(const WeightedGraph& g) {
    int n = g.vertex_count();
    TreeDecomposition td;
    td.n = n;
    if (n == 0) {
        td.bags.push_back({});
        return td;
    }
    std::vector<std::set<int>> adj(n);
    for (const Edge& e : g.edges())
        if (e.u != e.v) {
            adj[e.u].insert(e.v);
            adj[e.v].insert(e.u);
        }
    std::vector<char> gone(n, 0);
    std::vector<int> order;
    std::vector<std::vector<int>> elim_bag(n);
    for (int step = 0; step < n; ++step) {
        int best = -1;
        long best_fill = 0, best_deg = 0;
        for (int v = 0; v < n; ++v) {
            if (gone[v]) continue;
            long deg = static_cast<long>(adj[v].size());
            long fill = 0;
            for (auto itu = adj[v].begin(); itu != adj[v].end(); ++itu)
                for (auto itw = std::next(itu); itw != adj[v].end(); ++itw)
                    if (!adj[*itu].count(*itw)) ++fill;
            if (best == -1 || fill < best_fill || (fill == best_fill && deg < best_deg)) {
                best = v;
                best_fill = fill;
                best_deg = deg;
            }
        }
        order.push_back(best);
        elim_bag[best].assign(adj[best].begin(), adj[best].end());
        // Turn the neighborhood into a clique, then remove the vertex.
        for (int u : elim_bag[best])
            for (int w : elim_bag[best])
                if (u != w) adj[u].insert(w);
        for (int u : elim_bag[best]) adj[u].erase(best);
        adj[best].clear();
        gone[best] = 1;
    }
    std::vector<int> when(n);
    for (int i = 0; i < n; ++i) when[order[i]] = i;
    td.bags.resize(n);
    for (int i = 0; i < n; ++i) {
        int v = order[i];
        td.bags[i] = elim_bag[v];
        td.bags[i].push_back(v);
        std::sort(td.bags[i].begin(), td.bags[i].end());
    }
    // Parent of bag i: the bag of the earliest-eliminated later neighbor.
    for (int i = 0; i < n; ++i) {
        int v = order[i];
        int parent = -1;
        for (int u : elim_bag[v])
            if (when[u] > i && (parent == -1 || when[u] < when[parent])) parent = u;
        if (parent != -1) td.links.emplace_back(i, when[parent]);
    }
    // A disconnected graph leaves forest pieces; tie them together.
    {
        UnionFind uf(n);
        for (auto& [a, b] : td.links) uf.unite(a, b);
        for (int i = 1; i < n; ++i)
            if (uf.unite(0, i)) td.links.emplace_back(0, i);
    }
    return td;
}

DecompositionReport verify_decomposition(const WeightedGraph& g, const TreeDecomposition& td) {
    DecompositionReport rep;
    int n = g.vertex_count();
    int bags = static_cast<int>(td.bags.size());
    if (bags == 0) {
        rep.diagnostic = "no bags";
        return rep;
    }
    if (static_cast<int>(td.links.size()) != bags - 1) {
        rep.diagnostic = "links do not form a tree (wrong count)";
        return rep;
    }
    UnionFind uf(bags);
    for (auto& [a, b] : td.links)
        if (a < 0 || a >= bags || b < 0 || b >= bags || !uf.unite(a, b)) {
            rep.diagnostic = "links do not form a tree";
            return rep;
        }
    std::vector<char> seen(n, 0);
    for (const auto& bag : td.bags)
        for (int v : bag) {
            if (v < 0 || v >= n) {
                rep.diagnostic = "bag lists an unknown vertex";
                return rep;
            }
            seen[v] = 1;
        }
    for (int v = 0; v < n; ++v)
        if (!seen[v]) {
            std::ostringstream os;
            os << "vertex " << v << " not covered by any bag";
            rep.diagnostic = os.str();
            return rep;
        }
    for (int e = 0; e < g.edge_count(); ++e) {
        bool ok = false;
        for (const auto& bag : td.bags)
            if (std::binary_search(bag.begin(), bag.end(), g.edge(e).u) &&
                std::binary_search(bag.begin(), bag.end(), g.edge(e).v)) {
                ok = true;
                break;
            }
        if (!ok) {
            std::ostringstream os;
            os << "edge " << e << " (" << g.edge(e).u << "," << g.edge(e).v
               << ") not inside any bag";
            rep.diagnostic = os.str();
            return rep;
        }
    }
    std::vector<std::vector<int>> nbr(bags);
    for (auto& [a, b] : td.links) {
        nbr[a].push_back(b);
        nbr[b].push_back(a);
    }
    for (int v = 0; v < n; ++v) {
        int start = -1, count = 0;
        for (int i = 0; i < bags; ++i)
            if (std::binary_search(td.bags[i].begin(), td.bags[i].end(), v)) {
                ++count;
                if (start == -1) start = i;
            }
        std::vector<char> vis(bags, 0);
        std::queue<int> q;
        q.push(start);
        vis[start] = 1;
        int reached = 1;
        while (!q.empty()) {
            int cur = q.front();
            q.pop();
            for (int nx : nbr[cur]) {
                if (vis[nx]) continue;
                if (!std::binary_search(td.bags[nx].begin(), td.bags[nx].end(), v)) continue;
                vis[nx] = 1;
                ++reached;
                q.push(nx);
            }
        }
        if (reached != count) {
            std::ostringstream os;
            os << "bags containing vertex " << v << " are disconnected";
            rep.diagnostic = os.str();
            return rep;
        }
    }
    rep.valid = true;
    rep.width = td.width();
    return rep;
}

namespace {

struct NiceBuilder {
    std::vector<NiceNode> nodes;

    int add(NodeKind kind, std::vector<int> bag, int cl, int cr, int vertex) {
        NiceNode node;
        node.kind = kind;
        node.bag = std::move(bag);
        node.child_left = cl;
        node.child_right = cr;
        node.vertex = vertex;
        nodes.push_back(std::move(node));
        return static_cast<int>(nodes.size()) - 1;
    }

    // Chain of forgets then introduces transforming `from` into `to`.
    int morph(int id, const std::vector<int>& from, const std::vector<int>& to) {
        std::vector<int> cur = from;
        for (int v : from) {
            if (std::binary_search(to.begin(), to.end(), v)) continue;
            std::vector<int> next;
            for (int u : cur)
                if (u != v) next.push_back(u);
            id = add(NodeKind::Forget, next, id, -1, v);
            cur = std::move(next);
        }
        for (int v : to) {
            if (std::binary_search(from.begin(), from.end(), v)) continue;
            std::vector<int> next = cur;
            next.insert(std::lower_bound(next.begin(), next.end(), v), v);
            id = add(NodeKind::Introduce, next, id, -1, v);
            cur = std::move(next);
        }
        return id;
    }

    int grow_leaf(const std::vector<int>& bag) {
        int id = add(NodeKind::Leaf, {}, -1, -1, -1);
        return morph(id, {}, bag);
    }
};

}  // namespace

NiceTreeDecomposition make_nice(const TreeDecomposition& td, int root_vertex) {
    int bags = static_cast<int>(td.bags.size());
    int root_bag = -1;
    for (int i = 0; i < bags; ++i)
        if (std::binary_search(td.bags[i].begin(), td.bags[i].end(), root_vertex)) {
            root_bag = i;
            break;
        }
    if (root_bag == -1) throw ValidationError("root vertex appears in no bag");

    std::vector<std::vector<int>> nbr(bags);
    for (auto& [a, b] : td.links) {
        nbr[a].push_back(b);
        nbr[b].push_back(a);
    }
    for (auto& list : nbr) std::sort(list.begin(), list.end());

    NiceBuilder nb;
    std::vector<int> parent(bags, -2);
    std::vector<int> order;
    {
        std::vector<int> stack{root_bag};
        parent[root_bag] = -1;
        while (!stack.empty()) {
            int cur = stack.back();
            stack.pop_back();
            order.push_back(cur);
            for (int nx : nbr[cur])
                if (parent[nx] == -2) {
                    parent[nx] = cur;
                    stack.push_back(nx);
                }
        }
    }
    std::reverse(order.begin(), order.end());  // children before parents
    std::vector<int> built(bags, -1);
    for (int bag_id : order) {
        std::vector<int> kids;
        for (int nx : nbr[bag_id])
            if (nx != parent[bag_id]) kids.push_back(nx);
        if (kids.empty()) {
            built[bag_id] = nb.grow_leaf(td.bags[bag_id]);
            continue;
        }
        std::vector<int> tops;
        for (int kid : kids) tops.push_back(nb.morph(built[kid], td.bags[kid], td.bags[bag_id]));
        int acc = tops[0];
        for (std::size_t i = 1; i < tops.size(); ++i)
            acc = nb.add(NodeKind::Join, td.bags[bag_id], acc, tops[i], -1);
        built[bag_id] = acc;
    }

    NiceTreeDecomposition out;
    out.nodes = std::move(nb.nodes);
    out.root = built[root_bag];
    out.n = td.n;
    return out;
}

DecompositionReport verify_nice(const WeightedGraph& g, const NiceTreeDecomposition& ntd) {
    DecompositionReport rep;
    for (std::size_t i = 0; i < ntd.nodes.size(); ++i) {
        const NiceNode& node = ntd.nodes[i];
        auto bag_of = [&](int id) { return ntd.nodes[id].bag; };
        switch (node.kind) {
            case NodeKind::Leaf:
                if (node.child_left != -1 || node.child_right != -1) {
                    rep.diagnostic = "leaf with children";
                    return rep;
                }
                break;
            case NodeKind::Join:
                if (node.child_left == -1 || node.child_right == -1 ||
                    bag_of(node.child_left) != node.bag ||
                    bag_of(node.child_right) != node.bag) {
                    rep.diagnostic = "join children bags differ";
                    return rep;
                }
                break;
            case NodeKind::Introduce: {
                if (node.child_left == -1 || node.child_right != -1) {
                    rep.diagnostic = "introduce needs one child";
                    return rep;
                }
                std::vector<int> expect = bag_of(node.child_left);
                expect.insert(std::lower_bound(expect.begin(), expect.end(), node.vertex),
                              node.vertex);
                if (expect != node.bag) {
                    rep.diagnostic = "introduce bag mismatch";
                    return rep;
                }
                break;
            }
            case NodeKind::Forget: {
                if (node.child_left == -1 || node.child_right != -1) {
                    rep.diagnostic = "forget needs one child";
                    return rep;
                }
                std::vector<int> expect;
                for (int v : bag_of(node.child_left))
                    if (v != node.vertex) expect.push_back(v);
                if (expect != node.bag || expect.size() + 1 != bag_of(node.child_left).size()) {
                    rep.diagnostic = "forget bag mismatch";
                    return rep;
                }
                break;
            }
        }
    }
    TreeDecomposition td;
    td.n = ntd.n;
    for (const NiceNode& node : ntd.nodes) td.bags.push_back(node.bag);
    for (std::size_t i = 0; i < ntd.nodes.size(); ++i) {
        if (ntd.nodes[i].child_left != -1)
            td.links.emplace_back(static_cast<int>(i), ntd.nodes[i].child_left);
        if (ntd.nodes[i].child_right != -1)
            td.links.emplace_back(static_cast<int>(i), ntd.nodes[i].child_right);
    }
    DecompositionReport base = verify_decomposition(g, td);
    if (!base.valid) return base;
    rep.valid = true;
    rep.width = ntd.width();
    return rep;
}

int exact_treewidth(const WeightedGraph& g, int vertex_cap) {
    int n = g.vertex_count();
    if (n > vertex_cap) throw ValidationError("exact treewidth capped for test graphs");
    if (n == 0) return -1;
    std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
    for (const Edge& e : g.edges())
        if (e.u != e.v) adj[e.u][e.v] = adj[e.v][e.u] = 1;
    int full = 1 << n;
    // dp[S]: best width eliminating the vertices of S first. Eliminating v
    // connects it to every live vertex reachable through eliminated ones.
    auto reach_degree = [&](int v, int eliminated) {
        std::vector<char> vis(n, 0);
        std::vector<int> stack{v};
        vis[v] = 1;
        int deg = 0;
        while (!stack.empty()) {
            int cur = stack.back();
            stack.pop_back();
            for (int w = 0; w < n; ++w) {
                if (!adj[cur][w] || vis[w]) continue;
                vis[w] = 1;
                if (eliminated & (1 << w)) {
                    stack.push_back(w);
                } else if (w != v) {
                    ++deg;
                }
            }
        }
        return deg;
    };
    std::vector<int> dp(full, n);
    dp[0] = -1;
    for (int s = 1; s < full; ++s) {
        int best = n;
        for (int v = 0; v < n; ++v) {
            if (!(s & (1 << v))) continue;
            int prev = s ^ (1 << v);
            if (dp[prev] >= best) continue;
            int cand = std::max(dp[prev], reach_degree(v, prev));
            best = std::min(best, cand);
        }
        dp[s] = best;
    }
    return dp[full - 1];
}

EdgePartition partition_edges(const WeightedGraph& h, int k) {
    if (k < 2) throw ValidationError("partition_edges needs k >= 2");
    EdgePartition out;
    out.k = k;
    out.classes.assign(k, {});
    out.class_length.assign(k, Rat(0));
    int n = h.vertex_count();
    std::vector<int> level(n, -1);
    for (int s = 0; s < n; ++s) {
        if (level[s] != -1) continue;
        std::queue<int> q;
        q.push(s);
        level[s] = 0;
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int e : h.incident(u)) {
                int w = h.edge(e).other(u);
                if (w != u && level[w] == -1) {
                    level[w] = level[u] + 1;
                    q.push(w);
                }
            }
        }
    }
    for (int e = 0; e < h.edge_count(); ++e) {
        int cls = std::min(level[h.edge(e).u], level[h.edge(e).v]) % k;
        out.classes[cls].push_back(e);
        out.class_length[cls] += h.edge(e).length;
    }
    out.selected = 0;
    for (int c = 1; c < k; ++c)
        if (out.class_length[c] < out.class_length[out.selected]) out.selected = c;
    return out;
}

ContractionResult contract_edges(const PcInstance& inst, const std::vector<int>& edges) {
    const WeightedGraph& g = inst.graph;
    ContractionResult out;
    out.contracted_edges = edges;
    UnionFind uf(g.vertex_count());
    for (int e : edges) uf.unite(g.edge(e).u, g.edge(e).v);

    out.vertex_map.assign(g.vertex_count(), -1);
    int qn = 0;
    for (int v = 0; v < g.vertex_count(); ++v)
        if (uf.find(v) == v) out.vertex_map[v] = qn++;
    for (int v = 0; v < g.vertex_count(); ++v) out.vertex_map[v] = out.vertex_map[uf.find(v)];

    out.instance.kind = inst.kind;
    out.instance.normalized = false;
    out.instance.graph = WeightedGraph(qn);
    out.edge_map.assign(g.edge_count(), -1);
    std::map<std::pair<int, int>, int> best;
    for (int e = 0; e < g.edge_count(); ++e) {
        int qu = out.vertex_map[g.edge(e).u];
        int qv = out.vertex_map[g.edge(e).v];
        if (qu == qv) continue;
        auto key = std::minmax(qu, qv);
        auto it = best.find(key);
        if (it == best.end()) {
            int id = out.instance.graph.add_edge(qu, qv, g.edge(e).length);
            best.emplace(key, id);
            out.quotient_edge_source.push_back(e);
            out.edge_map[e] = id;
        } else {
            if (g.edge(e).length < out.instance.graph.edge(it->second).length) {
                out.instance.graph.set_edge_length(it->second, g.edge(e).length);
                out.quotient_edge_source[it->second] = e;
            }
            out.edge_map[e] = it->second;
        }
    }

    if (inst.kind == InstanceKind::Forest) {
        for (std::size_t i = 0; i < inst.pairs.size(); ++i) {
            const TerminalPair& p = inst.pairs[i];
            int qs = out.vertex_map[p.s], qt = out.vertex_map[p.t];
            if (qs == qt) {
                out.auto_connected_pairs.push_back(static_cast<int>(i));
                continue;  // connected for free by the contracted edges
            }
            out.instance.pairs.push_back(TerminalPair{qs, qt, p.penalty});
        }
    } else {
        out.instance.root = out.vertex_map[inst.root];
        out.instance.vertex_penalty.assign(qn, Rat(0));
        for (int v = 0; v < g.vertex_count(); ++v)
            if (v != inst.root) out.instance.vertex_penalty[out.vertex_map[v]] += inst.vertex_penalty[v];
        out.instance.vertex_penalty[out.instance.root] = 0;
    }
    return out;
}

std::vector<int> ContractionResult::lift(const std::vector<int>& quotient_edges) const {
    std::vector<int> out;
    for (int qe : quotient_edges) out.push_back(quotient_edge_source[qe]);
    out.insert(out.end(), contracted_edges.begin(), contracted_edges.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::string td_to_string(const TreeDecomposition& td) {
    std::ostringstream os;
    os << "s td " << td.bags.size() << " " << td.width() + 1 << " " << td.n << "\n";
    for (std::size_t i = 0; i < td.bags.size(); ++i) {
        os << "b " << i + 1;
        for (int v : td.bags[i]) os << " " << v + 1;
        os << "\n";
    }
    for (auto& [a, b] : td.links) os << a + 1 << " " << b + 1 << "\n";
    return os.str();
}

TreeDecomposition td_from_string(const std::string& text) {
    TreeDecomposition td;
    std::istringstream in(text);
    std::string line;
    int declared_bags = -1;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string head;
        if (!(ls >> head) || head == "c") continue;
        if (head == "s") {
            std::string kind;
            int bags = 0, wplus = 0, n = 0;
            if (!(ls >> kind >> bags >> wplus >> n) || kind != "td") {
                std::ostringstream os;
                os << "td line " << lineno << ": bad s-line";
                throw ParseError(os.str());
            }
            declared_bags = bags;
            td.n = n;
            td.bags.assign(bags, {});
        } else if (head == "b") {
            int id = 0;
            if (!(ls >> id) || id < 1 || id > declared_bags) {
                std::ostringstream os;
                os << "td line " << lineno << ": bad bag id";
                throw ParseError(os.str());
            }
            int v;
            while (ls >> v) td.bags[id - 1].push_back(v - 1);
            std::sort(td.bags[id - 1].begin(), td.bags[id - 1].end());
        } else {
            int a = 0, b = 0;
            try {
                a = std::stoi(head);
            } catch (...) {
                std::ostringstream os;
                os << "td line " << lineno << ": unknown line";
                throw ParseError(os.str());
            }
            if (!(ls >> b)) {
                std::ostringstream os;
                os << "td line " << lineno << ": bad edge line";
                throw ParseError(os.str());
            }
            td.links.emplace_back(a - 1, b - 1);
        }
    }
    if (declared_bags < 0) throw ParseError("td: missing s-line");
    return td;
}

}  // namespace pcsf
