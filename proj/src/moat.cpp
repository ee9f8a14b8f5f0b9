#include "pcsf/moat.hpp"

#include <algorithm>

#include "pcsf/instance.hpp"

namespace pcsf {

MoatSimulator::MoatSimulator(const WeightedGraph& g, std::vector<Rat> initial_potentials)
    : g_(g), uf_(g.vertex_count()), now_(0) {
    int n = g_.vertex_count();
    depth_base_.assign(n, Rat(0));
    root_record_.assign(n, -1);
    records_.reserve(2 * n);
    for (int v = 0; v < n; ++v) {
        ComponentRecord rec;
        rec.id = v;
        rec.vertices = {v};
        rec.potential = initial_potentials[v];
        if (rec.potential < 0) throw ValidationError("negative initial potential");
        rec.uncharged = 0;
        rec.growth = 0;
        rec.formed_at = 0;
        if (rec.potential > 0) {
            rec.active = true;
        } else {
            rec.died = true;  // exhausted at birth
        }
        records_.push_back(std::move(rec));
        root_record_[v] = v;
    }
}

Rat MoatSimulator::depth(int v) const {
    return depth_base_[v] + records_[root_record_[uf_.find(v)]].growth;
}

std::vector<int> MoatSimulator::current_records() const {
    std::vector<int> out;
    for (int v = 0; v < g_.vertex_count(); ++v)
        if (uf_.find(v) == v) out.push_back(root_record_[v]);
    return out;
}

void MoatSimulator::advance(const Rat& delta, const Hooks& hooks) {
    if (delta > 0) {
        for (ComponentRecord& rec : records_) {
            if (!rec.active) continue;
            rec.growth += delta;
            rec.potential -= delta;
        }
        now_ += delta;
    }
    if (hooks.advanced) hooks.advanced(delta);
}

void MoatSimulator::handle_merge(int e, const Hooks& hooks) {
    int u = g_.edge(e).u, v = g_.edge(e).v;
    int a = root_record_[uf_.find(u)];
    int b = root_record_[uf_.find(v)];
    for (int x : records_[a].vertices) depth_base_[x] += records_[a].growth;
    for (int x : records_[b].vertices) depth_base_[x] += records_[b].growth;
    Rat pot = records_[a].potential + records_[b].potential;
    std::vector<int> verts;
    verts.reserve(records_[a].vertices.size() + records_[b].vertices.size());
    std::merge(records_[a].vertices.begin(), records_[a].vertices.end(),
               records_[b].vertices.begin(), records_[b].vertices.end(),
               std::back_inserter(verts));

    records_[a].active = false;
    records_[a].merged = true;
    records_[b].active = false;
    records_[b].merged = true;

    ComponentRecord rec;
    rec.id = static_cast<int>(records_.size());
    rec.vertices = std::move(verts);
    rec.potential = std::move(pot);
    rec.uncharged = 0;
    rec.growth = 0;
    rec.active = true;  // every component is active when formed
    rec.formed_at = now_;
    rec.child_left = a;
    rec.child_right = b;
    records_.push_back(std::move(rec));
    int id = records_.back().id;
    records_[a].parent = id;
    records_[b].parent = id;

    grown_.push_back(e);
    uf_.unite(u, v);
    root_record_[uf_.find(u)] = id;
    if (hooks.merged) hooks.merged(id, a, b, e);
    // A component formed with nothing left deactivates on the spot (the next
    // event fires at delta zero); hooks may also have spent the potential.
}

void MoatSimulator::handle_death(int id, const Hooks& hooks) {
    records_[id].active = false;
    records_[id].died = true;
    if (hooks.deactivated) hooks.deactivated(id);
}

void MoatSimulator::run(const Hooks& hooks) {
    for (;;) {
        int best_edge = -1;
        Rat best_edge_time;
        for (int e = 0; e < g_.edge_count(); ++e) {
            const Edge& ed = g_.edge(e);
            int ru = uf_.find(ed.u), rv = uf_.find(ed.v);
            if (ru == rv) continue;
            int rate = (records_[root_record_[ru]].active ? 1 : 0) +
                       (records_[root_record_[rv]].active ? 1 : 0);
            if (rate == 0) continue;
            Rat slack = ed.length - depth(ed.u) - depth(ed.v);
            if (slack < 0) throw ValidationError("internal: negative slack on a cross edge");
            Rat t_event = now_ + slack / rate;
            if (best_edge == -1 || t_event < best_edge_time) {
                best_edge = e;
                best_edge_time = t_event;
            }
        }
        int best_comp = -1;
        Rat best_comp_time;
        for (int v = 0; v < g_.vertex_count(); ++v) {
            if (uf_.find(v) != v) continue;
            int id = root_record_[v];
            if (!records_[id].active) continue;
            Rat t_event = now_ + records_[id].potential;
            if (best_comp == -1 || t_event < best_comp_time ||
                (t_event == best_comp_time && id < best_comp)) {
                best_comp = id;
                best_comp_time = t_event;
            }
        }
        if (best_edge == -1 && best_comp == -1) break;
        bool edge_event = best_edge != -1 && (best_comp == -1 || best_edge_time <= best_comp_time);
        if (edge_event) {
            advance(best_edge_time - now_, hooks);
            handle_merge(best_edge, hooks);
        } else {
            advance(best_comp_time - now_, hooks);
            handle_death(best_comp, hooks);
        }
        if (hooks.event_processed) hooks.event_processed();
    }
}

}  // namespace pcsf
