#include "pcsf/primal_dual.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "json.hpp"

namespace pcsf {

Rat DualAssignment::value() const {
    Rat sum = 0;
    for (const auto& [i, s, y] : entries) sum += y;
    return sum;
}

namespace {

struct PdDriver {
    const PcInstance& inst;
    const PdOptions& opts;
    std::vector<int> terminal_at;  // vertex -> terminal index or -1; filled before sim
    MoatSimulator sim;
    PdRun out;

    std::vector<char> pair_united;
    std::map<std::pair<int, int>, Rat> dual_entries;  // (pair, comp) -> y

    static std::vector<Rat> initial_potentials(const PcInstance& instance,
                                               std::vector<int>& terminal_at) {
        int n = instance.graph.vertex_count();
        terminal_at.assign(n, -1);
        std::vector<Rat> pot(n, Rat(0));
        for (std::size_t i = 0; i < instance.pairs.size(); ++i) {
            const TerminalPair& p = instance.pairs[i];
            for (int side = 0; side < 2; ++side) {
                int v = side == 0 ? p.s : p.t;
                if (terminal_at[v] != -1)
                    throw ValidationError("instance not normalized: vertex hosts two terminals");
                terminal_at[v] = 2 * static_cast<int>(i) + side;
                pot[v] = p.penalty / 2;
            }
        }
        return pot;
    }

    explicit PdDriver(const PcInstance& instance, const PdOptions& options)
        : inst(instance),
          opts(options),
          sim(instance.graph, initial_potentials(instance, terminal_at)) {
        pair_united.assign(inst.pairs.size(), 0);
        out.pair_satisfied.assign(inst.pairs.size(), 0);
        out.terminals.resize(2 * inst.pairs.size());
        for (std::size_t i = 0; i < inst.pairs.size(); ++i)
            for (int side = 0; side < 2; ++side) {
                int t = 2 * static_cast<int>(i) + side;
                int v = side == 0 ? inst.pairs[i].s : inst.pairs[i].t;
                out.terminals[t].vertex = v;
                out.terminals[t].pair_index = static_cast<int>(i);
                out.terminals[t].history.push_back(v);  // singleton record id == vertex id
            }
    }

    // Walks History(x) in formation order moving uncharged growth into
    // y_{i,S}; returns the unspent part of pi_i/2.
    Rat process_history(int t) {
        TerminalState& ts = out.terminals[t];
        ts.processed = true;
        Rat remaining = inst.pairs[ts.pair_index].penalty / 2;
        for (int id : ts.history) {
            ComponentRecord& rec = sim.records()[id];
            if (rec.uncharged == 0) continue;
            Rat take = rec.uncharged <= remaining ? rec.uncharged : remaining;
            if (take > 0) {
                rec.uncharged -= take;
                remaining -= take;
                dual_entries[{ts.pair_index, id}] += take;
            }
            if (remaining == 0) break;
        }
        ts.remaining_charge = remaining;
        return remaining;
    }

    void on_advance(const Rat& delta) {
        if (delta == 0) return;
        for (ComponentRecord& rec : sim.records())
            if (rec.active) rec.uncharged += delta;
    }

    void on_merge(int id, int /*a*/, int /*b*/, int e) {
        out.log.push_back(PdEvent{PdEvent::Merge, sim.now(), e, id, -1, -1});
        ComponentRecord& rec = sim.records()[id];
        for (int x : rec.vertices) {
            int t = terminal_at[x];
            if (t != -1 && out.terminals[t].status == TerminalStatus::Alive)
                out.terminals[t].history.push_back(id);
        }
        for (std::size_t i = 0; i < inst.pairs.size(); ++i) {
            if (pair_united[i]) continue;
            if (sim.find(inst.pairs[i].s) != sim.find(inst.pairs[i].t)) continue;
            pair_united[i] = 1;
            TerminalState& s = out.terminals[2 * i];
            TerminalState& t = out.terminals[2 * i + 1];
            bool s_alive = s.status == TerminalStatus::Alive;
            bool t_alive = t.status == TerminalStatus::Alive;
            if (s_alive)
                sim.records()[id].potential -= process_history(2 * static_cast<int>(i));
            if (t_alive)
                sim.records()[id].potential -= process_history(2 * static_cast<int>(i) + 1);
            if (s_alive && t_alive) {
                s.status = TerminalStatus::Satisfied;
                t.status = TerminalStatus::Satisfied;
                out.pair_satisfied[i] = 1;
                out.log.push_back(PdEvent{PdEvent::Satisfy, sim.now(), -1, id,
                                          static_cast<int>(i), -1});
            } else {
                if (s_alive) {
                    s.status = TerminalStatus::Dead;
                    s.death_by_exhaustion = false;
                    out.log.push_back(PdEvent{PdEvent::Die, sim.now(), -1, id,
                                              static_cast<int>(i), 2 * static_cast<int>(i)});
                }
                if (t_alive) {
                    t.status = TerminalStatus::Dead;
                    t.death_by_exhaustion = false;
                    out.log.push_back(PdEvent{PdEvent::Die, sim.now(), -1, id,
                                              static_cast<int>(i), 2 * static_cast<int>(i) + 1});
                }
            }
        }
        if (sim.records()[id].potential < 0)
            throw ValidationError("internal: merged component potential went negative");
    }

    void on_death(int id) {
        out.log.push_back(PdEvent{PdEvent::Deactivate, sim.now(), -1, id, -1, -1});
        for (int x : sim.records()[id].vertices) {
            int t = terminal_at[x];
            if (t == -1 || out.terminals[t].status != TerminalStatus::Alive) continue;
            out.terminals[t].status = TerminalStatus::Dead;
            out.terminals[t].death_by_exhaustion = true;
            out.log.push_back(
                PdEvent{PdEvent::Die, sim.now(), -1, id, out.terminals[t].pair_index, t});
            process_history(t);
        }
    }

    // Moat conservation over live components: remaining potential plus the
    // uncharged growth nested below equals the alive endpoints' half-penalties.
    void check_conservation() {
        for (int id : sim.current_records()) {
            Rat lhs = sim.records()[id].potential;
            std::vector<int> stack{id};
            while (!stack.empty()) {
                int cur = stack.back();
                stack.pop_back();
                lhs += sim.records()[cur].uncharged;
                if (sim.records()[cur].child_left != -1)
                    stack.push_back(sim.records()[cur].child_left);
                if (sim.records()[cur].child_right != -1)
                    stack.push_back(sim.records()[cur].child_right);
            }
            Rat rhs = 0;
            for (int x : sim.records()[id].vertices) {
                int t = terminal_at[x];
                if (t != -1 && out.terminals[t].status == TerminalStatus::Alive)
                    rhs += inst.pairs[out.terminals[t].pair_index].penalty / 2;
            }
            if (lhs != rhs) {
                out.conservation_ok = false;
                std::ostringstream os;
                os << "moat conservation fails at t=" << rat_str(sim.now()) << " component "
                   << id << ": " << rat_str(lhs) << " != " << rat_str(rhs);
                out.conservation_note = os.str();
            }
        }
    }

    void run() {
        MoatSimulator::Hooks hooks;
        hooks.advanced = [this](const Rat& d) { on_advance(d); };
        hooks.merged = [this](int id, int a, int b, int e) { on_merge(id, a, b, e); };
        hooks.deactivated = [this](int id) { on_death(id); };
        if (opts.audit_conservation)
            hooks.event_processed = [this] { check_conservation(); };
        sim.run(hooks);

        out.grown_edges = sim.grown_edges();
        std::vector<std::pair<int, int>> satisfied;
        for (std::size_t i = 0; i < inst.pairs.size(); ++i)
            if (out.pair_satisfied[i]) satisfied.emplace_back(inst.pairs[i].s, inst.pairs[i].t);
        std::vector<int> kept = deletion_phase(inst.graph, out.grown_edges, satisfied);
        out.forest = evaluate(inst, kept);

        out.records = sim.records();
        out.dual.pair_count = static_cast<int>(inst.pairs.size());
        for (const ComponentRecord& rec : out.records) {
            out.dual.component_growth.push_back(rec.growth);
            out.dual.component_vertices.push_back(rec.vertices);
        }
        for (const auto& [key, y] : dual_entries)
            if (y > 0) out.dual.entries.emplace_back(key.first, key.second, y);
    }
};

}  // namespace

PdRun run_primal_dual(const PcInstance& inst, const PdOptions& opts) {
    if (!inst.normalized || inst.kind != InstanceKind::Forest)
        throw ValidationError("run_primal_dual requires a normalized forest instance");
    for (const auto& p : inst.pairs)
        if (p.penalty <= 0)
            throw ValidationError("run_primal_dual requires strictly positive penalties");
    PdDriver driver(inst, opts);
    driver.run();
    return std::move(driver.out);
}

ScaledRun run_scaled(const PcInstance& inst, const Rat& epsilon, const PdOptions& opts) {
    if (epsilon <= 0) throw ValidationError("epsilon must be positive");
    ScaledRun out;
    out.scaled = inst;
    for (auto& p : out.scaled.pairs) p.penalty = 2 * p.penalty / epsilon;
    out.run = run_primal_dual(out.scaled, opts);
    out.forest_on_original = evaluate(inst, out.run.forest.edges);
    return out;
}

std::vector<int> deletion_phase(const WeightedGraph& g, const std::vector<int>& grown,
                                const std::vector<std::pair<int, int>>& satisfied_pairs) {
    std::vector<char> removed(grown.size(), 0);
    for (int idx = static_cast<int>(grown.size()) - 1; idx >= 0; --idx) {
        UnionFind uf(g.vertex_count());
        for (std::size_t j = 0; j < grown.size(); ++j) {
            if (removed[j] || static_cast<int>(j) == idx) continue;
            uf.unite(g.edge(grown[j]).u, g.edge(grown[j]).v);
        }
        bool needed = false;
        for (const auto& [s, t] : satisfied_pairs)
            if (!uf.same(s, t)) {
                needed = true;
                break;
            }
        if (!needed) removed[idx] = 1;
    }
    std::vector<int> out;
    for (std::size_t j = 0; j < grown.size(); ++j)
        if (!removed[j]) out.push_back(grown[j]);
    return out;
}

DualReport verify_dual(const DualAssignment& dual, const PcInstance& inst) {
    DualReport rep;
    rep.dual_value = 0;
    auto contains = [&](int comp, int v) {
        const auto& verts = dual.component_vertices[comp];
        return std::binary_search(verts.begin(), verts.end(), v);
    };
    std::vector<Rat> pair_total(inst.pairs.size(), Rat(0));
    std::vector<Rat> comp_total(dual.component_vertices.size(), Rat(0));
    for (const auto& [i, s, y] : dual.entries) {
        if (y < 0) {
            std::ostringstream os;
            os << "y[" << i << "," << s << "] negative";
            rep.violations.push_back({os.str()});
            continue;
        }
        bool in_s = contains(s, inst.pairs[i].s);
        bool in_t = contains(s, inst.pairs[i].t);
        if (in_s == in_t) {
            std::ostringstream os;
            os << "component " << s << " does not separate pair " << i;
            rep.violations.push_back({os.str()});
        }
        pair_total[i] += y;
        comp_total[s] += y;
        rep.dual_value += y;
    }
    for (std::size_t i = 0; i < inst.pairs.size(); ++i)
        if (pair_total[i] > inst.pairs[i].penalty) {
            std::ostringstream os;
            os << "pair " << i << " budget exceeded: " << rat_str(pair_total[i]) << " > "
               << rat_str(inst.pairs[i].penalty);
            rep.violations.push_back({os.str()});
        }
    for (int e = 0; e < inst.graph.edge_count(); ++e) {
        const Edge& ed = inst.graph.edge(e);
        Rat load = 0;
        for (std::size_t s = 0; s < dual.component_vertices.size(); ++s) {
            if (comp_total[s] == 0) continue;
            bool in_u = contains(static_cast<int>(s), ed.u);
            bool in_v = contains(static_cast<int>(s), ed.v);
            if (in_u != in_v) load += comp_total[s];
        }
        if (load > ed.length) {
            std::ostringstream os;
            os << "edge " << e << " capacity exceeded: " << rat_str(load) << " > "
               << rat_str(ed.length);
            rep.violations.push_back({os.str()});
        }
    }
    rep.feasible = rep.violations.empty();
    return rep;
}

std::string audit_run(const PdRun& run, const PcInstance& inst) {
    std::vector<Rat> attributed(run.records.size(), Rat(0));
    for (const auto& [i, s, y] : run.dual.entries) attributed[s] += y;
    for (const ComponentRecord& rec : run.records) {
        if (attributed[rec.id] != rec.growth) {
            std::ostringstream os;
            os << "component " << rec.id << ": y(S)=" << rat_str(rec.growth) << " but attributed "
               << rat_str(attributed[rec.id]);
            return os.str();
        }
        if (rec.uncharged != 0) {
            std::ostringstream os;
            os << "component " << rec.id << " retains uncharged growth";
            return os.str();
        }
    }
    // Dead endpoints charge exactly pi/2.
    std::vector<Rat> terminal_charge(run.terminals.size(), Rat(0));
    std::vector<std::vector<char>> in_history(run.terminals.size(),
                                              std::vector<char>(run.records.size(), 0));
    for (std::size_t t = 0; t < run.terminals.size(); ++t)
        for (int id : run.terminals[t].history) in_history[t][id] = 1;
    for (const auto& [i, s, y] : run.dual.entries)
        for (int side = 0; side < 2; ++side) {
            std::size_t t = 2 * static_cast<std::size_t>(i) + side;
            if (in_history[t][s]) terminal_charge[t] += y;
        }
    for (std::size_t t = 0; t < run.terminals.size(); ++t) {
        const TerminalState& ts = run.terminals[t];
        if (ts.status == TerminalStatus::Dead && ts.death_by_exhaustion) {
            Rat half = inst.pairs[ts.pair_index].penalty / 2;
            if (terminal_charge[t] != half) {
                std::ostringstream os;
                os << "dead terminal " << t << " charged " << rat_str(terminal_charge[t])
                   << " != " << rat_str(half);
                return os.str();
            }
        }
        if (ts.processed) {
            // The history walk spends the budget exactly: charge + leftover.
            Rat half = inst.pairs[ts.pair_index].penalty / 2;
            if (terminal_charge[t] + ts.remaining_charge != half) {
                std::ostringstream os;
                os << "terminal " << t << " charge plus leftover misses pi/2";
                return os.str();
            }
        }
    }
    // Every pair with a dead endpoint yields the half-penalty bound the
    // 4-approximation rests on: the first endpoint to die was an exhaustion
    // death and is charged in full.
    {
        std::vector<Rat> pair_charge(inst.pairs.size(), Rat(0));
        for (const auto& [i, s, y] : run.dual.entries) pair_charge[i] += y;
        for (std::size_t i = 0; i < inst.pairs.size(); ++i) {
            bool any_dead = run.terminals[2 * i].status == TerminalStatus::Dead ||
                            run.terminals[2 * i + 1].status == TerminalStatus::Dead;
            if (any_dead && 2 * pair_charge[i] < inst.pairs[i].penalty) {
                std::ostringstream os;
                os << "pair " << i << " with a dead endpoint lacks the pi/2 charge";
                return os.str();
            }
        }
    }
    // Laminarity of the record family.
    for (const ComponentRecord& a : run.records)
        for (const ComponentRecord& b : run.records) {
            if (a.id >= b.id) continue;
            std::vector<int> common;
            std::set_intersection(a.vertices.begin(), a.vertices.end(), b.vertices.begin(),
                                  b.vertices.end(), std::back_inserter(common));
            if (common.empty()) continue;
            if (common.size() != a.vertices.size() && common.size() != b.vertices.size()) {
                std::ostringstream os;
                os << "records " << a.id << " and " << b.id << " cross";
                return os.str();
            }
        }
    return {};
}

std::string event_log_json(const EventLog& log) {
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (const PdEvent& ev : log) {
        nlohmann::ordered_json e;
        switch (ev.kind) {
            case PdEvent::Merge: e["kind"] = "merge"; break;
            case PdEvent::Deactivate: e["kind"] = "deactivate"; break;
            case PdEvent::Satisfy: e["kind"] = "satisfy"; break;
            case PdEvent::Die: e["kind"] = "die"; break;
        }
        e["time"] = rat_str(ev.time);
        if (ev.edge >= 0) e["edge"] = ev.edge;
        if (ev.component >= 0) e["component"] = ev.component;
        if (ev.pair_index >= 0) e["pair"] = ev.pair_index;
        if (ev.terminal >= 0) e["terminal"] = ev.terminal;
        j.push_back(e);
    }
    return j.dump(2) + "\n";
}

std::string dual_json(const DualAssignment& dual) {
    nlohmann::ordered_json j;
    j["y"] = nlohmann::ordered_json::array();
    for (const auto& [i, s, y] : dual.entries) j["y"].push_back({i, s, rat_str(y)});
    j["value"] = rat_str(dual.value());
    return j.dump(2) + "\n";
}

}  // namespace pcsf
