#pragma once

#include <functional>
#include <vector>

#include "pcsf/graph.hpp"

namespace pcsf {

// One node of a laminar moat history. The uncharged field is only meaningful
// for the pair-penalty engine; the clustering engine leaves it at zero.
struct ComponentRecord {
    int id = -1;
    std::vector<int> vertices;  // sorted
    Rat potential;              // remaining, frozen at merge time
    Rat uncharged;              // growth not yet attributed to a pair variable
    Rat growth;                 // y(S)
    bool active = false;
    bool died = false;    // deactivated by exhausting its potential
    bool merged = false;  // absorbed into a larger component
    Rat formed_at;
    int parent = -1;
    int child_left = -1;
    int child_right = -1;
};

// Uniform moat growth over exact rational time. Every vertex starts as a
// singleton component with the supplied potential; zero-potential singletons
// are born exhausted. Event order: edge-tight events beat simultaneous
// exhaustions, lower edge id beats higher, lower component id likewise.
class MoatSimulator {
  public:
    struct Hooks {
        // After uniform growth of all active components by delta.
        std::function<void(const Rat& delta)> advanced;
        // After record `id` was formed from a and b via edge e.
        std::function<void(int id, int a, int b, int e)> merged;
        // After record `id` ran out of potential.
        std::function<void(int id)> deactivated;
        // After each event, once the books are settled.
        std::function<void()> event_processed;
    };

    MoatSimulator(const WeightedGraph& g, std::vector<Rat> initial_potentials);

    void run(const Hooks& hooks);

    const WeightedGraph& graph() const { return g_; }
    std::vector<ComponentRecord>& records() { return records_; }
    const std::vector<ComponentRecord>& records() const { return records_; }
    const std::vector<int>& grown_edges() const { return grown_; }
    const Rat& now() const { return now_; }

    int find(int v) const { return uf_.find(v); }
    int record_of_vertex(int v) const { return root_record_[uf_.find(v)]; }

    // Accumulated dual depth of v: total growth of components containing it.
    Rat depth(int v) const;

    // Roots of the current component forest, ascending by representative.
    std::vector<int> current_records() const;

  private:
    void advance(const Rat& delta, const Hooks& hooks);
    void handle_merge(int e, const Hooks& hooks);
    void handle_death(int id, const Hooks& hooks);

    const WeightedGraph& g_;
    UnionFind uf_;
    std::vector<ComponentRecord> records_;
    std::vector<int> root_record_;
    std::vector<Rat> depth_base_;
    std::vector<int> grown_;
    Rat now_;
};

}  // namespace pcsf
