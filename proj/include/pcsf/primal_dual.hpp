#pragma once

#include <string>
#include <tuple>
#include <vector>

#include "pcsf/instance.hpp"
#include "pcsf/moat.hpp"

namespace pcsf {

enum class TerminalStatus { Alive, Satisfied, Dead };

struct TerminalState {
    int vertex = -1;
    int pair_index = -1;
    TerminalStatus status = TerminalStatus::Alive;
    std::vector<int> history;  // component ids, in formation order (= increasing size)
    Rat remaining_charge;      // leftover reported by the history walk
    bool processed = false;
    // True when the terminal died because its component exhausted its
    // potential; false for a union with an already-dead partner. Only the
    // former is guaranteed a full pi/2 charge (the partner that died first
    // always is, which is what the 4-approximation argument uses).
    bool death_by_exhaustion = false;
};

struct DualAssignment {
    // y_{i,S} entries, (pair index, component id, value), value > 0.
    std::vector<std::tuple<int, int, Rat>> entries;
    std::vector<Rat> component_growth;  // y(S) per component id
    std::vector<std::vector<int>> component_vertices;
    int pair_count = 0;

    Rat value() const;
};

struct PdEvent {
    enum Kind { Merge, Deactivate, Satisfy, Die } kind;
    Rat time;
    int edge = -1;        // Merge
    int component = -1;   // Merge: new component; Deactivate: dying component
    int pair_index = -1;  // Satisfy / Die
    int terminal = -1;    // Die
};

using EventLog = std::vector<PdEvent>;

struct PdRun {
    SolutionForest forest;         // post-deletion, evaluated against the run instance
    std::vector<int> grown_edges;  // pre-deletion forest in insertion order
    DualAssignment dual;
    EventLog log;
    std::vector<ComponentRecord> records;
    std::vector<TerminalState> terminals;  // 2i = s_i, 2i+1 = t_i
    std::vector<char> pair_satisfied;
    bool conservation_ok = true;  // per-event moat conservation, when audited
    std::string conservation_note;
};

struct PdOptions {
    bool audit_conservation = false;  // check moat conservation at every event
};

// Section-2 growth phase + deletion phase. Requires a normalized forest
// instance; pairs with zero penalty must already be gone.
PdRun run_primal_dual(const PcInstance& inst, const PdOptions& opts = {});

// Same engine on penalties scaled to 2*pi/epsilon. The returned forest is
// evaluated against the *original* penalties; the dual belongs to the scaled
// instance (also returned).
struct ScaledRun {
    PdRun run;          // run on the scaled instance
    PcInstance scaled;  // the instance the run saw
    SolutionForest forest_on_original;
};
ScaledRun run_scaled(const PcInstance& inst, const Rat& epsilon, const PdOptions& opts = {});

// Reverse-delete: drop edges (newest first) whose removal keeps every
// satisfied pair connected.
std::vector<int> deletion_phase(const WeightedGraph& g, const std::vector<int>& grown,
                                const std::vector<std::pair<int, int>>& satisfied_pairs);

struct DualViolation {
    std::string what;
};

struct DualReport {
    bool feasible = false;
    std::vector<DualViolation> violations;
    Rat dual_value;  // certified lower bound on OPT when feasible
};

// LP feasibility of a dual: edge capacities, per-pair budgets, nonnegativity,
// and that every variable's component actually separates its pair.
DualReport verify_dual(const DualAssignment& dual, const PcInstance& inst);

// Lemma-1 style end-of-run audit: y(S) equals the attributed sum for every
// component, dead endpoints are charged exactly pi_i/2, and the record family
// is laminar. Returns an empty string on success, else a diagnostic.
std::string audit_run(const PdRun& run, const PcInstance& inst);

std::string event_log_json(const EventLog& log);
std::string dual_json(const DualAssignment& dual);

}  // namespace pcsf
