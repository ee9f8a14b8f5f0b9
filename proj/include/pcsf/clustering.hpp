#pragma once

#include <tuple>
#include <vector>

#include "pcsf/instance.hpp"
#include "pcsf/moat.hpp"

namespace pcsf {

// Quotient of the working graph by the trees of a forest. Supervertices carry
// potential Length(T_i)/epsilon, everything else zero; parallel edges collapse
// to the shortest representative.
struct ContractedGraph {
    WeightedGraph graph;
    std::vector<int> vertex_map;               // original vertex -> quotient vertex
    std::vector<std::vector<int>> preimage;    // quotient vertex -> original vertices
    std::vector<Rat> potential;                // phi per quotient vertex
    std::vector<char> is_supervertex;
    std::vector<std::vector<int>> tree_edges;  // quotient vertex -> original T_i edge ids
    std::vector<int> edge_source;              // quotient edge -> original edge id
};

ContractedGraph contract_forest(const WeightedGraph& g, const std::vector<int>& forest_edges,
                                const Rat& epsilon);

// One potential per component, no pair bookkeeping: the degenerate
// configuration of the moat engine.
struct ClusterRun {
    std::vector<int> f1;  // tight quotient edges in insertion order
    std::vector<ComponentRecord> records;
    std::vector<std::tuple<int, int, Rat>> dual;  // (quotient vertex, component id, y) > 0
};

ClusterRun run_clustering(const ContractedGraph& cg);

// Deletes edges that are the unique F1 edge crossing some deactivated
// component, iterated to a fixpoint.
std::vector<int> prune(const ContractedGraph& cg, const ClusterRun& run);

// Quotient vertices v such that h_edges hits delta(S) for every S with
// y_{v,S} > 0 (vacuously exhausted when v has no positive dual).
std::vector<int> exhausted_vertices(const std::vector<int>& h_edges, const ContractedGraph& cg,
                                    const ClusterRun& run);

struct SplitPart {
    PcInstance instance;                 // same graph, penalties kept only for owned pairs
    std::vector<int> pair_ids;           // original pair indices owned by this tree
    std::vector<int> tree_edges_in_g;    // uncontracted tree as original edge ids
    std::vector<int> tree_vertices_in_g; // sorted vertex set of the uncontracted tree
};

struct SplitResult {
    std::vector<SplitPart> parts;
    std::vector<int> cross_tree_pairs;  // penalties paid unconditionally by the pipeline
};

// One instance per F2 tree owning at least one terminal pair; pairs straddling
// distinct trees are surfaced in cross_tree_pairs.
SplitResult split_instances(const PcInstance& inst, const ContractedGraph& cg,
                            const std::vector<int>& f2);

std::string cluster_json(const ContractedGraph& cg, const ClusterRun& run,
                         const std::vector<int>& f2);

}  // namespace pcsf
