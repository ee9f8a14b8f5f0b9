#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "pcsf/instance.hpp"
#include "pcsf/treewidth.hpp"

namespace pcsf {

// Partitions of {0..k-1} in canonical form: part ids appear in first-occurrence
// order (a restricted growth string).
using Partition = std::vector<int>;

Partition canonical_partition(const Partition& raw);
Partition join_partitions(const Partition& a, const Partition& b);
bool is_refinement(const Partition& fine, const Partition& coarse);
std::vector<Partition> all_partitions(int k);
// Partitions of the ground set coarser than `base` (block merges of base).
std::vector<Partition> coarsenings(const Partition& base);

// A subgraph of the induced bag graph: chosen vertices (mask over bag
// positions) and chosen edges among them (mask over the bag edge list).
struct BagSubgraph {
    std::uint32_t vmask = 0;
    std::uint64_t emask = 0;
    bool operator<(const BagSubgraph& o) const {
        return vmask != o.vmask ? vmask < o.vmask : emask < o.emask;
    }
    bool operator==(const BagSubgraph& o) const {
        return vmask == o.vmask && emask == o.emask;
    }
};

struct DpKey {
    BagSubgraph h;
    std::uint64_t part = 0;  // packed canonical partition of the chosen positions
    bool operator<(const DpKey& o) const {
        if (!(h == o.h)) return h < o.h;
        return part < o.part;
    }
};

std::uint64_t pack_partition(const Partition& p);
Partition unpack_partition(std::uint64_t code, int size);

struct DpBack {
    enum Kind { None, Leaf, Join, ForgetDrop, ForgetTake, IntroSkip, IntroTake } kind = None;
    DpKey child_a;
    DpKey child_b;  // join only
};

struct DpEntry {
    Rat cost;
    DpBack back;
};

struct DpStats {
    int nodes = 0;
    std::size_t total_entries = 0;
    std::size_t max_node_entries = 0;
};

struct PcstDpResult {
    std::vector<int> tree_edges;
    Rat cost;
    DpStats stats;
};

// Exact prize-collecting Steiner tree over a nice tree decomposition.
// Table semantics: cost of the cheapest subgraph F of G_i whose bag trace is
// H, whose components induce the partition alpha on V(H), and each of whose
// components meets V(H). Penalties of bag vertices outside V(H) are settled
// when vertices are forgotten (and at the very top), so join nodes subtract
// the shared Penalty(B_i - V(H)) term along with Length(H).
class PcstDp {
  public:
    PcstDp(const PcInstance& inst, const NiceTreeDecomposition& ntd);

    PcstDpResult solve();

    // Table access for tests and dumps; costs are keyed by explicit vertex
    // sets / edge sets / partitions over vertex ids.
    bool lookup(int node, const std::vector<int>& h_vertices,
                const std::vector<int>& h_edges,
                const std::vector<std::vector<int>>& parts, Rat* cost_out) const;

    const DpStats& stats() const { return stats_; }
    std::string dump_tables(std::size_t max_entries_per_node = 50) const;

  private:
    struct NodeCtx {
        std::vector<int> bag;                              // sorted vertex ids
        std::vector<std::tuple<int, int, int>> bag_edges;  // (pos_a, pos_b, edge_id)
        std::map<DpKey, DpEntry> table;
    };

    void solve_leaf(int i);
    void solve_join(int i);
    void solve_forget(int i);
    void solve_introduce(int i);
    void relax(int i, const DpKey& key, const Rat& cost, const DpBack& back);
    Rat bag_penalty_outside(int i, std::uint32_t vmask) const;
    void collect_edges(int node, const DpKey& key, std::vector<int>& out) const;

    const PcInstance& inst_;
    const NiceTreeDecomposition& ntd_;
    std::vector<NodeCtx> ctx_;
    DpStats stats_;
};

// Convenience wrapper: heuristic decomposition, nice form, exact solve.
PcstDpResult solve_pcst(const PcInstance& inst);
PcstDpResult solve_pcst(const PcInstance& inst, const NiceTreeDecomposition& ntd);

}  // namespace pcsf
