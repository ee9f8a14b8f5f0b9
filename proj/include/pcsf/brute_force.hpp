#pragma once

#include <vector>

#include "pcsf/instance.hpp"

namespace pcsf {

struct BruteForceCaps {
    int max_edges = 16;         // edge-subset enumeration
    int max_pairs = 6;          // pair-subset mode
    int steiner_terminals = 12; // Dreyfus-Wagner group size
};

// Exact optimum by enumerating acyclic edge subsets. Works for both instance
// kinds. Deterministic: the first optimum in ascending mask order wins.
SolutionForest brute_force_pcsf(const PcInstance& inst, const BruteForceCaps& caps = {});

// Exact optimum via pair subsets: choose the pairs to connect, partition them
// into trees, and price each group with an exact Steiner tree.
SolutionForest brute_force_pcsf_pairs(const PcInstance& inst, const BruteForceCaps& caps = {});

// Exact PCST optimum via terminal subsets + one Dreyfus-Wagner pass.
SolutionForest brute_force_pcst(const PcInstance& inst, const BruteForceCaps& caps = {});

// Optimum among forests that separate every listed vertex pair.
SolutionForest brute_force_pcsf_separating(const PcInstance& inst,
                                           const std::vector<std::pair<int, int>>& must_separate,
                                           const BruteForceCaps& caps = {});

}  // namespace pcsf
