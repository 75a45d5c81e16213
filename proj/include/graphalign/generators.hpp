#pragma once

#include <cstdint>
#include <vector>

#include "graphalign/graph.hpp"

namespace graphalign {

// Stochastic block graph: one Erdos-Renyi G(s, p) sample per community plus
// floor(inter_frac * |V|) cross-community edges drawn without replacement.
LabeledGraph gen_community(const std::vector<int>& sizes, double p,
                           double inter_frac, std::uint64_t seed);

// 4-neighbor lattice on rows x cols nodes.
LabeledGraph gen_grid(int rows, int cols);

// Barabasi-Albert preferential attachment, then the induced subgraph on the
// <=hops neighborhood of a uniformly chosen center, relabeled 0..m-1.
LabeledGraph gen_ego_ba(int total_nodes, int attach, int hops, std::uint64_t seed);

// Removes round(rho*|E|) edges u.a.r. and re-adds as many pairs drawn u.a.r.
// from the pairs absent in the input; edge and node counts are preserved.
// Throws std::runtime_error when the absent-pair pool is too small.
LabeledGraph perturb(const LabeledGraph& g, double rho, std::uint64_t seed);

// Expands every graph to the set maximum with dummy nodes connected to all
// other nodes at dummy_weight; dummy feature rows are zero.
GraphSet pad_with_dummies(const GraphSet& set, double dummy_weight);
LabeledGraph pad_graph(const LabeledGraph& g, int target, double dummy_weight);

// Conjugates the adjacency (P^T A P) and permutes feature rows.
LabeledGraph permute_graph(const LabeledGraph& g, const PermutationMatrix& p);

} // namespace graphalign
