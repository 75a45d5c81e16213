#pragma once

#include <cstdint>
#include <vector>

#include "graphalign/graph.hpp"

namespace graphalign {

// Cluster structure of one graph: the coarse graph has one super-node per
// cluster, diagonal weights counting intra-cluster edges and off-diagonal
// weights counting inter-cluster edges, all rescaled to [0,1] by the maximum.
struct Coarsening {
    LabeledGraph coarse;
    std::vector<int> assignment; // node -> cluster id, every cluster nonempty
};

// Embeds nodes with the c smallest nontrivial eigenvectors of the
// combinatorial Laplacian and clusters them by seeded k-means (k-means++
// init, single run, 100 Lloyd iterations); empty clusters are repaired by
// splitting the largest cluster at its farthest point. Cluster ids are
// canonicalized by smallest member node.
Coarsening coarsen(const LabeledGraph& g, int c, std::uint64_t seed);

} // namespace graphalign
