#pragma once

#include <cstdint>
#include <vector>

#include "graphalign/coarsen.hpp"
#include "graphalign/graph.hpp"
#include "graphalign/multi.hpp"

namespace graphalign {

struct AccelConfig {
    int group_size = 4; // K
    int clusters = 2;   // c
    int workers = 1;
    MultiAlignConfig inner;
    std::uint64_t seed = 0;
    double dummy_weight = 0.01;
};

// Per-run bookkeeping: recursion depth, per-stage centers and timings, and
// the soft estimate behind the final center.
struct AccelReport {
    int stages = 0;
    std::vector<double> stage_seconds;
    bool capture_stages = false;
    std::vector<GraphSet> stage_centers;
    CenterEstimate final_center;
    bool converged = true;
};

// Recursively partitions the set into consecutive groups of size <= K,
// aligns each group with the inner method and keeps only the group centers
// until a single center remains. Groups within a stage run on the worker
// pool and are merged in index order.
LabeledGraph g_parallel(const GraphSet& set, const AccelConfig& cfg,
                        AccelReport* report = nullptr);

// Coarsens every graph to c clusters, aligns the coarse graphs to match
// clusters, refines with per-cluster pairwise alignments against graph 0
// (dummy-padded when matched clusters differ in size), and assembles the
// center per cluster block.
LabeledGraph c_serial(const GraphSet& set, const AccelConfig& cfg,
                      AccelReport* report = nullptr);

// g_parallel's recursion with c_serial's per-group center computation.
LabeledGraph cg_parallel(const GraphSet& set, const AccelConfig& cfg,
                         AccelReport* report = nullptr);

// d0 = (1/n) sum_i ||P_i^T A_i P_i - A0||_F / ||A_1||_F.
double d0_score(const GraphSet& set, const std::vector<PermutationMatrix>& perms,
                const LabeledGraph& center);

} // namespace graphalign
