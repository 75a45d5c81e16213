#pragma once

#include <optional>
#include <vector>

#include "graphalign/graph.hpp"

namespace graphalign {

// D[a,b] = Euclidean distance between row a of za and row b of zb.
Matrix node_dissimilarity(const Matrix& za, const Matrix& zb);

// Trace of node_dissimilarity(zi, z0): sum of rowwise distances.
double joint_embedding_penalty(const Matrix& zi, const Matrix& z0);

enum class StepRule { Diminishing, ExactLineSearch };

struct PairAlignConfig {
    double beta = 0.0;
    int max_iters = 1000;
    double tol = 1e-7;
    StepRule step_rule = StepRule::ExactLineSearch;
};

struct PairAlignResult {
    double distance = 0.0; // ||AP-PB||_F + beta*tr(P^T D) at the final P
    DoublyStochasticMatrix alignment;
    int iterations = 0;
    std::vector<double> objective_trace; // ||AP-PB||_F^2 + beta*tr(P^T D)
    bool converged = false;
};

// Frank-Wolfe over the Birkhoff polytope for
//   min_P ||A P - P B||_F^2 + beta * tr(P^T D),
// starting from the identity; the linear minimization oracle is an
// assignment solve on the gradient. Non-convergence after max_iters returns
// the best iterate with converged=false, never an exception.
PairAlignResult pairwise_distance(const LabeledGraph& a, const LabeledGraph& b,
                                  const Matrix* d, const PairAlignConfig& cfg);

// Same solver on raw adjacency matrices with a caller-chosen start; used by
// the multi-graph solvers to warm-start subproblems.
PairAlignResult frank_wolfe_align(const Matrix& a, const Matrix& b, const Matrix* d,
                                  const PairAlignConfig& cfg, const Matrix* start = nullptr);

// Nearest permutation to a doubly stochastic matrix: maximizes tr(Ptilde^T P)
// via a linear assignment solve; ties resolved toward the lexicographically
// smallest permutation.
PermutationMatrix project_to_permutation(const DoublyStochasticMatrix& p);

} // namespace graphalign
