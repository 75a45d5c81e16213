#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "graphalign/graph.hpp"
#include "graphalign/pairwise.hpp"

namespace graphalign {

enum class MultiMethod { Fermat, GAlign };

struct MultiAlignConfig {
    MultiMethod method = MultiMethod::GAlign;
    int outer_iters = 300;
    int inner_iters = 500;   // Frank-Wolfe budget per pairwise subproblem
    double tol = 1e-6;       // relative objective change
    double threshold = 0.5;  // tau for binarizing the center
    double ridge = 1e-8;     // epsilon in the Fermat center normal equations
    double step_size = 0.0;  // projected-gradient step; 0 picks 1/L automatically
    std::uint64_t seed = 0;
    int workers = 1;
};

// n x n grid of m x m alignment blocks P_ij; diagonal blocks are exactly the
// identity and the nm x nm block matrix is kept symmetric (P_ji = P_ij^T).
struct BlockAlignment {
    int n = 0, m = 0;
    Matrix big; // nm x nm

    BlockAlignment() = default;
    BlockAlignment(int n_, int m_) : n(n_), m(m_), big(Matrix::Zero(n_ * m_, n_ * m_)) {}

    Eigen::Block<Matrix> block(int i, int j) { return big.block(i * m, j * m, m, m); }
    Eigen::Block<const Matrix> block(int i, int j) const {
        return big.block(i * m, j * m, m, m);
    }
};

struct CenterEstimate {
    Matrix soft;        // pre-binarization center, entries in [0,1]
    LabeledGraph hard;  // soft thresholded at tau
    double threshold = 0.5;
};

struct MultiAlignResult {
    std::vector<PermutationMatrix> permutations; // graph i -> graph 0 frame
    double relaxed_objective = 0.0;
    CenterEstimate center;
    std::vector<double> objective_trace;
    bool converged = true;
    BlockAlignment blocks;                   // galign only
    std::vector<Matrix> relaxed_alignments;  // fermat only: final P_i
};

// Alternating minimization of sum_i ||A_i P_i - P_i A0||_F^2 over doubly
// stochastic P_i and A0 in [0,1]^{m x m}: closed-form ridge least squares for
// A0 (symmetrized, clamped), n independent Frank-Wolfe solves for the P_i.
MultiAlignResult fermat_align(const GraphSet& set, const MultiAlignConfig& cfg);

// Projected gradient on F(P) = 1/2 sum_{i,j} ||A_i P_ij - P_ij A_j||_F^2 with
// Dykstra projections onto {blockwise Birkhoff, diagonal = I} and the PSD
// cone; blocks are re-projected onto the Birkhoff polytope at the end.
MultiAlignResult galign(const GraphSet& set, const MultiAlignConfig& cfg);

MultiAlignResult multi_align(const GraphSet& set, const MultiAlignConfig& cfg);

std::vector<PermutationMatrix> extract_alignments(const BlockAlignment& b);

GraphSet align_set(const GraphSet& set, const std::vector<PermutationMatrix>& perms);

// Minimizes sum_i ||A_i - A0||_F over A0 in [0,1]^{m x m} by Weiszfeld
// iterations from the entrywise mean (the mean itself when n <= 2), then
// thresholds at tau.
CenterEstimate center_graph(const GraphSet& aligned, double tau);

// Weiszfeld geometric median of a stack of equally sized matrices, clamped
// to [0,1]; exposed for blockwise center assembly.
Matrix matrix_geometric_median(const std::vector<Matrix>& points);

// Closed-form ridge least-squares center: (sum P_i^T P_i + ridge I)^{-1}
// (sum P_i^T A_i P_i), symmetrized and clamped to [0,1]. With identity
// alignments this reduces to the entrywise mean.
Matrix fermat_center_update(const std::vector<Matrix>& adj,
                            const std::vector<Matrix>& alignments, double ridge);

// Euclidean projection onto the Birkhoff polytope: Dykstra alternation over
// the row-sum, column-sum and nonnegativity sets.
void project_birkhoff(Matrix& x, int max_sweeps = 100, double tol = 1e-10);

const char* method_name(MultiMethod m);
MultiMethod method_from_name(const std::string& name);

} // namespace graphalign
