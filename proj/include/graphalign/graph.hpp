#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

namespace graphalign {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Alignment of one node set onto another: perm[i] is the image of node i.
// The matrix form P has P(i, perm[i]) = 1.
struct PermutationMatrix {
    std::vector<int> perm;

    PermutationMatrix() = default;
    explicit PermutationMatrix(std::vector<int> p) : perm(std::move(p)) {}

    static PermutationMatrix identity(int m);

    int size() const { return static_cast<int>(perm.size()); }
    bool is_identity() const;
    PermutationMatrix inverse() const;
    // Composition: apply this first, then q. Matrix form P_this * P_q.
    PermutationMatrix then(const PermutationMatrix& q) const;
    Matrix to_matrix() const;

    // Throws std::invalid_argument if perm is not a bijection on {0..m-1}.
    void validate() const;

    bool operator==(const PermutationMatrix& o) const { return perm == o.perm; }
};

// Undirected weighted graph with optional node features. Instances are
// treated as immutable after construction and safe to share across workers.
struct LabeledGraph {
    Matrix adj;                     // m x m symmetric, entries in [0,1]
    std::optional<Matrix> features; // m x f
    bool binary = true;             // true when all weights are exactly 0 or 1

    int size() const { return static_cast<int>(adj.rows()); }

    // Number of edges for binary graphs; sum of off-diagonal weights (u<v)
    // plus diagonal weights for weighted ones.
    double total_edge_weight() const;
    long long edge_count() const; // binary graphs only

    // Validates invariants (square, symmetric, range) and computes the
    // binary flag. Symmetry drift below 1e-12 is repaired, anything larger
    // throws std::invalid_argument.
    static LabeledGraph from_adjacency(Matrix a, std::optional<Matrix> feats = {});
};

struct GraphSet {
    std::string name;
    std::vector<LabeledGraph> graphs;

    int size() const { return static_cast<int>(graphs.size()); }
    int max_nodes() const;
    int min_nodes() const;
    bool equal_sizes() const;
};

// Relaxed alignment living in the Birkhoff polytope.
struct DoublyStochasticMatrix {
    Matrix mat;

    int size() const { return static_cast<int>(mat.rows()); }
    // Entries >= -1e-9 and row/column sums within 1e-7 of one.
    bool is_valid(double entry_tol = 1e-9, double sum_tol = 1e-7) const;
    void validate(double entry_tol = 1e-9, double sum_tol = 1e-7) const;
};

bool is_doubly_stochastic(const Matrix& m, double entry_tol = 1e-9,
                          double sum_tol = 1e-7);

} // namespace graphalign
