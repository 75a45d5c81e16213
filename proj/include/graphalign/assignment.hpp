#pragma once

#include <vector>

#include "graphalign/graph.hpp"

namespace graphalign {

struct AssignmentResult {
    std::vector<int> col_of_row; // row i matched to column col_of_row[i]
    double cost = 0.0;
    std::vector<double> u, v; // feasible potentials: cost(i,j) - u[i] - v[j] >= 0
};

// Minimum-cost linear assignment on a dense square matrix, O(n^3) shortest
// augmenting paths with potentials.
AssignmentResult solve_assignment(const Matrix& cost);

// Optimal assignment that is lexicographically smallest as the array
// (sigma(0), sigma(1), ...). Every optimal assignment uses only edges with
// zero reduced cost, so the refinement searches perfect matchings inside
// that tight subgraph.
std::vector<int> lexicographic_min_assignment(const Matrix& cost);

} // namespace graphalign
