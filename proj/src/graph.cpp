#include "graphalign/graph.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace graphalign {

PermutationMatrix PermutationMatrix::identity(int m) {
    std::vector<int> p(m);
    for (int i = 0; i < m; ++i) p[i] = i;
    return PermutationMatrix(std::move(p));
}

bool PermutationMatrix::is_identity() const {
    for (int i = 0; i < size(); ++i)
        if (perm[i] != i) return false;
    return true;
}

PermutationMatrix PermutationMatrix::inverse() const {
    std::vector<int> inv(perm.size());
    for (int i = 0; i < size(); ++i) inv[perm[i]] = i;
    return PermutationMatrix(std::move(inv));
}

PermutationMatrix PermutationMatrix::then(const PermutationMatrix& q) const {
    if (q.size() != size())
        throw std::invalid_argument("permutation composition: size mismatch");
    std::vector<int> r(perm.size());
    for (int i = 0; i < size(); ++i) r[i] = q.perm[perm[i]];
    return PermutationMatrix(std::move(r));
}

Matrix PermutationMatrix::to_matrix() const {
    const int m = size();
    Matrix p = Matrix::Zero(m, m);
    for (int i = 0; i < m; ++i) p(i, perm[i]) = 1.0;
    return p;
}

void PermutationMatrix::validate() const {
    const int m = size();
    std::vector<char> seen(m, 0);
    for (int i = 0; i < m; ++i) {
        if (perm[i] < 0 || perm[i] >= m || seen[perm[i]])
            throw std::invalid_argument("permutation is not a bijection");
        seen[perm[i]] = 1;
    }
}

double LabeledGraph::total_edge_weight() const {
    double w = 0.0;
    for (int u = 0; u < size(); ++u) {
        w += adj(u, u);
        for (int v = u + 1; v < size(); ++v) w += adj(u, v);
    }
    return w;
}

long long LabeledGraph::edge_count() const {
    long long e = 0;
    for (int u = 0; u < size(); ++u)
        for (int v = u + 1; v < size(); ++v)
            if (adj(u, v) != 0.0) ++e;
    return e;
}

LabeledGraph LabeledGraph::from_adjacency(Matrix a, std::optional<Matrix> feats) {
    if (a.rows() != a.cols())
        throw std::invalid_argument("adjacency matrix must be square");
    const int m = static_cast<int>(a.rows());
    bool binary = true;
    for (int i = 0; i < m; ++i) {
        for (int j = i; j < m; ++j) {
            const double x = a(i, j);
            const double y = a(j, i);
            if (!std::isfinite(x) || !std::isfinite(y))
                throw std::invalid_argument("adjacency entries must be finite");
            if (std::abs(x - y) > 1e-12)
                throw std::invalid_argument("adjacency matrix must be symmetric");
            if (x < -1e-12 || x > 1.0 + 1e-12)
                throw std::invalid_argument("edge weights must lie in [0,1]");
            const double w = std::clamp(x, 0.0, 1.0);
            a(i, j) = w;
            a(j, i) = w;
            if (w != 0.0 && w != 1.0) binary = false;
        }
    }
    if (feats && feats->rows() != m)
        throw std::invalid_argument("feature matrix row count must match node count");
    LabeledGraph g;
    g.adj = std::move(a);
    g.features = std::move(feats);
    g.binary = binary;
    return g;
}

int GraphSet::max_nodes() const {
    int m = 0;
    for (const auto& g : graphs) m = std::max(m, g.size());
    return m;
}

int GraphSet::min_nodes() const {
    if (graphs.empty()) return 0;
    int m = graphs.front().size();
    for (const auto& g : graphs) m = std::min(m, g.size());
    return m;
}

bool GraphSet::equal_sizes() const {
    for (const auto& g : graphs)
        if (g.size() != graphs.front().size()) return false;
    return true;
}

bool is_doubly_stochastic(const Matrix& m, double entry_tol, double sum_tol) {
    if (m.rows() != m.cols() || m.rows() == 0) return false;
    if ((m.array() < -entry_tol).any()) return false;
    for (int i = 0; i < m.rows(); ++i) {
        if (std::abs(m.row(i).sum() - 1.0) > sum_tol) return false;
        if (std::abs(m.col(i).sum() - 1.0) > sum_tol) return false;
    }
    return true;
}

bool DoublyStochasticMatrix::is_valid(double entry_tol, double sum_tol) const {
    return is_doubly_stochastic(mat, entry_tol, sum_tol);
}

void DoublyStochasticMatrix::validate(double entry_tol, double sum_tol) const {
    if (!is_valid(entry_tol, sum_tol))
        throw std::invalid_argument("matrix is not doubly stochastic");
}

} // namespace graphalign
