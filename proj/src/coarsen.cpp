#include "graphalign/coarsen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "graphalign/rng.hpp"

namespace graphalign {

namespace {

std::vector<int> kmeans(const Matrix& points, int k, std::uint64_t seed) {
    const int n = static_cast<int>(points.rows());
    Rng rng(seed);

    // k-means++ seeding.
    std::vector<int> center_idx;
    center_idx.push_back(static_cast<int>(rng.below(n)));
    Vector dist2 = (points.rowwise() - points.row(center_idx[0])).rowwise().squaredNorm();
    while (static_cast<int>(center_idx.size()) < k) {
        const double total = dist2.sum();
        int pick;
        if (total <= 0.0) {
            pick = static_cast<int>(rng.below(n));
        } else {
            double r = rng.uniform() * total;
            pick = n - 1;
            for (int i = 0; i < n; ++i) {
                r -= dist2[i];
                if (r <= 0.0) {
                    pick = i;
                    break;
                }
            }
        }
        center_idx.push_back(pick);
        dist2 = dist2.cwiseMin(
            (points.rowwise() - points.row(pick)).rowwise().squaredNorm());
    }

    Matrix centers(k, points.cols());
    for (int j = 0; j < k; ++j) centers.row(j) = points.row(center_idx[j]);

    std::vector<int> assign(n, 0);
    for (int iter = 0; iter < 100; ++iter) {
        bool changed = false;
        for (int i = 0; i < n; ++i) {
            int best = 0;
            double best_d = std::numeric_limits<double>::infinity();
            for (int j = 0; j < k; ++j) {
                const double d = (points.row(i) - centers.row(j)).squaredNorm();
                if (d < best_d) {
                    best_d = d;
                    best = j;
                }
            }
            if (assign[i] != best) {
                assign[i] = best;
                changed = true;
            }
        }

        std::vector<int> count(k, 0);
        for (int i = 0; i < n; ++i) ++count[assign[i]];
        for (int j = 0; j < k; ++j) {
            if (count[j] > 0) continue;
            // Repair: split the largest cluster at its farthest point.
            const int big = static_cast<int>(
                std::max_element(count.begin(), count.end()) - count.begin());
            int far = -1;
            double far_d = -1.0;
            for (int i = 0; i < n; ++i) {
                if (assign[i] != big) continue;
                const double d = (points.row(i) - centers.row(big)).squaredNorm();
                if (d > far_d) {
                    far_d = d;
                    far = i;
                }
            }
            assign[far] = j;
            --count[big];
            ++count[j];
            centers.row(j) = points.row(far);
            changed = true;
        }

        Matrix sums = Matrix::Zero(k, points.cols());
        for (int i = 0; i < n; ++i) sums.row(assign[i]) += points.row(i);
        for (int j = 0; j < k; ++j) centers.row(j) = sums.row(j) / count[j];
        if (!changed && iter > 0) break;
    }
    return assign;
}

std::vector<int> canonicalize_labels(std::vector<int> assign, int k) {
    std::vector<int> first(k, std::numeric_limits<int>::max());
    for (int i = 0; i < static_cast<int>(assign.size()); ++i)
        first[assign[i]] = std::min(first[assign[i]], i);
    std::vector<int> order(k);
    for (int j = 0; j < k; ++j) order[j] = j;
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return first[a] < first[b]; });
    std::vector<int> relabel(k);
    for (int r = 0; r < k; ++r) relabel[order[r]] = r;
    for (int& a : assign) a = relabel[a];
    return assign;
}

} // namespace

Coarsening coarsen(const LabeledGraph& g, int c, std::uint64_t seed) {
    const int m = g.size();
    if (c < 1 || c > m)
        throw std::invalid_argument("coarsen: cluster count must lie in [1, m]");

    Coarsening out;
    if (c == m) {
        out.assignment.resize(m);
        for (int i = 0; i < m; ++i) out.assignment[i] = i;
        Matrix coarse = g.adj;
        const double mx = coarse.maxCoeff();
        if (mx > 0.0) coarse /= mx;
        out.coarse = LabeledGraph::from_adjacency(std::move(coarse));
        return out;
    }

    if (c == 1) {
        out.assignment.assign(m, 0);
    } else {
        Matrix lap = -g.adj;
        for (int i = 0; i < m; ++i) lap(i, i) = g.adj.row(i).sum() - g.adj(i, i);
        Eigen::SelfAdjointEigenSolver<Matrix> es(lap);
        if (es.info() != Eigen::Success)
            throw std::runtime_error("coarsen: Laplacian eigendecomposition failed");
        // First c eigenvectors in eigenvalue order. Keeping the whole bottom
        // of the spectrum makes the null space of disconnected graphs enter
        // as a block, so components always separate regardless of the
        // eigenbasis the solver returns.
        const Matrix embedding = es.eigenvectors().leftCols(c);
        out.assignment = canonicalize_labels(kmeans(embedding, c, seed), c);
    }

    Matrix counts = Matrix::Zero(c, c);
    for (int u = 0; u < m; ++u) {
        for (int v = u + 1; v < m; ++v) {
            const double w = g.adj(u, v);
            if (w == 0.0) continue;
            const int a = out.assignment[u], b = out.assignment[v];
            if (a == b) {
                counts(a, a) += w;
            } else {
                counts(a, b) += w;
                counts(b, a) += w;
            }
        }
    }
    const double mx = counts.maxCoeff();
    if (mx > 0.0) counts /= mx;
    out.coarse = LabeledGraph::from_adjacency(std::move(counts));
    return out;
}

} // namespace graphalign
