#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace oracles {

namespace {

Matrix conjugate(const Matrix& a, const std::vector<int>& perm) {
    const int m = static_cast<int>(a.rows());
    Matrix out(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) out(perm[i], perm[j]) = a(i, j);
    return out;
}

std::vector<std::vector<int>> all_permutations(int m) {
    std::vector<int> p(m);
    std::iota(p.begin(), p.end(), 0);
    std::vector<std::vector<int>> out;
    do {
        out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

} // namespace

double best_permutation_distance_sq(const Matrix& a, const Matrix& b) {
    const int m = static_cast<int>(a.rows());
    double best = std::numeric_limits<double>::infinity();
    for (const auto& p : all_permutations(m))
        best = std::min(best, (conjugate(a, p) - b).squaredNorm());
    return best;
}

double best_permutation_distance(const Matrix& a, const Matrix& b) {
    return std::sqrt(best_permutation_distance_sq(a, b));
}

double best_consistent_galign(const std::vector<Matrix>& adj) {
    const int n = static_cast<int>(adj.size());
    const int m = static_cast<int>(adj[0].rows());
    const auto perms = all_permutations(m);
    const int np = static_cast<int>(perms.size());

    // choice[i] indexes the permutation taking graph i into the shared frame.
    std::vector<int> choice(n, 0); // choice[0] fixed to the identity
    double best = std::numeric_limits<double>::infinity();
    while (true) {
        std::vector<Matrix> framed(n);
        for (int i = 0; i < n; ++i) framed[i] = conjugate(adj[i], perms[choice[i]]);
        double f = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (i != j) f += (framed[i] - framed[j]).squaredNorm();
        // With P_ij = P_i P_j^T, ||A_i P_ij - P_ij A_j|| = ||framed_i - framed_j||.
        best = std::min(best, 0.5 * f);

        int k = n - 1;
        while (k >= 1 && choice[k] == np - 1) choice[k--] = 0;
        if (k < 1) break;
        ++choice[k];
    }
    return best;
}

double best_fermat(const std::vector<Matrix>& adj) {
    const int n = static_cast<int>(adj.size());
    const int m = static_cast<int>(adj[0].rows());
    const auto perms = all_permutations(m);
    const int np = static_cast<int>(perms.size());

    std::vector<int> choice(n, 0);
    double best = std::numeric_limits<double>::infinity();
    while (true) {
        std::vector<Matrix> framed(n);
        Matrix mean = Matrix::Zero(m, m);
        for (int i = 0; i < n; ++i) {
            framed[i] = conjugate(adj[i], perms[choice[i]]);
            mean += framed[i];
        }
        mean /= static_cast<double>(n);
        double f = 0.0;
        for (int i = 0; i < n; ++i) f += (framed[i] - mean).squaredNorm();
        best = std::min(best, f);

        int k = n - 1;
        while (k >= 0 && choice[k] == np - 1) choice[k--] = 0;
        if (k < 0) break;
        ++choice[k];
    }
    return best;
}

bool isomorphic(const LabeledGraph& a, const LabeledGraph& b) {
    if (a.size() != b.size()) return false;
    const int m = a.size();
    std::vector<double> da(m), db(m);
    for (int i = 0; i < m; ++i) {
        da[i] = a.adj.row(i).sum();
        db[i] = b.adj.row(i).sum();
    }
    auto sa = da, sb = db;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    for (int i = 0; i < m; ++i)
        if (std::abs(sa[i] - sb[i]) > 1e-9) return false;

    std::vector<int> p(m);
    std::iota(p.begin(), p.end(), 0);
    do {
        bool ok = true;
        for (int i = 0; i < m && ok; ++i) {
            if (std::abs(da[i] - db[p[i]]) > 1e-9) {
                ok = false;
                break;
            }
            for (int j = 0; j < m; ++j)
                if (std::abs(a.adj(i, j) - b.adj(p[i], p[j])) > 1e-9) {
                    ok = false;
                    break;
                }
        }
        if (ok) return true;
    } while (std::next_permutation(p.begin(), p.end()));
    return false;
}

TripleCounts count_triples(const LabeledGraph& g) {
    const int m = g.size();
    TripleCounts c;
    auto edge = [&](int u, int v) { return g.adj(u, v) != 0.0; };
    for (int u = 0; u < m; ++u)
        for (int v = u + 1; v < m; ++v)
            for (int w = v + 1; w < m; ++w)
                if (edge(u, v) && edge(u, w) && edge(v, w)) c.triangles += 1;
    // Wedges: unordered neighbor pairs around every center node.
    for (int v = 0; v < m; ++v)
        for (int u = 0; u < m; ++u)
            for (int w = u + 1; w < m; ++w) {
                if (u == v || w == v) continue;
                if (edge(v, u) && edge(v, w)) c.wedges += 1;
            }
    // Claws: unordered neighbor triples around every center node.
    for (int v = 0; v < m; ++v)
        for (int u = 0; u < m; ++u)
            for (int w = u + 1; w < m; ++w)
                for (int x = w + 1; x < m; ++x) {
                    if (u == v || w == v || x == v) continue;
                    if (edge(v, u) && edge(v, w) && edge(v, x)) c.claws += 1;
                }
    return c;
}

} // namespace oracles
