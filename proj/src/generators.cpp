#include "graphalign/generators.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>
#include <stdexcept>

#include "graphalign/rng.hpp"

namespace graphalign {

LabeledGraph gen_community(const std::vector<int>& sizes, double p,
                           double inter_frac, std::uint64_t seed) {
    if (sizes.empty())
        throw std::invalid_argument("gen_community: sizes must be nonempty");
    for (int s : sizes)
        if (s <= 0) throw std::invalid_argument("gen_community: sizes must be positive");
    if (p < 0.0 || p > 1.0)
        throw std::invalid_argument("gen_community: p must lie in [0,1]");
    if (inter_frac < 0.0)
        throw std::invalid_argument("gen_community: inter_frac must be nonnegative");

    int m = 0;
    for (int s : sizes) m += s;
    Matrix adj = Matrix::Zero(m, m);
    Rng rng(seed);

    std::vector<int> community(m);
    int base = 0, cid = 0;
    for (int s : sizes) {
        for (int u = base; u < base + s; ++u) community[u] = cid;
        for (int u = base; u < base + s; ++u)
            for (int v = u + 1; v < base + s; ++v)
                if (rng.uniform() < p) adj(u, v) = adj(v, u) = 1.0;
        base += s;
        ++cid;
    }

    const int inter = static_cast<int>(std::floor(inter_frac * m));
    if (inter > 0) {
        std::vector<std::pair<int, int>> pool;
        for (int u = 0; u < m; ++u)
            for (int v = u + 1; v < m; ++v)
                if (community[u] != community[v] && adj(u, v) == 0.0)
                    pool.emplace_back(u, v);
        if (static_cast<int>(pool.size()) < inter)
            throw std::invalid_argument(
                "gen_community: not enough absent cross-community pairs");
        for (int k = 0; k < inter; ++k) { // partial Fisher-Yates
            const std::size_t j = k + rng.below(pool.size() - k);
            std::swap(pool[k], pool[j]);
            adj(pool[k].first, pool[k].second) = 1.0;
            adj(pool[k].second, pool[k].first) = 1.0;
        }
    }
    return LabeledGraph::from_adjacency(std::move(adj));
}

LabeledGraph gen_grid(int rows, int cols) {
    if (rows < 1 || cols < 1)
        throw std::invalid_argument("gen_grid: rows and cols must be positive");
    const int m = rows * cols;
    Matrix adj = Matrix::Zero(m, m);
    auto id = [cols](int r, int c) { return r * cols + c; };
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            if (c + 1 < cols) adj(id(r, c), id(r, c + 1)) = adj(id(r, c + 1), id(r, c)) = 1.0;
            if (r + 1 < rows) adj(id(r, c), id(r + 1, c)) = adj(id(r + 1, c), id(r, c)) = 1.0;
        }
    return LabeledGraph::from_adjacency(std::move(adj));
}

LabeledGraph gen_ego_ba(int total_nodes, int attach, int hops, std::uint64_t seed) {
    if (attach < 1) throw std::invalid_argument("gen_ego_ba: attach must be positive");
    if (total_nodes <= attach)
        throw std::invalid_argument("gen_ego_ba: total_nodes must exceed attach");
    if (hops < 0) throw std::invalid_argument("gen_ego_ba: hops must be nonnegative");

    Rng rng(seed);
    std::vector<std::vector<int>> nbrs(total_nodes);
    std::vector<int> repeated; // nodes repeated once per incident edge
    std::vector<int> targets(attach);
    for (int i = 0; i < attach; ++i) targets[i] = i;
    for (int v = attach; v < total_nodes; ++v) {
        for (int t : targets) {
            nbrs[v].push_back(t);
            nbrs[t].push_back(v);
            repeated.push_back(t);
            repeated.push_back(v);
        }
        if (v + 1 == total_nodes) break;
        std::set<int> chosen;
        while (static_cast<int>(chosen.size()) < attach)
            chosen.insert(repeated[rng.below(repeated.size())]);
        targets.assign(chosen.begin(), chosen.end());
    }

    const int center = static_cast<int>(rng.below(total_nodes));
    std::vector<int> dist(total_nodes, -1);
    std::deque<int> queue{center};
    dist[center] = 0;
    while (!queue.empty()) {
        const int u = queue.front();
        queue.pop_front();
        if (dist[u] == hops) continue;
        for (int w : nbrs[u])
            if (dist[w] < 0) {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
    }
    std::vector<int> keep;
    for (int u = 0; u < total_nodes; ++u)
        if (dist[u] >= 0) keep.push_back(u);
    std::vector<int> label(total_nodes, -1);
    for (int i = 0; i < static_cast<int>(keep.size()); ++i) label[keep[i]] = i;

    const int m = static_cast<int>(keep.size());
    Matrix adj = Matrix::Zero(m, m);
    for (int u : keep)
        for (int w : nbrs[u])
            if (label[w] >= 0) adj(label[u], label[w]) = 1.0;
    return LabeledGraph::from_adjacency(std::move(adj));
}

LabeledGraph perturb(const LabeledGraph& g, double rho, std::uint64_t seed) {
    if (!g.binary)
        throw std::invalid_argument("perturb: graph must be binary");
    if (rho < 0.0 || rho > 1.0)
        throw std::invalid_argument("perturb: rho must lie in [0,1]");

    std::vector<std::pair<int, int>> edges, absent;
    const int m = g.size();
    for (int u = 0; u < m; ++u)
        for (int v = u + 1; v < m; ++v)
            (g.adj(u, v) != 0.0 ? edges : absent).emplace_back(u, v);

    const long long k = std::llround(rho * static_cast<double>(edges.size()));
    if (k == 0) return g;
    if (static_cast<long long>(absent.size()) < k)
        throw std::runtime_error("perturb: not enough absent pairs to re-add " +
                                 std::to_string(k) + " edges");

    Rng rng(seed);
    Matrix adj = g.adj;
    for (long long i = 0; i < k; ++i) { // remove k existing edges u.a.r.
        const std::size_t j = i + rng.below(edges.size() - i);
        std::swap(edges[i], edges[j]);
        adj(edges[i].first, edges[i].second) = 0.0;
        adj(edges[i].second, edges[i].first) = 0.0;
    }
    for (long long i = 0; i < k; ++i) { // re-add among pairs absent originally
        const std::size_t j = i + rng.below(absent.size() - i);
        std::swap(absent[i], absent[j]);
        adj(absent[i].first, absent[i].second) = 1.0;
        adj(absent[i].second, absent[i].first) = 1.0;
    }
    return LabeledGraph::from_adjacency(std::move(adj), g.features);
}

LabeledGraph pad_graph(const LabeledGraph& g, int target, double dummy_weight) {
    if (dummy_weight <= 0.0 || dummy_weight >= 1.0)
        throw std::invalid_argument("pad_graph: dummy_weight must lie in (0,1)");
    const int m = g.size();
    if (target < m)
        throw std::invalid_argument("pad_graph: target smaller than graph");
    if (target == m) return g;
    Matrix adj = Matrix::Zero(target, target);
    adj.topLeftCorner(m, m) = g.adj;
    for (int i = m; i < target; ++i)
        for (int j = 0; j < target; ++j)
            if (j != i) adj(i, j) = adj(j, i) = dummy_weight;
    std::optional<Matrix> feats;
    if (g.features) {
        feats = Matrix::Zero(target, g.features->cols());
        feats->topRows(m) = *g.features;
    }
    return LabeledGraph::from_adjacency(std::move(adj), std::move(feats));
}

GraphSet pad_with_dummies(const GraphSet& set, double dummy_weight) {
    GraphSet out;
    out.name = set.name;
    if (set.graphs.empty()) return out;
    const int target = set.max_nodes();
    out.graphs.reserve(set.graphs.size());
    for (const auto& g : set.graphs)
        out.graphs.push_back(pad_graph(g, target, dummy_weight));
    return out;
}

LabeledGraph permute_graph(const LabeledGraph& g, const PermutationMatrix& p) {
    if (p.size() != g.size())
        throw std::invalid_argument("permute_graph: permutation size mismatch");
    p.validate();
    const int m = g.size();
    Matrix adj(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            adj(p.perm[i], p.perm[j]) = g.adj(i, j);
    std::optional<Matrix> feats;
    if (g.features) {
        feats = Matrix(m, g.features->cols());
        for (int i = 0; i < m; ++i) feats->row(p.perm[i]) = g.features->row(i);
    }
    return LabeledGraph::from_adjacency(std::move(adj), std::move(feats));
}

} // namespace graphalign
