#include "graphalign/accel.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <string>

#include "graphalign/generators.hpp"
#include "graphalign/parallel.hpp"
#include "graphalign/rng.hpp"

namespace graphalign {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

void check_accel(const GraphSet& set, const AccelConfig& cfg, bool needs_clusters) {
    if (set.graphs.empty())
        throw std::invalid_argument("accel: empty graph set");
    if (cfg.group_size < 2)
        throw std::invalid_argument("accel: group size K must be at least 2");
    if (cfg.workers < 1)
        throw std::invalid_argument("accel: workers must be at least 1");
    if (!set.equal_sizes())
        throw std::invalid_argument("accel: graphs must have equal sizes (pad first)");
    if (needs_clusters && (cfg.clusters < 1 || cfg.clusters > set.min_nodes()))
        throw std::invalid_argument("accel: cluster count must lie in [1, min m]");
}

struct GroupCenter {
    LabeledGraph hard;
    CenterEstimate estimate;
    bool converged = true;
};

// One alignment+center computation on <= K graphs.
template <typename CenterFn>
LabeledGraph run_grouped(const GraphSet& set, const AccelConfig& cfg,
                         AccelReport* report, CenterFn&& center_of_group) {
    std::vector<LabeledGraph> current = set.graphs;
    const int stage_bound =
        static_cast<int>(std::ceil(std::log(std::max<std::size_t>(current.size(), 2)) /
                                   std::log(cfg.group_size))) +
        1;
    int stage = 0;
    CenterEstimate last_estimate;
    bool all_converged = true;

    while (true) {
        ++stage;
        const auto t0 = Clock::now();
        const int k = cfg.group_size;
        const int ngroups = static_cast<int>((current.size() + k - 1) / k);
        std::vector<GroupCenter> centers(ngroups);
        parallel_for(ngroups, cfg.workers, [&](std::size_t g) {
            const std::size_t lo = g * k;
            const std::size_t hi = std::min(current.size(), lo + k);
            GraphSet group;
            group.graphs.assign(current.begin() + lo, current.begin() + hi);
            try {
                centers[g] = center_of_group(group, mix_seed(cfg.seed, stage * 4096 + g));
            } catch (const std::exception& e) {
                throw std::runtime_error("stage " + std::to_string(stage) + " group " +
                                         std::to_string(g) + ": " + e.what());
            }
        });

        std::vector<LabeledGraph> next;
        next.reserve(ngroups);
        for (auto& c : centers) {
            all_converged = all_converged && c.converged;
            next.push_back(std::move(c.hard));
        }
        // Center sizes can differ when per-group cluster padding kicked in.
        GraphSet next_set;
        next_set.graphs = std::move(next);
        if (!next_set.equal_sizes())
            next_set = pad_with_dummies(next_set, cfg.dummy_weight);

        if (report) {
            report->stage_seconds.push_back(seconds_since(t0));
            if (report->capture_stages) report->stage_centers.push_back(next_set);
        }
        last_estimate = std::move(centers.back().estimate);
        if (ngroups == 1) {
            if (report) {
                report->stages = stage;
                report->final_center = std::move(last_estimate);
                report->converged = all_converged;
            }
            if (stage > stage_bound)
                throw std::runtime_error("accel: recursion exceeded its stage bound");
            return next_set.graphs.front();
        }
        current = std::move(next_set.graphs);
    }
}

GroupCenter direct_group_center(const GraphSet& group, const AccelConfig& cfg,
                                std::uint64_t seed) {
    GroupCenter out;
    if (group.size() == 1) {
        out.hard = group.graphs.front();
        out.estimate.soft = out.hard.adj;
        out.estimate.hard = out.hard;
        out.estimate.threshold = cfg.inner.threshold;
        return out;
    }
    MultiAlignConfig inner = cfg.inner;
    inner.workers = 1; // groups already occupy the pool
    inner.seed = seed;
    auto res = multi_align(group, inner);
    out.hard = res.center.hard;
    out.estimate = std::move(res.center);
    out.converged = res.converged;
    return out;
}

GroupCenter coarse_group_center(const GraphSet& group, const AccelConfig& cfg,
                                std::uint64_t seed, int workers);

} // namespace

LabeledGraph g_parallel(const GraphSet& set, const AccelConfig& cfg,
                        AccelReport* report) {
    check_accel(set, cfg, false);
    return run_grouped(set, cfg, report,
                       [&](const GraphSet& group, std::uint64_t seed) {
                           return direct_group_center(group, cfg, seed);
                       });
}

namespace {

// Induced subgraph on the given (ascending) nodes.
LabeledGraph induced_subgraph(const LabeledGraph& g, const std::vector<int>& nodes) {
    const int s = static_cast<int>(nodes.size());
    Matrix adj(s, s);
    for (int a = 0; a < s; ++a)
        for (int b = 0; b < s; ++b) adj(a, b) = g.adj(nodes[a], nodes[b]);
    return LabeledGraph::from_adjacency(std::move(adj));
}

GroupCenter coarse_group_center(const GraphSet& set, const AccelConfig& cfg,
                                std::uint64_t seed, int workers) {
    GroupCenter out;
    if (set.size() == 1) {
        out.hard = set.graphs.front();
        out.estimate.soft = out.hard.adj;
        out.estimate.hard = out.hard;
        out.estimate.threshold = cfg.inner.threshold;
        return out;
    }

    const int n = set.size();
    const int c = cfg.clusters;
    const std::uint64_t kseed = mix_seed(seed, 0xC0A25E11ULL);

    // Identical inputs coarsen identically because every graph shares the
    // same k-means seed.
    std::vector<Coarsening> coars(n);
    parallel_for(n, workers, [&](std::size_t i) {
        coars[i] = coarsen(set.graphs[i], c, kseed);
    });

    // Cluster correspondences from aligning the coarse graphs.
    std::vector<PermutationMatrix> sigma(n);
    bool converged = true;
    if (c == 1) {
        for (auto& s : sigma) s = PermutationMatrix::identity(1);
    } else {
        GraphSet coarse_set;
        coarse_set.graphs.reserve(n);
        for (const auto& co : coars) coarse_set.graphs.push_back(co.coarse);
        MultiAlignConfig inner = cfg.inner;
        inner.workers = workers;
        inner.seed = mix_seed(seed, 0x5EEDULL);
        auto coarse_res = multi_align(coarse_set, inner);
        sigma = coarse_res.permutations;
        converged = coarse_res.converged;
    }

    // Members of each frame cluster k (graph 0's cluster ids) per graph.
    std::vector<std::vector<std::vector<int>>> members(
        n, std::vector<std::vector<int>>(c));
    for (int i = 0; i < n; ++i) {
        const auto inv = sigma[i].perm; // cluster j of graph i -> frame cluster
        const int m = set.graphs[i].size();
        for (int v = 0; v < m; ++v)
            members[i][inv[coars[i].assignment[v]]].push_back(v);
    }
    std::vector<int> cluster_size(c, 0), offset(c, 0);
    for (int k = 0; k < c; ++k)
        for (int i = 0; i < n; ++i)
            cluster_size[k] = std::max(cluster_size[k],
                                       static_cast<int>(members[i][k].size()));
    int total = 0;
    for (int k = 0; k < c; ++k) {
        offset[k] = total;
        total += cluster_size[k];
    }

    // Within-cluster refinement: align each graph's cluster to graph 0's
    // matching cluster (star pattern), dummy-padding unequal sizes.
    PairAlignConfig pair_cfg;
    pair_cfg.max_iters = cfg.inner.inner_iters;
    pair_cfg.tol = cfg.inner.tol;

    std::vector<LabeledGraph> ref_cluster(c);
    for (int k = 0; k < c; ++k)
        ref_cluster[k] = pad_graph(induced_subgraph(set.graphs[0], members[0][k]),
                                   cluster_size[k], cfg.dummy_weight);

    // slot_of[i][v] = row/column of node v of graph i in the assembled frame
    std::vector<std::vector<int>> slot_of(n);
    std::vector<char> refine_ok(static_cast<std::size_t>(n) * c, 1);
    for (int i = 0; i < n; ++i) slot_of[i].assign(set.graphs[i].size(), -1);
    parallel_for(static_cast<std::size_t>(n) * c, workers, [&](std::size_t t) {
        const int i = static_cast<int>(t) / c;
        const int k = static_cast<int>(t) % c;
        const auto& nodes = members[i][k];
        PermutationMatrix rho;
        if (i == 0) {
            rho = PermutationMatrix::identity(cluster_size[k]);
        } else {
            const LabeledGraph sub = pad_graph(induced_subgraph(set.graphs[i], nodes),
                                               cluster_size[k], cfg.dummy_weight);
            auto pair = frank_wolfe_align(sub.adj, ref_cluster[k].adj, nullptr, pair_cfg);
            refine_ok[t] = pair.converged ? 1 : 0;
            rho = project_to_permutation(pair.alignment);
        }
        for (int r = 0; r < static_cast<int>(nodes.size()); ++r)
            slot_of[i][nodes[r]] = offset[k] + rho.perm[r];
    });
    for (char ok : refine_ok) converged = converged && (ok != 0);

    // Assemble aligned padded graphs in the common frame; dummy slots carry
    // the within-cluster dummy weight, inter-cluster dummy entries stay 0.
    std::vector<Matrix> aligned(n);
    parallel_for(n, workers, [&](std::size_t i) {
        Matrix a = Matrix::Zero(total, total);
        for (int k = 0; k < c; ++k) {
            std::vector<char> real_slot(cluster_size[k], 0);
            for (int v : members[i][k]) real_slot[slot_of[i][v] - offset[k]] = 1;
            for (int r = 0; r < cluster_size[k]; ++r)
                for (int s = r + 1; s < cluster_size[k]; ++s)
                    if (!real_slot[r] || !real_slot[s]) {
                        a(offset[k] + r, offset[k] + s) = cfg.dummy_weight;
                        a(offset[k] + s, offset[k] + r) = cfg.dummy_weight;
                    }
        }
        const int m = set.graphs[i].size();
        for (int u = 0; u < m; ++u)
            for (int v = u + 1; v < m; ++v) {
                const double w = set.graphs[i].adj(u, v);
                if (w == 0.0) continue;
                a(slot_of[i][u], slot_of[i][v]) = w;
                a(slot_of[i][v], slot_of[i][u]) = w;
            }
        aligned[i] = std::move(a);
    });

    // Center of clusters and of the blocks connecting clusters.
    Matrix soft = Matrix::Zero(total, total);
    for (int k = 0; k < c; ++k)
        for (int l = k; l < c; ++l) {
            std::vector<Matrix> stack;
            stack.reserve(n);
            for (int i = 0; i < n; ++i)
                stack.push_back(
                    aligned[i].block(offset[k], offset[l], cluster_size[k], cluster_size[l]));
            const Matrix blk = matrix_geometric_median(stack);
            soft.block(offset[k], offset[l], cluster_size[k], cluster_size[l]) = blk;
            if (l != k)
                soft.block(offset[l], offset[k], cluster_size[l], cluster_size[k]) =
                    blk.transpose();
        }
    soft = ((soft + soft.transpose()) / 2.0).cwiseMax(0.0).cwiseMin(1.0);
    soft.diagonal().setZero();

    // Relabel back into graph 0's original node order (identical inputs then
    // come back out unchanged); padding slots go to the end.
    std::vector<int> slot_of_label(total, -1);
    {
        const int m0 = set.graphs[0].size();
        std::vector<char> taken(total, 0);
        for (int v = 0; v < m0; ++v) {
            slot_of_label[v] = slot_of[0][v];
            taken[slot_of[0][v]] = 1;
        }
        int next = m0;
        for (int s = 0; s < total; ++s)
            if (!taken[s]) slot_of_label[next++] = s;
    }
    Matrix soft_out(total, total);
    for (int i = 0; i < total; ++i)
        for (int j = 0; j < total; ++j)
            soft_out(i, j) = soft(slot_of_label[i], slot_of_label[j]);

    const double tau = cfg.inner.threshold;
    Matrix hard = (soft_out.array() >= tau).cast<double>();
    out.hard = LabeledGraph::from_adjacency(hard);
    out.estimate.soft = std::move(soft_out);
    out.estimate.hard = out.hard;
    out.estimate.threshold = tau;
    out.converged = converged;
    return out;
}

} // namespace

LabeledGraph c_serial(const GraphSet& set, const AccelConfig& cfg,
                      AccelReport* report) {
    check_accel(set, cfg, true);
    const auto t0 = Clock::now();
    GroupCenter center = coarse_group_center(set, cfg, cfg.seed, cfg.workers);
    if (report) {
        report->stages = 1;
        report->stage_seconds.push_back(seconds_since(t0));
        if (report->capture_stages) {
            GraphSet stage;
            stage.graphs.push_back(center.hard);
            report->stage_centers.push_back(std::move(stage));
        }
        report->final_center = std::move(center.estimate);
        report->converged = center.converged;
    }
    return center.hard;
}

LabeledGraph cg_parallel(const GraphSet& set, const AccelConfig& cfg,
                         AccelReport* report) {
    check_accel(set, cfg, true);
    return run_grouped(set, cfg, report,
                       [&](const GraphSet& group, std::uint64_t seed) {
                           return coarse_group_center(group, cfg, seed, 1);
                       });
}

double d0_score(const GraphSet& set, const std::vector<PermutationMatrix>& perms,
                const LabeledGraph& center) {
    const int n = set.size();
    if (n == 0 || static_cast<int>(perms.size()) != n)
        throw std::invalid_argument("d0_score: set and permutation sizes must match");
    const double denom = set.graphs.front().adj.norm();
    if (denom == 0.0)
        throw std::invalid_argument("d0_score: first graph has no edges");
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        if (perms[i].size() != set.graphs[i].size() ||
            set.graphs[i].size() != center.size())
            throw std::invalid_argument("d0_score: size mismatch");
        const LabeledGraph aligned = permute_graph(set.graphs[i], perms[i]);
        acc += (aligned.adj - center.adj).norm();
    }
    return acc / (n * denom);
}

} // namespace graphalign
