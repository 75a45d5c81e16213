#include "graphalign/multi.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "graphalign/generators.hpp"
#include "graphalign/parallel.hpp"

namespace graphalign {

const char* method_name(MultiMethod m) {
    return m == MultiMethod::Fermat ? "fermat" : "galign";
}

MultiMethod method_from_name(const std::string& name) {
    if (name == "fermat") return MultiMethod::Fermat;
    if (name == "galign") return MultiMethod::GAlign;
    throw std::invalid_argument("unknown method: " + name);
}

void project_birkhoff(Matrix& x, int max_sweeps, double tol) {
    const int m = static_cast<int>(x.rows());
    const Vector ones = Vector::Ones(m);
    Matrix incr = Matrix::Zero(m, m); // Dykstra correction for the nonneg set
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        // Exact projection onto {X1 = 1, X^T 1 = 1}: subtract u 1^T + 1 v^T.
        const Vector r = x * ones - ones;
        const Vector c = x.transpose() * ones - ones;
        const double shift = r.sum() / (2.0 * m * m);
        const Vector u = r / m - Vector::Constant(m, shift);
        const Vector v = c / m - Vector::Constant(m, shift);
        x -= u * ones.transpose() + ones * v.transpose();

        const Matrix y = x + incr;
        x = y.cwiseMax(0.0);
        incr = y - x;

        double viol = -std::min(0.0, x.minCoeff());
        viol = std::max(viol, (x * ones - ones).cwiseAbs().maxCoeff());
        viol = std::max(viol, (x.transpose() * ones - ones).cwiseAbs().maxCoeff());
        if (viol < tol) break;
    }
    x = x.cwiseMax(0.0);
}

Matrix matrix_geometric_median(const std::vector<Matrix>& points) {
    if (points.empty())
        throw std::invalid_argument("matrix_geometric_median: empty stack");
    Matrix center = Matrix::Zero(points[0].rows(), points[0].cols());
    for (const auto& p : points) center += p;
    center /= static_cast<double>(points.size());
    center = center.cwiseMax(0.0).cwiseMin(1.0);
    if (points.size() <= 2) return center;

    for (int it = 0; it < 1000; ++it) {
        Matrix next = Matrix::Zero(center.rows(), center.cols());
        double wsum = 0.0;
        for (const auto& p : points) {
            const double w = 1.0 / std::max((p - center).norm(), 1e-12);
            next += w * p;
            wsum += w;
        }
        next /= wsum;
        next = next.cwiseMax(0.0).cwiseMin(1.0);
        const double change = (next - center).norm();
        const double scale = 1.0 + center.norm();
        center = next;
        if (change < 1e-9 * scale) break;
    }
    return center;
}

namespace {

LabeledGraph threshold_graph(const Matrix& soft, double tau) {
    Matrix hard = (soft.array() >= tau).cast<double>();
    hard = ((hard + hard.transpose()) / 2.0).unaryExpr(
        [](double v) { return v >= 0.5 ? 1.0 : 0.0; });
    return LabeledGraph::from_adjacency(std::move(hard));
}

CenterEstimate make_center(Matrix soft, double tau) {
    CenterEstimate c;
    soft = ((soft + soft.transpose()) / 2.0).cwiseMax(0.0).cwiseMin(1.0);
    c.hard = threshold_graph(soft, tau);
    c.soft = std::move(soft);
    c.threshold = tau;
    return c;
}

void check_multi_preconditions(const GraphSet& set, const MultiAlignConfig& cfg) {
    if (set.size() < 2)
        throw std::invalid_argument("multi-alignment needs at least two graphs");
    if (!set.equal_sizes())
        throw std::invalid_argument("multi-alignment needs equal-size graphs (pad first)");
    if (cfg.threshold <= 0.0 || cfg.threshold >= 1.0)
        throw std::invalid_argument("threshold must lie in (0,1)");
    if (cfg.ridge <= 0.0) throw std::invalid_argument("ridge must be positive");
    if (cfg.outer_iters < 1 || cfg.inner_iters < 1 || cfg.tol <= 0.0)
        throw std::invalid_argument("invalid iteration budget or tolerance");
}

double fermat_objective(const std::vector<Matrix>& adj, const std::vector<Matrix>& p,
                        const Matrix& a0) {
    double f = 0.0;
    for (std::size_t i = 0; i < adj.size(); ++i)
        f += (adj[i] * p[i] - p[i] * a0).squaredNorm();
    return f;
}

} // namespace

Matrix fermat_center_update(const std::vector<Matrix>& adj,
                            const std::vector<Matrix>& alignments, double ridge) {
    if (adj.empty() || adj.size() != alignments.size())
        throw std::invalid_argument("fermat_center_update: size mismatch");
    const int m = static_cast<int>(adj[0].rows());
    Matrix lhs = ridge * Matrix::Identity(m, m);
    Matrix rhs = Matrix::Zero(m, m);
    for (std::size_t i = 0; i < adj.size(); ++i) {
        lhs += alignments[i].transpose() * alignments[i];
        rhs += alignments[i].transpose() * adj[i] * alignments[i];
    }
    Eigen::LDLT<Matrix> solver(lhs);
    Matrix a0 = solver.solve(rhs);
    if (solver.info() != Eigen::Success || !a0.allFinite())
        throw std::runtime_error("singular center system");
    return ((a0 + a0.transpose()) / 2.0).cwiseMax(0.0).cwiseMin(1.0);
}

MultiAlignResult fermat_align(const GraphSet& set, const MultiAlignConfig& cfg) {
    check_multi_preconditions(set, cfg);
    const int n = set.size();
    const int m = set.graphs[0].size();

    std::vector<Matrix> adj(n);
    for (int i = 0; i < n; ++i) adj[i] = set.graphs[i].adj;

    std::vector<Matrix> p(n, Matrix::Identity(m, m));
    Matrix a0 = Matrix::Zero(m, m);
    for (int i = 0; i < n; ++i) a0 += adj[i];
    a0 /= static_cast<double>(n);

    PairAlignConfig inner;
    inner.max_iters = cfg.inner_iters;
    inner.tol = cfg.tol;
    inner.step_rule = StepRule::ExactLineSearch;

    MultiAlignResult res;
    double f = fermat_objective(adj, p, a0);
    res.objective_trace.push_back(f);
    res.converged = false;

    for (int t = 0; t < cfg.outer_iters; ++t) {
        // P-step: n independent Frank-Wolfe solves. Each runs from the
        // identity; the previous alignment is kept when it is better, so the
        // alternation stays monotone.
        parallel_for(n, cfg.workers, [&](std::size_t i) {
            Matrix cand = frank_wolfe_align(adj[i], a0, nullptr, inner).alignment.mat;
            if ((adj[i] * cand - cand * a0).squaredNorm() <=
                (adj[i] * p[i] - p[i] * a0).squaredNorm())
                p[i] = std::move(cand);
        });

        // A0-step: ridge least squares, symmetrized and clamped to [0,1].
        Matrix a0_new;
        try {
            a0_new = fermat_center_update(adj, p, cfg.ridge);
        } catch (const std::exception& e) {
            throw std::runtime_error("fermat_align: " + std::string(e.what()) +
                                     " at outer iteration " + std::to_string(t));
        }

        // Clamping can in rare cases undo progress; keep the previous center
        // then so the trace stays non-increasing.
        const double f_mid = fermat_objective(adj, p, a0);
        const double f_new = fermat_objective(adj, p, a0_new);
        if (f_new <= f_mid) a0 = a0_new;
        const double f_next = std::min(f_mid, f_new);

        res.objective_trace.push_back(f_next);
        const bool done = (f - f_next) < cfg.tol * (1.0 + std::abs(f));
        f = f_next;
        if (done) {
            res.converged = true;
            break;
        }
    }

    res.relaxed_objective = f;
    res.relaxed_alignments = p;

    std::vector<PermutationMatrix> to_center(n);
    for (int i = 0; i < n; ++i)
        to_center[i] = project_to_permutation(DoublyStochasticMatrix{p[i]});
    const PermutationMatrix first_inv = to_center[0].inverse();
    res.permutations.resize(n);
    for (int i = 0; i < n; ++i) res.permutations[i] = to_center[i].then(first_inv);

    // A0 lives in the center frame; pull it into graph 0's frame so it is
    // consistent with the returned permutations.
    Matrix soft(m, m);
    const auto& r0 = to_center[0].perm;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) soft(i, j) = a0(r0[i], r0[j]);
    res.center = make_center(std::move(soft), cfg.threshold);
    return res;
}

namespace {

struct GAlignWork {
    const std::vector<Matrix>& adj;
    int n, m;
    int workers;

    double objective(const Matrix& big) const {
        std::vector<double> costs(static_cast<std::size_t>(n) * n, 0.0);
        parallel_for(costs.size(), workers, [&](std::size_t k) {
            const int i = static_cast<int>(k) / n;
            const int j = static_cast<int>(k) % n;
            if (i == j) return;
            const auto pij = big.block(i * m, j * m, m, m);
            costs[k] = (adj[i] * pij - pij * adj[j]).squaredNorm();
        });
        double f = 0.0;
        for (double c : costs) f += c; // fixed order merge
        return 0.5 * f;
    }

    Matrix gradient(const Matrix& big) const {
        Matrix g = Matrix::Zero(big.rows(), big.cols());
        parallel_for(static_cast<std::size_t>(n) * n, workers, [&](std::size_t k) {
            const int i = static_cast<int>(k) / n;
            const int j = static_cast<int>(k) % n;
            if (i == j) return;
            const auto pij = big.block(i * m, j * m, m, m);
            const Matrix resid = adj[i] * pij - pij * adj[j];
            g.block(i * m, j * m, m, m) =
                adj[i].transpose() * resid - resid * adj[j].transpose();
        });
        return g;
    }

    // Blockwise Birkhoff projection with identity diagonal blocks.
    void project_structure(Matrix& big, int sweeps, double tol) const {
        parallel_for(static_cast<std::size_t>(n) * n, workers, [&](std::size_t k) {
            const int i = static_cast<int>(k) / n;
            const int j = static_cast<int>(k) % n;
            Matrix blk = big.block(i * m, j * m, m, m);
            if (i == j) {
                big.block(i * m, j * m, m, m) = Matrix::Identity(m, m);
                return;
            }
            project_birkhoff(blk, sweeps, tol);
            big.block(i * m, j * m, m, m) = blk;
        });
    }

    double structure_violation(const Matrix& big) const {
        double viol = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const auto blk = big.block(i * m, j * m, m, m);
                if (i == j) {
                    viol = std::max(viol,
                                    (blk - Matrix::Identity(m, m)).cwiseAbs().maxCoeff());
                    continue;
                }
                viol = std::max(viol, -std::min(0.0, blk.minCoeff()));
                viol = std::max(viol, (blk.rowwise().sum().array() - 1.0).abs().maxCoeff());
                viol = std::max(viol, (blk.colwise().sum().array() - 1.0).abs().maxCoeff());
            }
        return viol;
    }

    // Projection onto the PSD cone; returns the PSD violation seen on entry.
    double project_psd(Matrix& big) const {
        Matrix sym = (big + big.transpose()) / 2.0;
        Eigen::SelfAdjointEigenSolver<Matrix> es(sym);
        if (es.info() != Eigen::Success)
            throw std::runtime_error("galign: eigendecomposition failed");
        const double asym = (big - sym).cwiseAbs().maxCoeff();
        const double neg = -std::min(0.0, es.eigenvalues().minCoeff());
        const Vector clipped = es.eigenvalues().cwiseMax(0.0);
        big = es.eigenvectors() * clipped.asDiagonal() * es.eigenvectors().transpose();
        return std::max(asym, neg);
    }

    // Dykstra alternation between the block-structure set and the PSD cone.
    void dykstra_project(Matrix& big, int budget, double tol) const {
        Matrix inc_a = Matrix::Zero(big.rows(), big.cols());
        Matrix inc_b = Matrix::Zero(big.rows(), big.cols());
        for (int sweep = 0; sweep < budget; ++sweep) {
            Matrix y = big + inc_a;
            project_structure(y, 50, 1e-9);
            inc_a = big + inc_a - y;

            Matrix z = y + inc_b;
            const double psd_viol = project_psd(z);
            inc_b = y + inc_b - z;
            big = z;

            if (std::max(psd_viol, structure_violation(big)) < tol) break;
        }
    }
};

} // namespace

MultiAlignResult galign(const GraphSet& set, const MultiAlignConfig& cfg) {
    check_multi_preconditions(set, cfg);
    const int n = set.size();
    const int m = set.graphs[0].size();

    std::vector<Matrix> adj(n);
    for (int i = 0; i < n; ++i) adj[i] = set.graphs[i].adj;
    GAlignWork work{adj, n, m, cfg.workers};

    // All-identity blocks: feasible (J_n (x) I_m is PSD) and consistent.
    BlockAlignment blocks(n, m);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            blocks.block(i, j) = Matrix::Identity(m, m);

    double lipschitz = 0.0;
    for (int i = 0; i < n; ++i) {
        Eigen::SelfAdjointEigenSolver<Matrix> es(adj[i]);
        lipschitz = std::max(lipschitz, es.eigenvalues().cwiseAbs().maxCoeff());
    }
    lipschitz = 2.0 * lipschitz * lipschitz;
    double eta = cfg.step_size > 0.0 ? cfg.step_size
                                     : (lipschitz > 0.0 ? 1.0 / lipschitz : 1.0);

    MultiAlignResult res;
    double f = work.objective(blocks.big);
    res.objective_trace.push_back(f);
    res.converged = false;

    for (int t = 0; t < cfg.outer_iters; ++t) {
        const Matrix grad = work.gradient(blocks.big);
        Matrix candidate;
        double f_new = f;
        while (true) {
            candidate = blocks.big - eta * grad;
            work.dykstra_project(candidate, 50, 1e-8);
            f_new = work.objective(candidate);
            if (f_new <= f + 1e-12 || eta < 1e-12) break;
            eta /= 2.0; // spec'd safeguard: halve on objective increase
        }
        if (f_new > f + 1e-12) break; // step size exhausted
        blocks.big = candidate;
        res.objective_trace.push_back(f_new);
        const bool done = (f - f_new) < cfg.tol * (1.0 + std::abs(f));
        f = f_new;
        if (done) {
            res.converged = true;
            break;
        }
    }

    // Feasible blocks at reporting time even if PSD holds only approximately.
    work.project_structure(blocks.big, 2000, 1e-12);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            blocks.block(j, i) = blocks.block(i, j).transpose().eval();

    res.relaxed_objective = work.objective(blocks.big);
    res.objective_trace.push_back(res.relaxed_objective);
    res.permutations = extract_alignments(blocks);
    res.center = center_graph(align_set(set, res.permutations), cfg.threshold);
    res.blocks = std::move(blocks);
    return res;
}

MultiAlignResult multi_align(const GraphSet& set, const MultiAlignConfig& cfg) {
    return cfg.method == MultiMethod::Fermat ? fermat_align(set, cfg) : galign(set, cfg);
}

std::vector<PermutationMatrix> extract_alignments(const BlockAlignment& b) {
    std::vector<PermutationMatrix> perms(b.n);
    for (int i = 0; i < b.n; ++i) {
        DoublyStochasticMatrix ds{b.block(i, 0)};
        perms[i] = project_to_permutation(ds);
    }
    return perms;
}

GraphSet align_set(const GraphSet& set, const std::vector<PermutationMatrix>& perms) {
    if (static_cast<int>(perms.size()) != set.size())
        throw std::invalid_argument("align_set: permutation count mismatch");
    GraphSet out;
    out.name = set.name;
    out.graphs.reserve(set.graphs.size());
    for (int i = 0; i < set.size(); ++i)
        out.graphs.push_back(permute_graph(set.graphs[i], perms[i]));
    return out;
}

CenterEstimate center_graph(const GraphSet& aligned, double tau) {
    if (aligned.graphs.empty())
        throw std::invalid_argument("center_graph: empty set");
    if (!aligned.equal_sizes())
        throw std::invalid_argument("center_graph: graphs must have equal sizes");
    if (tau <= 0.0 || tau >= 1.0)
        throw std::invalid_argument("center_graph: tau must lie in (0,1)");
    std::vector<Matrix> stack;
    stack.reserve(aligned.graphs.size());
    for (const auto& g : aligned.graphs) stack.push_back(g.adj);
    return make_center(matrix_geometric_median(stack), tau);
}

} // namespace graphalign
