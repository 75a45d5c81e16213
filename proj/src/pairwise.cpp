#include "graphalign/pairwise.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "graphalign/assignment.hpp"

namespace graphalign {

Matrix node_dissimilarity(const Matrix& za, const Matrix& zb) {
    if (za.rows() != zb.rows() || za.cols() != zb.cols())
        throw std::invalid_argument("node_dissimilarity: embedding shapes must match");
    const int m = static_cast<int>(za.rows());
    Matrix d(m, m);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            d(a, b) = (za.row(a) - zb.row(b)).norm();
    return d;
}

double joint_embedding_penalty(const Matrix& zi, const Matrix& z0) {
    if (zi.rows() != z0.rows() || zi.cols() != z0.cols())
        throw std::invalid_argument("joint_embedding_penalty: embedding shapes must match");
    double s = 0.0;
    for (int a = 0; a < zi.rows(); ++a) s += (zi.row(a) - z0.row(a)).norm();
    return s;
}

namespace {

struct Vertex {
    std::vector<int> perm;
    double weight;
};

Matrix vertex_matrix(const std::vector<int>& perm) {
    const int m = static_cast<int>(perm.size());
    Matrix s = Matrix::Zero(m, m);
    for (int i = 0; i < m; ++i) s(i, perm[i]) = 1.0;
    return s;
}

double inner_with_vertex(const Matrix& g, const std::vector<int>& perm) {
    double acc = 0.0;
    for (int i = 0; i < static_cast<int>(perm.size()); ++i) acc += g(i, perm[i]);
    return acc;
}

double objective(const Matrix& a, const Matrix& b, const Matrix* d, double beta,
                 const Matrix& p) {
    double f = (a * p - p * b).squaredNorm();
    if (d && beta != 0.0) f += beta * p.cwiseProduct(*d).sum();
    return f;
}

} // namespace

PairAlignResult frank_wolfe_align(const Matrix& a, const Matrix& b, const Matrix* d,
                                  const PairAlignConfig& cfg, const Matrix* start) {
    if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows())
        throw std::invalid_argument("frank_wolfe_align: graphs must have equal node counts");
    if (d && (d->rows() != a.rows() || d->cols() != a.rows()))
        throw std::invalid_argument("frank_wolfe_align: dissimilarity size mismatch");
    if (cfg.beta < 0.0 || cfg.max_iters < 1 || cfg.tol <= 0.0)
        throw std::invalid_argument("frank_wolfe_align: invalid configuration");

    const int m = static_cast<int>(a.rows());
    const double beta = cfg.beta;
    Matrix p = start ? *start : Matrix::Identity(m, m);

    // Away steps need the iterate as a convex combination of permutation
    // vertices, so a warm start only engages them when it is one itself.
    std::vector<Vertex> active;
    bool away_enabled = cfg.step_rule == StepRule::ExactLineSearch;
    if (away_enabled) {
        std::vector<int> as_perm(m, -1);
        bool is_vertex = true;
        for (int i = 0; i < m && is_vertex; ++i)
            for (int j = 0; j < m; ++j) {
                const double x = p(i, j);
                if (x == 1.0 && as_perm[i] < 0) {
                    as_perm[i] = j;
                } else if (x != 0.0) {
                    is_vertex = false;
                    break;
                }
            }
        if (is_vertex && std::none_of(as_perm.begin(), as_perm.end(),
                                      [](int j) { return j < 0; }))
            active.push_back({as_perm, 1.0});
        else
            away_enabled = false;
    }

    PairAlignResult res;
    double f = objective(a, b, d, beta, p);
    res.objective_trace.push_back(f);
    Matrix best_p = p;
    double best_f = f;

    int t = 0;
    for (; t < cfg.max_iters; ++t) {
        const Matrix resid = a * p - p * b;
        Matrix grad = 2.0 * (a.transpose() * resid - resid * b.transpose());
        if (d && beta != 0.0) grad += beta * (*d);

        const auto lmo = solve_assignment(grad);
        const double p_dot_g = p.cwiseProduct(grad).sum();
        const double gap_fw = p_dot_g - lmo.cost;
        if (gap_fw < cfg.tol * (1.0 + std::abs(f))) {
            res.converged = true;
            break;
        }

        // Away direction: steepest active vertex.
        int away_idx = -1;
        if (away_enabled) {
            double best_v = -1e300;
            for (int k = 0; k < static_cast<int>(active.size()); ++k) {
                const double v = inner_with_vertex(grad, active[k].perm);
                if (v > best_v) {
                    best_v = v;
                    away_idx = k;
                }
            }
            if (away_idx >= 0 && best_v - p_dot_g <= gap_fw) away_idx = -1;
        }

        double gamma;
        bool forward_step = true;
        if (cfg.step_rule == StepRule::Diminishing) {
            gamma = 2.0 / (t + 2.0);
            const Matrix s = vertex_matrix(lmo.col_of_row);
            p += gamma * (s - p);
        } else if (away_idx < 0) {
            const Matrix s = vertex_matrix(lmo.col_of_row);
            const Matrix dir = s - p;
            const Matrix mdir = a * dir - dir * b;
            const double denom = mdir.squaredNorm();
            if (denom < 1e-14) {
                res.converged = true;
                break;
            }
            double num = resid.cwiseProduct(mdir).sum();
            if (d && beta != 0.0) num += 0.5 * beta * dir.cwiseProduct(*d).sum();
            gamma = std::clamp(-num / denom, 0.0, 1.0);
            p += gamma * dir;
            if (away_enabled) {
                if (gamma == 1.0) active.clear();
                for (auto& v : active) v.weight *= 1.0 - gamma;
                auto same = std::find_if(active.begin(), active.end(), [&](const Vertex& v) {
                    return v.perm == lmo.col_of_row;
                });
                if (same == active.end())
                    active.push_back({lmo.col_of_row, gamma});
                else
                    same->weight += gamma;
            }
        } else {
            forward_step = false;
            const double lam = active[away_idx].weight;
            const double gamma_max = lam >= 1.0 ? 1e12 : lam / (1.0 - lam);
            const Matrix v = vertex_matrix(active[away_idx].perm);
            const Matrix dir = p - v;
            const Matrix mdir = a * dir - dir * b;
            const double denom = mdir.squaredNorm();
            double num = resid.cwiseProduct(mdir).sum();
            if (d && beta != 0.0) num += 0.5 * beta * dir.cwiseProduct(*d).sum();
            gamma = denom < 1e-14 ? gamma_max
                                  : std::clamp(-num / denom, 0.0, gamma_max);
            p += gamma * dir;
            for (auto& w : active) w.weight *= 1.0 + gamma;
            active[away_idx].weight -= gamma;
            if (active[away_idx].weight <= 1e-14)
                active.erase(active.begin() + away_idx);
        }

        if (away_enabled && !active.empty() && (t & 0xff) == 0xff) {
            // Periodically rebuild from the vertex weights to stop drift.
            double total = 0.0;
            for (const auto& v : active) total += v.weight;
            p.setZero();
            for (const auto& v : active)
                for (int i = 0; i < m; ++i) p(i, v.perm[i]) += v.weight / total;
        }

        const double f_new = objective(a, b, d, beta, p);
        res.objective_trace.push_back(f_new);
        if (f_new < best_f) {
            best_f = f_new;
            best_p = p;
        }
        // Drop steps make no guaranteed progress; only forward steps count
        // toward the relative-decrease stop.
        if (cfg.step_rule == StepRule::ExactLineSearch && forward_step &&
            f - f_new < cfg.tol * (1.0 + std::abs(f))) {
            f = f_new;
            res.converged = true;
            ++t;
            break;
        }
        f = f_new;
    }

    res.iterations = t;
    res.alignment.mat = std::move(best_p);
    const Matrix resid = a * res.alignment.mat - res.alignment.mat * b;
    res.distance = resid.norm();
    if (d && beta != 0.0)
        res.distance += beta * res.alignment.mat.cwiseProduct(*d).sum();
    return res;
}

PairAlignResult pairwise_distance(const LabeledGraph& a, const LabeledGraph& b,
                                  const Matrix* d, const PairAlignConfig& cfg) {
    if (a.size() != b.size())
        throw std::invalid_argument(
            "pairwise_distance: graphs must have equal node counts (pad first)");
    return frank_wolfe_align(a.adj, b.adj, d, cfg, nullptr);
}

PermutationMatrix project_to_permutation(const DoublyStochasticMatrix& p) {
    p.validate();
    // Maximizing tr(Ptilde^T P) is an assignment on -P.
    PermutationMatrix out(lexicographic_min_assignment(-p.mat));
    return out;
}

} // namespace graphalign
