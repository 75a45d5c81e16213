#include "graphalign/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace graphalign {

StatProfile graph_stats(const LabeledGraph& g) {
    if (!g.binary)
        throw std::invalid_argument("graph_stats: graph must be binary");
    const int m = g.size();
    StatProfile s;
    s.degree_dist.resize(m);
    s.clustering_dist.resize(m);

    const Matrix a2 = g.adj * g.adj;
    long long tri_total = 0;
    for (int v = 0; v < m; ++v) {
        const double deg = g.adj.row(v).sum();
        s.degree_dist[v] = deg;
        // (A^3)_vv = 2 * triangles through v
        const long long tri_v =
            std::llround(a2.row(v).cwiseProduct(g.adj.row(v)).sum() / 2.0);
        tri_total += tri_v;
        const long long d = std::llround(deg);
        s.wedges += d * (d - 1) / 2;
        s.claws += d * (d - 1) * (d - 2) / 6;
        s.clustering_dist[v] = d < 2 ? 0.0 : 2.0 * tri_v / (deg * (deg - 1.0));
    }
    s.triangles = tri_total / 3;

    // Assortativity: Pearson correlation of endpoint degrees over directed
    // edge occurrences; zero when degenerate.
    double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
    long long cnt = 0;
    for (int u = 0; u < m; ++u)
        for (int v = 0; v < m; ++v) {
            if (u == v || g.adj(u, v) == 0.0) continue;
            const double x = s.degree_dist[u], y = s.degree_dist[v];
            sx += x;
            sy += y;
            sxx += x * x;
            syy += y * y;
            sxy += x * y;
            ++cnt;
        }
    if (cnt > 0) {
        const double n = static_cast<double>(cnt);
        const double vx = sxx / n - (sx / n) * (sx / n);
        const double vy = syy / n - (sy / n) * (sy / n);
        const double cov = sxy / n - (sx / n) * (sy / n);
        if (vx > 1e-12 && vy > 1e-12) s.assortativity = cov / std::sqrt(vx * vy);
    }
    return s;
}

double wasserstein_1d(std::vector<double> p, std::vector<double> q) {
    if (p.empty() || q.empty())
        throw std::invalid_argument("wasserstein_1d: samples must be nonempty");
    std::sort(p.begin(), p.end());
    std::sort(q.begin(), q.end());
    const std::size_t np = p.size(), nq = q.size();
    std::size_t i = 0, j = 0;
    double pos = 0.0, w = 0.0;
    while (i < np && j < nq) {
        const double pi = static_cast<double>(i + 1) / np;
        const double qj = static_cast<double>(j + 1) / nq;
        const double next = std::min(pi, qj);
        w += (next - pos) * std::abs(p[i] - q[j]);
        pos = next;
        if (pi <= next + 1e-15) ++i;
        if (qj <= next + 1e-15) ++j;
    }
    return w;
}

namespace {

double gw_kernel(const std::vector<double>& x, const std::vector<double>& y,
                 double sigma) {
    const double w = wasserstein_1d(x, y);
    return std::exp(-w * w / (2.0 * sigma * sigma));
}

} // namespace

double mmd2(const std::vector<std::vector<double>>& xs,
            const std::vector<std::vector<double>>& ys, double sigma) {
    if (xs.size() != ys.size())
        throw std::invalid_argument("mmd2: sample sets must have equal size");
    const std::size_t n = xs.size();
    if (n < 2) throw std::invalid_argument("mmd2: needs at least two samples per set");
    if (sigma <= 0.0) throw std::invalid_argument("mmd2: sigma must be positive");

    double within = 0.0, across = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (j != i)
                within += gw_kernel(xs[i], xs[j], sigma) + gw_kernel(ys[i], ys[j], sigma);
            across += gw_kernel(xs[i], ys[j], sigma) + gw_kernel(xs[j], ys[i], sigma);
        }
    }
    const double nd = static_cast<double>(n);
    const double est = within / (nd * (nd - 1.0)) - across / (nd * nd);
    return std::max(est, 0.0);
}

std::vector<std::vector<double>> statistic_samples(const std::vector<StatProfile>& set,
                                                   int stat) {
    std::vector<std::vector<double>> out;
    out.reserve(set.size());
    for (const auto& s : set) {
        switch (stat) {
            case 0: out.push_back(s.degree_dist); break;
            case 1: out.push_back(s.clustering_dist); break;
            case 2: out.push_back({s.assortativity}); break;
            case 3: out.push_back({static_cast<double>(s.triangles)}); break;
            case 4: out.push_back({static_cast<double>(s.wedges)}); break;
            case 5: out.push_back({static_cast<double>(s.claws)}); break;
            default: throw std::invalid_argument("statistic_samples: bad index");
        }
    }
    return out;
}

namespace {

double sample_mean(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

// Scalar summary per graph: distribution statistics use their per-graph mean.
std::vector<double> scalar_summaries(const std::vector<StatProfile>& set, int stat) {
    std::vector<double> out;
    out.reserve(set.size());
    for (const auto& s : set) {
        switch (stat) {
            case 0: out.push_back(sample_mean(s.degree_dist)); break;
            case 1: out.push_back(sample_mean(s.clustering_dist)); break;
            case 2: out.push_back(s.assortativity); break;
            case 3: out.push_back(static_cast<double>(s.triangles)); break;
            case 4: out.push_back(static_cast<double>(s.wedges)); break;
            case 5: out.push_back(static_cast<double>(s.claws)); break;
        }
    }
    return out;
}

} // namespace

ScoreReport score_sets(const std::vector<StatProfile>& gen,
                       const std::vector<StatProfile>& ref, double sigma) {
    if (gen.empty() || ref.empty())
        throw std::invalid_argument("score_sets: sets must be nonempty");
    if (gen.size() != ref.size())
        throw std::invalid_argument("score_sets: sets must have equal size");
    ScoreReport rep;
    rep.sigma = sigma;
    for (int stat = 0; stat < 6; ++stat) {
        rep.mmd2_terms[stat] =
            mmd2(statistic_samples(gen, stat), statistic_samples(ref, stat), sigma);
        rep.s_mmd += rep.mmd2_terms[stat];

        const auto gs = scalar_summaries(gen, stat);
        const auto rs = scalar_summaries(ref, stat);
        const double mu_g = sample_mean(gs);
        const double mu_r = sample_mean(rs);
        double var_r = 0.0;
        for (double x : rs) var_r += (x - mu_r) * (x - mu_r);
        var_r /= static_cast<double>(rs.size());
        rep.mvr_terms[stat] =
            (mu_r - mu_g) * (mu_r - mu_g) / std::max(var_r, 1e-12);
        rep.s_mvr += rep.mvr_terms[stat];
    }
    rep.s_mmd /= 12.0;
    rep.s_mvr /= 6.0;
    return rep;
}

double s_mmd(const std::vector<StatProfile>& gen, const std::vector<StatProfile>& ref,
             double sigma) {
    return score_sets(gen, ref, sigma).s_mmd;
}

double s_mvr(const std::vector<StatProfile>& gen, const std::vector<StatProfile>& ref) {
    if (gen.empty() || ref.empty())
        throw std::invalid_argument("s_mvr: sets must be nonempty");
    // s_mvr alone tolerates unequal set sizes.
    double total = 0.0;
    for (int stat = 0; stat < 6; ++stat) {
        const auto gs = scalar_summaries(gen, stat);
        const auto rs = scalar_summaries(ref, stat);
        double mu_g = sample_mean(gs), mu_r = sample_mean(rs), var_r = 0.0;
        for (double x : rs) var_r += (x - mu_r) * (x - mu_r);
        var_r /= static_cast<double>(rs.size());
        total += (mu_r - mu_g) * (mu_r - mu_g) / std::max(var_r, 1e-12);
    }
    return total / 6.0;
}

} // namespace graphalign
