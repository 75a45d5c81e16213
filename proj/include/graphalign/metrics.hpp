#pragma once

#include <array>
#include <string>
#include <vector>

#include "graphalign/graph.hpp"

namespace graphalign {

// Per-graph summary statistics. Distribution-valued statistics keep the raw
// per-node value lists; counts satisfy wedges = sum_v C(deg v, 2),
// claws = sum_v C(deg v, 3), triangles = trace(A^3)/6.
struct StatProfile {
    std::vector<double> degree_dist;     // per-node degrees
    std::vector<double> clustering_dist; // per-node clustering coefficients
    double assortativity = 0.0;          // 0 on degenerate inputs
    long long triangles = 0;
    long long wedges = 0;
    long long claws = 0;
};

inline constexpr std::array<const char*, 6> kStatisticNames = {
    "degree_dist", "clustering", "assortativity", "triangles", "wedges", "claws"};

// All six statistics of a binary graph; weighted inputs are rejected.
StatProfile graph_stats(const LabeledGraph& g);

// First Wasserstein distance between the empirical distributions of two
// nonempty samples (sorted-sample quantile integral).
double wasserstein_1d(std::vector<double> p, std::vector<double> q);

// Unbiased MMD^2 estimator under the Gaussian-Wasserstein RBF kernel
// k(x,y) = exp(-W1(x,y)^2 / (2 sigma^2)), clamped below at zero. Samples are
// per-graph value lists; scalar statistics enter as singletons, for which W1
// is the absolute difference.
double mmd2(const std::vector<std::vector<double>>& xs,
            const std::vector<std::vector<double>>& ys, double sigma);

struct ScoreReport {
    double s_mmd = 0.0;
    double s_mvr = 0.0;
    std::array<double, 6> mmd2_terms{};
    std::array<double, 6> mvr_terms{};
    double sigma = 1.0;
};

// (1/12) sum of the six per-statistic MMD^2 terms; lies in [0,1].
double s_mmd(const std::vector<StatProfile>& gen, const std::vector<StatProfile>& ref,
             double sigma);

// (1/6) sum of squared mean differences over reference variance; distribution
// statistics are summarized by their per-graph mean first.
double s_mvr(const std::vector<StatProfile>& gen, const std::vector<StatProfile>& ref);

ScoreReport score_sets(const std::vector<StatProfile>& gen,
                       const std::vector<StatProfile>& ref, double sigma);

// Per-graph kernel samples of statistic `stat` (index into kStatisticNames).
std::vector<std::vector<double>> statistic_samples(const std::vector<StatProfile>& set,
                                                   int stat);

} // namespace graphalign
