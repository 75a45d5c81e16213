#include <doctest.h>

#include <cmath>

#include "graphalign/generators.hpp"
#include "graphalign/pairwise.hpp"
#include "graphalign/rng.hpp"
#include "oracles.hpp"

using namespace graphalign;

namespace {

LabeledGraph random_graph(int m, double p, std::uint64_t seed) {
    return gen_community({m}, p, 0.0, seed);
}

LabeledGraph k3() { return gen_community({3}, 1.0, 0.0, 0); }

LabeledGraph p3() {
    Matrix a = Matrix::Zero(3, 3);
    a(0, 1) = a(1, 0) = a(1, 2) = a(2, 1) = 1.0;
    return LabeledGraph::from_adjacency(a);
}

} // namespace

TEST_CASE("node_dissimilarity") {
    Matrix z(2, 2);
    z << 0.0, 0.0, 3.0, 4.0;
    auto d = node_dissimilarity(z, z);
    CHECK(d(0, 0) == 0.0);
    CHECK(d(1, 1) == 0.0);
    CHECK(d(0, 1) == doctest::Approx(5.0));

    auto scaled = node_dissimilarity(Matrix(2.0 * z), Matrix(2.0 * z));
    CHECK(scaled(0, 1) == doctest::Approx(10.0));

    CHECK_THROWS_AS(node_dissimilarity(z, Matrix::Zero(3, 2)), std::invalid_argument);
}

TEST_CASE("joint_embedding_penalty") {
    Matrix zi(1, 2), z0(1, 2);
    zi << 3.0, 4.0;
    z0 << 0.0, 0.0;
    CHECK(joint_embedding_penalty(zi, zi) == 0.0);
    CHECK(joint_embedding_penalty(zi, z0) == doctest::Approx(5.0));

    Matrix a(3, 2), b(3, 2);
    a << 1, 2, 3, 4, 5, 6;
    b << 0, 1, 1, 0, 2, 2;
    Matrix ap(3, 2), bp(3, 2);
    ap << 3, 4, 5, 6, 1, 2; // same row permutation applied to both
    bp << 1, 0, 2, 2, 0, 1;
    CHECK(joint_embedding_penalty(a, b) ==
          doctest::Approx(joint_embedding_penalty(ap, bp)));
}

TEST_CASE("pairwise distance of a graph with itself is zero") {
    auto g = random_graph(6, 0.5, 3);
    PairAlignConfig cfg;
    auto res = pairwise_distance(g, g, nullptr, cfg);
    CHECK(res.objective_trace.back() <= 1e-6);
    CHECK(res.distance <= 1e-6);
    CHECK(res.alignment.is_valid(1e-9, 1e-7));
}

TEST_CASE("permuted path is recovered exactly") {
    auto a = p3();
    auto b = permute_graph(a, PermutationMatrix({2, 1, 0}));
    PairAlignConfig cfg;
    auto res = pairwise_distance(a, b, nullptr, cfg);
    CHECK(res.distance <= 1e-6);
    CHECK(oracles::best_permutation_distance(a.adj, b.adj) == doctest::Approx(0.0));
    auto perm = project_to_permutation(res.alignment);
    CHECK(permute_graph(a, perm).adj == b.adj);
}

TEST_CASE("K3 vs P3 relaxed and combinatorial values") {
    auto a = k3();
    auto b = p3();
    PairAlignConfig cfg;
    cfg.max_iters = 20000;
    cfg.tol = 1e-12;
    auto res = pairwise_distance(a, b, nullptr, cfg);
    // uniform doubly stochastic matrix achieves sqrt(2/3)
    CHECK(res.distance <= std::sqrt(2.0 / 3.0) + 1e-6);
    CHECK(oracles::best_permutation_distance(a.adj, b.adj) ==
          doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("relaxation lower bound and isomorphic recovery for m <= 6") {
    Rng rng(99);
    PairAlignConfig cfg;
    cfg.max_iters = 50000;
    cfg.tol = 1e-14;
    for (int trial = 0; trial < 8; ++trial) {
        const int m = 4 + static_cast<int>(rng.below(3));
        auto a = random_graph(m, 0.5, 500 + trial);
        auto b = random_graph(m, 0.5, 900 + trial);
        auto res = pairwise_distance(a, b, nullptr, cfg);
        CHECK(res.distance <=
              oracles::best_permutation_distance(a.adj, b.adj) + 1e-6);
        CHECK(res.alignment.is_valid(1e-9, 1e-7));

        PermutationMatrix q(rng.permutation(m));
        auto c = permute_graph(a, q);
        auto iso = pairwise_distance(a, c, nullptr, cfg);
        CHECK(iso.distance <= 1e-6);
    }
}

TEST_CASE("symmetry of the pairwise distance with D = 0") {
    PairAlignConfig cfg;
    cfg.max_iters = 50000;
    cfg.tol = 1e-14;
    for (int trial = 0; trial < 10; ++trial) {
        auto a = random_graph(8, 0.4, 1300 + trial);
        auto b = random_graph(8, 0.6, 1700 + trial);
        auto ab = pairwise_distance(a, b, nullptr, cfg);
        auto ba = pairwise_distance(b, a, nullptr, cfg);
        CHECK(std::abs(ab.distance - ba.distance) <= 1e-6);
    }
}

TEST_CASE("objective trace is non-increasing under exact line search") {
    auto a = random_graph(10, 0.5, 31);
    auto b = random_graph(10, 0.5, 37);
    PairAlignConfig cfg;
    auto res = pairwise_distance(a, b, nullptr, cfg);
    for (std::size_t i = 1; i < res.objective_trace.size(); ++i)
        CHECK(res.objective_trace[i] <= res.objective_trace[i - 1] + 1e-12);
}

TEST_CASE("iterates remain doubly stochastic with the dissimilarity term") {
    auto a = random_graph(7, 0.5, 41);
    auto b = random_graph(7, 0.5, 43);
    Rng rng(5);
    Matrix d(7, 7);
    for (int i = 0; i < 7; ++i)
        for (int j = 0; j < 7; ++j) d(i, j) = rng.uniform();
    PairAlignConfig cfg;
    cfg.beta = 0.5;
    auto res = pairwise_distance(a, b, &d, cfg);
    CHECK(res.alignment.is_valid(1e-9, 1e-7));
    // reported value re-evaluates the unsquared objective at the solution
    const Matrix& p = res.alignment.mat;
    const double expect =
        (a.adj * p - p * b.adj).norm() + 0.5 * p.cwiseProduct(d).sum();
    CHECK(res.distance == doctest::Approx(expect));
}

TEST_CASE("diminishing step rule also solves the problem") {
    auto a = p3();
    auto b = permute_graph(a, PermutationMatrix({1, 2, 0}));
    PairAlignConfig cfg;
    cfg.step_rule = StepRule::Diminishing;
    cfg.max_iters = 4000;
    auto res = pairwise_distance(a, b, nullptr, cfg);
    CHECK(res.distance <= 1e-3);
}

TEST_CASE("non-convergence is flagged, not thrown") {
    auto a = random_graph(8, 0.5, 51);
    auto b = random_graph(8, 0.5, 53);
    PairAlignConfig cfg;
    cfg.max_iters = 2;
    cfg.tol = 1e-16;
    auto res = pairwise_distance(a, b, nullptr, cfg);
    CHECK_FALSE(res.converged);
    CHECK(res.alignment.is_valid(1e-9, 1e-7));
}

TEST_CASE("projection to permutations") {
    Matrix already = PermutationMatrix({1, 0}).to_matrix();
    CHECK(project_to_permutation(DoublyStochasticMatrix{already}).perm ==
          std::vector<int>{1, 0});

    Matrix mixed(2, 2);
    mixed << 0.6, 0.4, 0.4, 0.6;
    CHECK(project_to_permutation(DoublyStochasticMatrix{mixed}).perm ==
          std::vector<int>{0, 1});

    Matrix tie = Matrix::Constant(2, 2, 0.5);
    CHECK(project_to_permutation(DoublyStochasticMatrix{tie}).perm ==
          std::vector<int>{0, 1});

    Matrix bad = Matrix::Constant(2, 2, 0.7);
    CHECK_THROWS_AS(project_to_permutation(DoublyStochasticMatrix{bad}),
                    std::invalid_argument);
}
