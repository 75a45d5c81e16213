#include <doctest.h>

#include "graphalign/coarsen.hpp"
#include "graphalign/generators.hpp"
#include "graphalign/rng.hpp"

using namespace graphalign;

namespace {

// Two disjoint triangles on {0,1,2} and {3,4,5}.
LabeledGraph two_k3() {
    Matrix a = Matrix::Zero(6, 6);
    for (int base : {0, 3})
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j)
                a(base + i, base + j) = a(base + j, base + i) = 1.0;
    return LabeledGraph::from_adjacency(a);
}

long long edge_weight_between(const LabeledGraph& g, const std::vector<int>& assign,
                              int a, int b) {
    long long w = 0;
    for (int u = 0; u < g.size(); ++u)
        for (int v = u + 1; v < g.size(); ++v)
            if (g.adj(u, v) != 0.0 &&
                ((assign[u] == a && assign[v] == b) || (assign[u] == b && assign[v] == a)))
                ++w;
    return w;
}

} // namespace

TEST_CASE("coarsen separates disjoint components") {
    auto g = two_k3();
    auto co = coarsen(g, 2, 7);
    REQUIRE(co.assignment.size() == 6);
    CHECK(co.assignment[0] == co.assignment[1]);
    CHECK(co.assignment[1] == co.assignment[2]);
    CHECK(co.assignment[3] == co.assignment[4]);
    CHECK(co.assignment[4] == co.assignment[5]);
    CHECK(co.assignment[0] != co.assignment[3]);
    // intra counts 3 and 3, no inter edges; rescaled by 3
    CHECK(co.coarse.adj == Matrix::Identity(2, 2));
}

TEST_CASE("coarsen with c = m returns the rescaled adjacency") {
    auto g = two_k3();
    auto co = coarsen(g, 6, 1);
    for (int i = 0; i < 6; ++i) CHECK(co.assignment[i] == i);
    CHECK(co.coarse.adj == g.adj); // max entry is already 1
}

TEST_CASE("complete bipartite split has inter-cluster weight") {
    Matrix a = Matrix::Zero(4, 4);
    for (int u : {0, 1})
        for (int v : {2, 3}) a(u, v) = a(v, u) = 1.0;
    auto co = coarsen(LabeledGraph::from_adjacency(a), 2, 3);
    CHECK(co.coarse.adj(0, 1) > 0.0);
}

TEST_CASE("cluster edge counts reproduce the edge total") {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        auto g = gen_community({5, 6, 7}, 0.6, 0.05, 600 + seed);
        const int c = 2 + static_cast<int>(seed % 3);
        auto co = coarsen(g, c, seed);
        // every cluster nonempty
        std::vector<int> count(c, 0);
        for (int a : co.assignment) {
            REQUIRE(a >= 0);
            REQUIRE(a < c);
            ++count[a];
        }
        for (int k = 0; k < c; ++k) CHECK(count[k] > 0);

        long long total = 0;
        for (int a = 0; a < c; ++a)
            for (int b = a; b < c; ++b) total += edge_weight_between(g, co.assignment, a, b);
        CHECK(total == g.edge_count());
    }
}

TEST_CASE("coarsen is deterministic and rejects bad cluster counts") {
    auto g = gen_community({4, 4}, 0.8, 0.1, 12);
    auto a = coarsen(g, 3, 99);
    auto b = coarsen(g, 3, 99);
    CHECK(a.assignment == b.assignment);
    CHECK(a.coarse.adj == b.coarse.adj);
    CHECK_THROWS_AS(coarsen(g, 9, 1), std::invalid_argument);
    CHECK_THROWS_AS(coarsen(g, 0, 1), std::invalid_argument);
}

TEST_CASE("coarsen c=1 collapses everything") {
    auto g = two_k3();
    auto co = coarsen(g, 1, 5);
    CHECK(co.coarse.size() == 1);
    CHECK(co.coarse.adj(0, 0) == 1.0); // 6 intra edges rescaled by themselves
}
