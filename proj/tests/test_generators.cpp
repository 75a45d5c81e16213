#include <doctest.h>

#include <cmath>

#include "graphalign/generators.hpp"
#include "graphalign/metrics.hpp"
#include "graphalign/rng.hpp"

using namespace graphalign;

TEST_CASE("gen_community edge cases") {
    auto k3 = gen_community({3}, 1.0, 0.0, 1);
    CHECK(k3.size() == 3);
    CHECK(k3.edge_count() == 3);

    auto empty = gen_community({2, 2}, 0.0, 0.0, 1);
    CHECK(empty.size() == 4);
    CHECK(empty.edge_count() == 0);

    CHECK_THROWS_AS(gen_community({}, 0.5, 0.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(gen_community({3}, 1.5, 0.0, 1), std::invalid_argument);
}

TEST_CASE("gen_community expected intra edges and exact inter count") {
    // E[intra] = p * sum C(s,2) = 0.7 * (10 + 105 + 136) = 175.7
    const std::vector<int> sizes{5, 15, 17};
    double total = 0.0;
    const int trials = 200;
    for (int t = 0; t < trials; ++t) {
        auto g = gen_community(sizes, 0.7, 0.0, 1000 + t);
        CHECK(g.size() == 37);
        total += static_cast<double>(g.edge_count());
    }
    const double mean = total / trials;
    CHECK(mean == doctest::Approx(175.7).epsilon(0.05));

    auto g = gen_community(sizes, 0.7, 0.05, 7);
    auto base = gen_community(sizes, 0.7, 0.0, 7);
    CHECK(g.edge_count() == base.edge_count() + 1); // floor(0.05*37) = 1

    auto h = gen_community({13, 15, 17}, 0.7, 0.05, 7);
    auto hbase = gen_community({13, 15, 17}, 0.7, 0.0, 7);
    CHECK(h.size() == 45);
    CHECK(h.edge_count() == hbase.edge_count() + 2); // floor(0.05*45) = 2
}

TEST_CASE("generators are deterministic per seed") {
    auto a = gen_community({4, 5}, 0.5, 0.1, 42);
    auto b = gen_community({4, 5}, 0.5, 0.1, 42);
    CHECK(a.adj == b.adj);
    auto c = gen_ego_ba(60, 3, 1, 9);
    auto d = gen_ego_ba(60, 3, 1, 9);
    CHECK(c.adj == d.adj);
    CHECK(perturb(a, 0.3, 5).adj == perturb(a, 0.3, 5).adj);
}

TEST_CASE("gen_grid node and edge counts") {
    auto g = gen_grid(6, 6);
    CHECK(g.size() == 36);
    CHECK(g.edge_count() == 60); // 2rc - r - c

    CHECK(gen_grid(1, 1).edge_count() == 0);
    CHECK(gen_grid(2, 2).edge_count() == 4);
    CHECK_THROWS_AS(gen_grid(0, 3), std::invalid_argument);
}

TEST_CASE("gen_ego_ba") {
    auto single = gen_ego_ba(50, 2, 0, 3);
    CHECK(single.size() == 1);

    auto tree = gen_ego_ba(3, 1, 2, 11);
    CHECK(tree.size() == 3); // attach=1 gives a tree; 2 hops cover 3 nodes
    CHECK(tree.edge_count() == 2);

    for (std::uint64_t s = 0; s < 5; ++s) {
        auto g = gen_ego_ba(950, 5, 1, s);
        CHECK(g.size() >= 6); // center plus its >= attach neighbors
    }
    CHECK_THROWS_AS(gen_ego_ba(5, 5, 1, 0), std::invalid_argument);
}

TEST_CASE("perturb preserves counts and fails on full graphs") {
    auto g = gen_community({5, 6}, 0.6, 0.1, 21);
    const auto edges = g.edge_count();
    for (int t = 0; t < 100; ++t) {
        auto p = perturb(g, 0.4, 100 + t);
        CHECK(p.edge_count() == edges);
        CHECK(p.size() == g.size());
    }
    CHECK(perturb(g, 0.0, 1).adj == g.adj);

    auto k3 = gen_community({3}, 1.0, 0.0, 1);
    CHECK_THROWS_AS(perturb(k3, 1.0, 1), std::runtime_error);
}

TEST_CASE("pad_with_dummies") {
    GraphSet set;
    Matrix a2 = Matrix::Zero(2, 2);
    a2(0, 1) = a2(1, 0) = 1.0;
    set.graphs.push_back(LabeledGraph::from_adjacency(a2));
    Matrix a3 = Matrix::Zero(3, 3);
    a3(0, 2) = a3(2, 0) = 1.0;
    set.graphs.push_back(LabeledGraph::from_adjacency(a3));

    auto padded = pad_with_dummies(set, 0.01);
    CHECK(padded.graphs[0].size() == 3);
    CHECK(padded.graphs[0].adj(2, 0) == 0.01);
    CHECK(padded.graphs[0].adj(2, 1) == 0.01);
    CHECK(padded.graphs[0].adj.topLeftCorner(2, 2) == a2);
    CHECK(padded.graphs[1].adj == a3); // already at the maximum

    GraphSet empty;
    CHECK(pad_with_dummies(empty, 0.01).graphs.empty());

    GraphSet equal;
    equal.graphs = {set.graphs[1], set.graphs[1]};
    auto same = pad_with_dummies(equal, 0.01);
    CHECK(same.graphs[0].adj == a3);
    CHECK(same.graphs[1].adj == a3);
}

TEST_CASE("permute_graph conjugation") {
    Matrix a = Matrix::Zero(3, 3);
    a(0, 1) = a(1, 0) = 1.0;
    a(1, 2) = a(2, 1) = 1.0;
    auto g = LabeledGraph::from_adjacency(a);

    CHECK(permute_graph(g, PermutationMatrix::identity(3)).adj == a);

    PermutationMatrix swap02({2, 1, 0});
    auto h = permute_graph(g, swap02);
    CHECK(h.adj(2, 1) == 1.0);
    CHECK(h.adj(1, 0) == 1.0);
    CHECK(h.adj(0, 2) == 0.0);
    CHECK(permute_graph(h, swap02.inverse()).adj == a);

    CHECK_THROWS_AS(permute_graph(g, PermutationMatrix::identity(4)),
                    std::invalid_argument);
}

TEST_CASE("permute_graph preserves statistics") {
    auto g = gen_community({4, 6}, 0.6, 0.1, 17);
    Rng rng(3);
    PermutationMatrix p(rng.permutation(g.size()));
    auto h = permute_graph(g, p);
    auto sg = graph_stats(g);
    auto sh = graph_stats(h);
    CHECK(sg.triangles == sh.triangles);
    CHECK(sg.wedges == sh.wedges);
    CHECK(sg.claws == sh.claws);
    CHECK(sg.assortativity == doctest::Approx(sh.assortativity).epsilon(1e-12));
    auto dg = sg.degree_dist, dh = sh.degree_dist;
    std::sort(dg.begin(), dg.end());
    std::sort(dh.begin(), dh.end());
    CHECK(dg == dh);
}
