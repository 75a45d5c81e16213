#include <doctest.h>

#include "graphalign/graph.hpp"

using namespace graphalign;

namespace {

LabeledGraph path3() {
    Matrix a = Matrix::Zero(3, 3);
    a(0, 1) = a(1, 0) = 1.0;
    a(1, 2) = a(2, 1) = 1.0;
    return LabeledGraph::from_adjacency(a);
}

} // namespace

TEST_CASE("adjacency validation") {
    Matrix bad = Matrix::Zero(2, 2);
    bad(0, 1) = 1.0; // asymmetric
    CHECK_THROWS_AS(LabeledGraph::from_adjacency(bad), std::invalid_argument);

    Matrix range = Matrix::Zero(2, 2);
    range(0, 1) = range(1, 0) = 1.5;
    CHECK_THROWS_AS(LabeledGraph::from_adjacency(range), std::invalid_argument);

    auto g = path3();
    CHECK(g.binary);
    CHECK(g.edge_count() == 2);

    Matrix w = Matrix::Zero(2, 2);
    w(0, 1) = w(1, 0) = 0.25;
    CHECK_FALSE(LabeledGraph::from_adjacency(w).binary);
}

TEST_CASE("permutation basics") {
    auto id = PermutationMatrix::identity(4);
    CHECK(id.is_identity());
    PermutationMatrix p({2, 0, 3, 1});
    p.validate();
    CHECK(p.then(p.inverse()).is_identity());
    CHECK(p.inverse().then(p).is_identity());

    const Matrix pm = p.to_matrix();
    for (int i = 0; i < 4; ++i) CHECK(pm(i, p.perm[i]) == 1.0);

    CHECK_THROWS_AS(PermutationMatrix({0, 0, 1}).validate(), std::invalid_argument);
}

TEST_CASE("permutation composition matches matrix product") {
    PermutationMatrix p({1, 2, 0}), q({2, 1, 0});
    const Matrix prod = p.to_matrix() * q.to_matrix();
    CHECK(prod.isApprox(p.then(q).to_matrix()));
}

TEST_CASE("doubly stochastic checks") {
    Matrix u = Matrix::Constant(3, 3, 1.0 / 3.0);
    CHECK(is_doubly_stochastic(u));
    u(0, 0) += 1e-4;
    CHECK_FALSE(is_doubly_stochastic(u));
    DoublyStochasticMatrix ds{Matrix::Identity(2, 2)};
    CHECK_NOTHROW(ds.validate());
}
