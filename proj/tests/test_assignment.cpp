#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "graphalign/assignment.hpp"
#include "graphalign/rng.hpp"

using namespace graphalign;

namespace {

// Exhaustive minimum over all permutations (n <= 7).
double brute_force_cost(const Matrix& cost) {
    const int n = static_cast<int>(cost.rows());
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    double best = 1e300;
    do {
        double c = 0.0;
        for (int i = 0; i < n; ++i) c += cost(i, p[i]);
        best = std::min(best, c);
    } while (std::next_permutation(p.begin(), p.end()));
    return best;
}

} // namespace

TEST_CASE("assignment optimality against brute force") {
    Rng rng(77);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 2 + static_cast<int>(rng.below(5));
        Matrix cost(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) cost(i, j) = rng.uniform() * 10.0 - 5.0;
        const auto res = solve_assignment(cost);
        CHECK(res.cost == doctest::Approx(brute_force_cost(cost)).epsilon(1e-9));
        // potentials are feasible and tight on matched edges
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j)
                CHECK(cost(i, j) - res.u[i] - res.v[j] >= -1e-9);
            CHECK(cost(i, res.col_of_row[i]) - res.u[i] - res.v[res.col_of_row[i]] ==
                  doctest::Approx(0.0).epsilon(1e-9));
        }
    }
}

TEST_CASE("lexicographic refinement on ties") {
    Matrix tie = Matrix::Constant(2, 2, 0.5);
    CHECK(lexicographic_min_assignment(tie) == std::vector<int>{0, 1});

    Matrix all = Matrix::Constant(4, 4, 1.0);
    CHECK(lexicographic_min_assignment(all) == std::vector<int>{0, 1, 2, 3});

    // Two optimal assignments, costs 1+3 and 2+2; identity wins the tie.
    Matrix twin(2, 2);
    twin << 1.0, 2.0, 2.0, 3.0;
    CHECK(lexicographic_min_assignment(twin) == std::vector<int>{0, 1});

    // Unique optimum must be returned even when lexicographically large.
    Matrix unique(2, 2);
    unique << 5.0, 0.0, 0.0, 5.0;
    CHECK(lexicographic_min_assignment(unique) == std::vector<int>{1, 0});
}

TEST_CASE("lexicographic refinement keeps optimality") {
    Rng rng(123);
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 2 + static_cast<int>(rng.below(5));
        Matrix cost(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                cost(i, j) = static_cast<double>(rng.below(4)); // many ties
        const auto lex = lexicographic_min_assignment(cost);
        double c = 0.0;
        std::vector<char> used(n, 0);
        for (int i = 0; i < n; ++i) {
            c += cost(i, lex[i]);
            used[lex[i]] = 1;
        }
        CHECK(std::count(used.begin(), used.end(), 1) == n);
        CHECK(c == doctest::Approx(brute_force_cost(cost)).epsilon(1e-9));

        // No optimal assignment may precede it lexicographically.
        std::vector<int> p(n);
        std::iota(p.begin(), p.end(), 0);
        do {
            double pc = 0.0;
            for (int i = 0; i < n; ++i) pc += cost(i, p[i]);
            if (pc <= c + 1e-9) CHECK(lex <= p);
        } while (std::next_permutation(p.begin(), p.end()));
    }
}
