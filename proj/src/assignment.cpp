#include "graphalign/assignment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace graphalign {

AssignmentResult solve_assignment(const Matrix& cost) {
    if (cost.rows() != cost.cols() || cost.rows() == 0)
        throw std::invalid_argument("solve_assignment: matrix must be square and nonempty");
    if (!cost.allFinite())
        throw std::invalid_argument("solve_assignment: costs must be finite");

    const int n = static_cast<int>(cost.rows());
    const double inf = std::numeric_limits<double>::infinity();
    // 1-based with column 0 as the virtual source.
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1);
    std::vector<int> p(n + 1, 0), way(n + 1, 0);
    std::vector<char> used(n + 1);

    for (int i = 1; i <= n; ++i) {
        p[0] = i;
        int j0 = 0;
        std::fill(minv.begin(), minv.end(), inf);
        std::fill(used.begin(), used.end(), 0);
        do {
            used[j0] = 1;
            const int i0 = p[j0];
            int j1 = -1;
            double delta = inf;
            for (int j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            const int j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0 != 0);
    }

    AssignmentResult res;
    res.col_of_row.assign(n, -1);
    res.u.assign(n, 0.0);
    res.v.assign(n, 0.0);
    for (int j = 1; j <= n; ++j) res.col_of_row[p[j] - 1] = j - 1;
    for (int i = 1; i <= n; ++i) res.u[i - 1] = u[i];
    for (int j = 1; j <= n; ++j) res.v[j - 1] = v[j];
    for (int i = 0; i < n; ++i) res.cost += cost(i, res.col_of_row[i]);
    return res;
}

namespace {

bool augment(int row, const std::vector<std::vector<int>>& tight,
             const std::vector<char>& fixed_col, std::vector<char>& visited,
             std::vector<int>& match_row, std::vector<int>& match_col) {
    for (int j : tight[row]) {
        if (fixed_col[j] || visited[j]) continue;
        visited[j] = 1;
        if (match_col[j] < 0 ||
            augment(match_col[j], tight, fixed_col, visited, match_row, match_col)) {
            match_col[j] = row;
            match_row[row] = j;
            return true;
        }
    }
    return false;
}

} // namespace

std::vector<int> lexicographic_min_assignment(const Matrix& cost) {
    const auto base = solve_assignment(cost);
    const int n = static_cast<int>(cost.rows());
    const double eps = 1e-9 * (1.0 + cost.cwiseAbs().maxCoeff());

    // Any optimal assignment satisfies complementary slackness with the
    // returned potentials, so it lives inside this subgraph.
    std::vector<std::vector<int>> tight(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (cost(i, j) - base.u[i] - base.v[j] <= eps) tight[i].push_back(j);
    for (int i = 0; i < n; ++i) { // matched edges are tight by construction
        const int j = base.col_of_row[i];
        if (!std::binary_search(tight[i].begin(), tight[i].end(), j))
            tight[i].insert(std::lower_bound(tight[i].begin(), tight[i].end(), j), j);
    }

    std::vector<int> match_row = base.col_of_row, match_col(n, -1);
    for (int i = 0; i < n; ++i) match_col[match_row[i]] = i;
    std::vector<char> fixed_col(n, 0);
    std::vector<char> visited(n);

    for (int i = 0; i < n; ++i) {
        for (int j : tight[i]) {
            if (fixed_col[j]) continue;
            if (j >= match_row[i]) break; // current column is the best candidate
            // Steal j from its row: detach row i first so its old column is
            // free for the displaced row's augmenting search.
            const int displaced = match_col[j];
            const int old = match_row[i];
            match_row[i] = -1;
            match_col[old] = -1;
            std::fill(visited.begin(), visited.end(), 0);
            visited[j] = 1;
            if (augment(displaced, tight, fixed_col, visited, match_row, match_col)) {
                match_row[i] = j;
                match_col[j] = i;
                break;
            }
            match_row[i] = old; // restore; the search mutates nothing on failure
            match_col[old] = i;
        }
        fixed_col[match_row[i]] = 1;
    }
    return match_row;
}

} // namespace graphalign
