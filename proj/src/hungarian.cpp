#include "attackcast/hungarian.hpp"

#include "attackcast/errors.hpp"

#include <limits>

namespace attackcast {

namespace {

// Potentials formulation of the Hungarian algorithm for a min-cost perfect
// matching of rows into columns, requiring rows <= cols. 1-indexed internally.
std::vector<int> solve_min_cost(const Eigen::MatrixXd& cost) {
    const int n = static_cast<int>(cost.rows());
    const int m = static_cast<int>(cost.cols());
    const double inf = std::numeric_limits<double>::infinity();

    std::vector<double> u(static_cast<std::size_t>(n) + 1, 0.0);
    std::vector<double> v(static_cast<std::size_t>(m) + 1, 0.0);
    std::vector<int> p(static_cast<std::size_t>(m) + 1, 0);   // row matched to column j
    std::vector<int> way(static_cast<std::size_t>(m) + 1, 0); // augmenting-path back pointers

    for (int i = 1; i <= n; ++i) {
        p[0] = i;
        int j0 = 0;
        std::vector<double> minv(static_cast<std::size_t>(m) + 1, inf);
        std::vector<bool> used(static_cast<std::size_t>(m) + 1, false);
        do {
            used[static_cast<std::size_t>(j0)] = true;
            const int i0 = p[static_cast<std::size_t>(j0)];
            double delta = inf;
            int j1 = 0;
            for (int j = 1; j <= m; ++j) {
                if (used[static_cast<std::size_t>(j)]) continue;
                const double cur = cost(i0 - 1, j - 1) - u[static_cast<std::size_t>(i0)] -
                                   v[static_cast<std::size_t>(j)];
                if (cur < minv[static_cast<std::size_t>(j)]) {
                    minv[static_cast<std::size_t>(j)] = cur;
                    way[static_cast<std::size_t>(j)] = j0;
                }
                if (minv[static_cast<std::size_t>(j)] < delta) {
                    delta = minv[static_cast<std::size_t>(j)];
                    j1 = j;
                }
            }
            for (int j = 0; j <= m; ++j) {
                if (used[static_cast<std::size_t>(j)]) {
                    u[static_cast<std::size_t>(p[static_cast<std::size_t>(j)])] += delta;
                    v[static_cast<std::size_t>(j)] -= delta;
                } else {
                    minv[static_cast<std::size_t>(j)] -= delta;
                }
            }
            j0 = j1;
        } while (p[static_cast<std::size_t>(j0)] != 0);
        do {
            const int j1 = way[static_cast<std::size_t>(j0)];
            p[static_cast<std::size_t>(j0)] = p[static_cast<std::size_t>(j1)];
            j0 = j1;
        } while (j0 != 0);
    }

    std::vector<int> row_to_col(static_cast<std::size_t>(n), -1);
    for (int j = 1; j <= m; ++j) {
        if (p[static_cast<std::size_t>(j)] != 0) {
            row_to_col[static_cast<std::size_t>(p[static_cast<std::size_t>(j)]) - 1] = j - 1;
        }
    }
    return row_to_col;
}

} // namespace

std::vector<int> hungarian_max_assignment(const Eigen::MatrixXd& weight) {
    if (weight.rows() == 0 || weight.cols() == 0) {
        return std::vector<int>(static_cast<std::size_t>(weight.rows()), -1);
    }
    if (!weight.allFinite()) {
        throw NonFiniteError("hungarian_max_assignment: non-finite weight");
    }
    if (weight.rows() <= weight.cols()) {
        return solve_min_cost(-weight);
    }
    // transpose so rows <= cols, then invert the assignment
    const std::vector<int> col_to_row = solve_min_cost(-weight.transpose());
    std::vector<int> row_to_col(static_cast<std::size_t>(weight.rows()), -1);
    for (std::size_t j = 0; j < col_to_row.size(); ++j) {
        if (col_to_row[j] >= 0) {
            row_to_col[static_cast<std::size_t>(col_to_row[j])] = static_cast<int>(j);
        }
    }
    return row_to_col;
}

} // namespace attackcast
