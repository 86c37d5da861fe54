#pragma once

#include <Eigen/Dense>

#include <vector>

namespace attackcast {

/// Maximum-weight one-to-one assignment (Hungarian algorithm, O(n^3)).
/// Returns the assigned column per row (-1 when the row is unassignable);
/// min(rows, cols) rows receive a column. Weights must be finite.
std::vector<int> hungarian_max_assignment(const Eigen::MatrixXd& weight);

} // namespace attackcast
