#ifndef RELUCOST_DATASET_HPP
#define RELUCOST_DATASET_HPP

#include <cstdint>

#include <Eigen/Core>

namespace relucost {

// Sample on the product of two unit spheres in R^{2d}. Columns of X are points;
// each half of a column has unit norm, so every point has norm sqrt(2).
// y is empty for unlabeled data, otherwise one label per column in [-1,1].
struct SphereDataset {
    int d = 0;
    Eigen::MatrixXd X;  // 2d x m
    Eigen::VectorXd y;  // m or empty
    std::uint64_t seed = 0;

    int m() const { return static_cast<int>(X.cols()); }
    bool labeled() const { return y.size() == X.cols() && X.cols() > 0; }
};

// Largest deviation of any half-point norm from 1.
double max_half_norm_deviation(const SphereDataset& data);

}  // namespace relucost

#endif
