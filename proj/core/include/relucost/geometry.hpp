#ifndef RELUCOST_GEOMETRY_HPP
#define RELUCOST_GEOMETRY_HPP

#include <cstdint>
#include <functional>

#include <Eigen/Core>

#include "relucost/dataset.hpp"
#include "relucost/relu_net.hpp"

namespace relucost {

// Density of t = <x1, x2> for independent uniform factors on S^{d-1}:
// c_d (1 - t^2)^((d-3)/2) on (-1, 1), with c_d = Gamma(d/2)/(sqrt(pi) Gamma((d-1)/2)).
double ip_density(int d, double t);

// Distribution function of the same law, a regularized incomplete beta.
double ip_cdf(int d, double t);

// m independent uniform points on S^{d-1} x S^{d-1}, one RNG stream per
// point so the result does not depend on evaluation chunking.
SphereDataset sample_product_sphere(int d, int m, std::uint64_t seed);

// Sets y[i] to the target value at column i.
void label_with_target(SphereDataset& data);

double min_pairwise_distance(const Eigen::MatrixXd& X);

// Tail bound P(min pairwise distance <= eta) < m^2 eta^(d-1).
double collision_probability_bound(int d, int m, double eta);

using RefFn = std::function<double(const Eigen::Ref<const Eigen::VectorXd>&)>;

struct McEstimate {
    double value = 0.0;
    double se = 0.0;  // delta-method standard error of value
    long n = 0;
};

// sqrt of the Monte Carlo mean of (net(x) - ref(x))^2 over the product of
// spheres; same point streams as sample_product_sphere.
McEstimate mc_l2_distance(const ReluNet& net, int d, const RefFn& ref, long n,
                          std::uint64_t seed);

// Monte Carlo maximum of |net(x) - ref(x)| over the same sampling scheme.
double mc_sup_distance(const ReluNet& net, int d, const RefFn& ref, long n,
                       std::uint64_t seed);

}  // namespace relucost

#endif
