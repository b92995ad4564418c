#ifndef RELUCOST_TEST_HELPERS_HPP
#define RELUCOST_TEST_HELPERS_HPP

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "relucost/dataset.hpp"
#include "relucost/relu_net.hpp"
#include "relucost/rng.hpp"

namespace test_helpers {

// Random net with nonzero biases so no hinge sits exactly on a probe point.
inline relucost::ReluNet make_net(std::uint64_t seed, int input_dim,
                                  const std::vector<int>& widths) {
    relucost::Rng rng(seed);
    relucost::ReluNet net;
    net.hidden.resize(widths.size());
    int fan_in = input_dim;
    for (std::size_t l = 0; l < widths.size(); ++l) {
        const int w = widths[l];
        const double sc = 1.0 / std::sqrt(static_cast<double>(fan_in));
        net.hidden[l].W.resize(w, fan_in);
        net.hidden[l].b.resize(w);
        for (int i = 0; i < w; ++i) {
            for (int j = 0; j < fan_in; ++j) net.hidden[l].W(i, j) = sc * rng.normal();
            net.hidden[l].b[i] = 0.3 * rng.normal();
        }
        fan_in = w;
    }
    net.out_w.resize(fan_in);
    const double sc = 1.0 / std::sqrt(static_cast<double>(fan_in));
    for (int i = 0; i < fan_in; ++i) net.out_w[i] = sc * rng.normal();
    net.out_b = 0.1 * rng.normal();
    return net;
}

inline Eigen::MatrixXd random_points(std::uint64_t seed, int dim, int count) {
    relucost::Rng rng(seed);
    Eigen::MatrixXd X(dim, count);
    for (int j = 0; j < count; ++j)
        for (int i = 0; i < dim; ++i) X(i, j) = rng.normal();
    return X;
}

}  // namespace test_helpers

#endif
