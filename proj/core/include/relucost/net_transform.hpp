#ifndef RELUCOST_NET_TRANSFORM_HPP
#define RELUCOST_NET_TRANSFORM_HPP

#include <Eigen/Core>

#include "relucost/relu_net.hpp"

namespace relucost {

// Depth-2 network written with unit-norm hinge directions:
//   f(x) = sum_k a_k [w_k.x + b_k]_+ + c   with  |w_k|^2 + b_k^2 = 1.
// units stores (w_k, b_k) as rows. The reduced cost sum |a_k| + c^2/2 equals
// the best |phi|^2/2 over all rescalings of the source parameterization.
struct NormalizedDepth2Form {
    Eigen::MatrixXd units;  // width x (input_dim + 1)
    Eigen::VectorXd a;
    double c = 0.0;
    int input_dim = 0;

    int width() const { return static_cast<int>(units.rows()); }
    double reduced_cost() const;
    double evaluate(const Eigen::Ref<const Eigen::VectorXd>& x) const;

    // Balanced network: hinge k scaled by sqrt(|a_k|) so each unit carries
    // equal mass in both layers and |phi|^2/2 equals reduced_cost().
    ReluNet to_net() const;
};

struct BalanceResult {
    NormalizedDepth2Form form;
    CostCertificate cert;
};

// Rescales every unit by positive homogeneity of the ReLU; function values are
// unchanged. Units with w = 0, b = 0 contribute nothing and are dropped (noted
// in the certificate). Certified cost never exceeds |phi|^2/2 of the input.
BalanceResult balance_depth2(const ReluNet& net);

struct LiftResult {
    ReluNet net;
    CostCertificate cert;
};

// Depth-2 to depth-3 by inserting the identity layer [I; -I] (first hidden
// width 2 * input_dim), after balancing. Uses [t]_+ - [-t]_+ = t, so values are
// preserved up to round-off, and the certificate satisfies
// cost <= (4d)/3 + (4/3) * balanced depth-2 cost.
LiftResult lift_to_depth3(const ReluNet& net);

// Function-preserving global rescaling of a depth-3 net: layer 1 by s, layer 2
// weights by t/s (biases by t), output weights by 1/t, choosing (s, t) to
// minimize the total squared parameter norm. The objective is a posynomial in
// (s^2, t^2), hence convex in logs, and is solved to machine precision.
ReluNet balance_depth3_scales(const ReluNet& net);

}  // namespace relucost

#endif
