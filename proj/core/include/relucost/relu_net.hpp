#ifndef RELUCOST_RELU_NET_HPP
#define RELUCOST_RELU_NET_HPP

#include <string>
#include <vector>

#include <Eigen/Core>

#include "relucost/dataset.hpp"

namespace relucost {

struct Layer {
    Eigen::MatrixXd W;  // rows = units
    Eigen::VectorXd b;
};

// Depth-2 or depth-3 ReLU network
//   f(x) = out_w' [ ... [W_1 x + b_1]_+ ... ]_+ + out_b.
// Treated as an immutable value: every transformation builds a new net, so
// concurrent readers never race. All parameters are IEEE doubles.
struct ReluNet {
    std::vector<Layer> hidden;  // one entry for depth 2, two for depth 3
    Eigen::VectorXd out_w;
    double out_b = 0.0;

    int depth() const { return static_cast<int>(hidden.size()) + 1; }
    int input_dim() const { return static_cast<int>(hidden.front().W.cols()); }
    int width(int hidden_layer) const { return static_cast<int>(hidden[hidden_layer].W.rows()); }
};

// Checks the shape chain and that every entry is finite. Throws ShapeError.
void validate(const ReluNet& net);

// Forward pass at one point. The output-layer dot product is accumulated with
// error-free transforms so piecewise-linear identities survive to ~1e-15 even
// when unit contributions cancel at magnitude ~n^2.
double evaluate(const ReluNet& net, const Eigen::Ref<const Eigen::VectorXd>& x);

// Forward pass for a batch of points (columns of X); plain GEMM path.
Eigen::VectorXd evaluate_batch(const ReluNet& net, const Eigen::Ref<const Eigen::MatrixXd>& X);

// Sum of squares of every weight and bias, including the output layer.
double weight_sq_norm(const ReluNet& net);

// Representation-cost witness: cost_value is weight_sq_norm(witness)/depth,
// always recomputed from the witness rather than cached elsewhere.
struct CostCertificate {
    double cost_value = 0.0;
    int depth = 0;
    int width_bound = -1;  // -1 means unbounded
    ReluNet witness;
    std::vector<std::string> notes;
};

CostCertificate make_certificate(ReluNet witness, int width_bound = -1);

// Parameter-shaped gradient container (same layout as ReluNet).
struct NetGrad {
    std::vector<Layer> hidden;
    Eigen::VectorXd out_w;
    double out_b = 0.0;
};

// Mean squared error (1/m) sum_i (f(x_i) - y_i)^2.
double empirical_loss(const ReluNet& net, const SphereDataset& data);

// empirical_loss + (lambda/depth) * weight_sq_norm.
double objective(const ReluNet& net, const SphereDataset& data, double lambda);

// Gradient of the objective above. The ReLU subgradient at a kink is fixed to 0.
// loss_out, when given, receives the empirical loss from the same forward pass.
NetGrad analytic_gradient(const ReluNet& net, const SphereDataset& data, double lambda,
                          double* loss_out = nullptr);

// Central finite differences of the objective, one parameter at a time. Only
// meaningful when no pre-activation sits within ~h of zero on the batch.
NetGrad finite_difference_gradient(const ReluNet& net, const SphereDataset& data, double lambda,
                                   double h = 1e-5);

// Smallest |pre-activation| over all hidden units and batch points; a guard
// for comparing the two gradients away from kinks.
double min_abs_preactivation(const ReluNet& net, const SphereDataset& data);

}  // namespace relucost

#endif
