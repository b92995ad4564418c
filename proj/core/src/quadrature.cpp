#include "relucost/quadrature.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "relucost/errors.hpp"

namespace relucost {

QuadRule gauss_jacobi(int order, double a, double b) {
    if (order < 1) throw UsageError("gauss_jacobi: order must be >= 1");
    if (a <= -1.0 || b <= -1.0) throw UsageError("gauss_jacobi: exponents must exceed -1");

    // Monic Jacobi recurrence coefficients; k = 1 needs its own formula since
    // the general one degenerates when a + b + 1 = 0.
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(order, order);
    const double s = a + b;
    J(0, 0) = (b - a) / (s + 2.0);
    for (int k = 1; k < order; ++k) {
        const double two_k = 2.0 * k + s;
        J(k, k) = (b - a) * (b + a) / (two_k * (two_k + 2.0));
        double beta_sq;
        if (k == 1) {
            beta_sq = 4.0 * (a + 1.0) * (b + 1.0) / ((s + 2.0) * (s + 2.0) * (s + 3.0));
        } else {
            beta_sq = 4.0 * k * (k + a) * (k + b) * (k + s) /
                      (two_k * two_k * (two_k + 1.0) * (two_k - 1.0));
        }
        const double off = std::sqrt(beta_sq);
        J(k, k - 1) = off;
        J(k - 1, k) = off;
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    const double mu0 = std::pow(2.0, s + 1.0) *
                       std::exp(std::lgamma(a + 1.0) + std::lgamma(b + 1.0) - std::lgamma(s + 2.0));

    QuadRule rule;
    rule.nodes = es.eigenvalues();
    rule.weights.resize(order);
    for (int i = 0; i < order; ++i) {
        const double v0 = es.eigenvectors()(0, i);
        rule.weights[i] = mu0 * v0 * v0;
    }
    return rule;
}

QuadRule gauss_legendre(int order) { return gauss_jacobi(order, 0.0, 0.0); }

}  // namespace relucost
