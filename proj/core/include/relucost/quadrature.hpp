#ifndef RELUCOST_QUADRATURE_HPP
#define RELUCOST_QUADRATURE_HPP

#include <Eigen/Core>

namespace relucost {

// Nodes and weights on (-1, 1); integrates f against the rule's weight
// function exactly for polynomials of degree <= 2*order - 1.
struct QuadRule {
    Eigen::VectorXd nodes;
    Eigen::VectorXd weights;
    template <class F>
    double apply(F&& f) const {
        double s = 0.0;
        for (Eigen::Index i = 0; i < nodes.size(); ++i) s += weights[i] * f(nodes[i]);
        return s;
    }
};

// Weight (1-x)^a (1+x)^b with a, b > -1, via the symmetric-tridiagonal
// eigenvalue form of the three-term recurrence.
QuadRule gauss_jacobi(int order, double a, double b);

// Unit weight; Jacobi with a = b = 0.
QuadRule gauss_legendre(int order);

}  // namespace relucost

#endif
