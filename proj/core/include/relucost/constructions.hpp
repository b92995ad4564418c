#ifndef RELUCOST_CONSTRUCTIONS_HPP
#define RELUCOST_CONSTRUCTIONS_HPP

#include <Eigen/Core>

#include "relucost/dataset.hpp"
#include "relucost/relu_net.hpp"

namespace relucost {

// Piecewise-linear wave with n unit-amplitude cycles on [-1,1], zero outside,
// evaluated from its breakpoint structure: kinks at -1 + (2k-1)/(2n) with
// values (-1)^k, zeros at -1 + k/n.
double sawtooth(int n, double t);

// Exact depth-2 realization of sawtooth(n, .); input dim 1, width 2n+2.
ReluNet sawtooth_net(int n);

// sawtooth(n, beta*t) = a' [u t + q]_+ with u'q = 0 and |u| = 1.
struct SawtoothParams {
    Eigen::VectorXd a, u, q;
    double evaluate(double t) const;
};
SawtoothParams normalized_sawtooth_params(int n, double beta);

// Depth-2 approximation of t^2: hinge pairs at +-(s k/K), k = 1..K, each with
// outer coefficient 2s/K; sup error on [-s,s] is at most s^2 (1/K + 1/K^2).
ReluNet square_net(double s, int K);

struct CertifiedNet {
    ReluNet net;
    CostCertificate cert;
};

// Depth-2 net on R^{2d} (width 2Kd) realizing (1/beta) * f_inner, where f_inner
// approximates <x1, x2> with sup error <= 2d (1/K + 1/K^2) over the product of
// spheres. The certificate witnesses the balanced parameterization.
CertifiedNet inner_net(int d, int K, double beta);

// Reduced-cost bound for inner_net: (4 sqrt(6) d) / beta + 1 / (2 beta^2).
// The sqrt(6) comes from |a| = 2 sqrt(2)/(beta K) per unit and per-unit norm
// sqrt(1 + 2k^2/K^2) <= sqrt(3).
double inner_net_cost_bound(int d, double beta);

// Scale that balances the two sources of cost in deep_approximant: d^(-5/4).
double default_inner_scale(int d);

// Target value sawtooth(3d, sqrt(d) <x1, x2>). Throws DomainError unless both
// halves of x have unit norm within 1e-9.
double target_f(int d, const Eigen::Ref<const Eigen::VectorXd>& x);

// Depth-3 approximant of target_f with hidden widths (2Kd, 6d+2): the sawtooth
// layer composed onto inner_net. Sup error <= 12 d^(5/2) (1/K + 1/K^2).
CertifiedNet deep_approximant(int d, int K, double beta = 0.0);  // beta <= 0 -> default

// Deterministic cost bound for tent_interpolant: 16 sqrt(2) m / eta^2.
// Tight enough only while eta0 stays below roughly 1.8; datasets drawn on the
// product of spheres at the tested sizes sit far inside that range.
double tent_cost_bound(int m, double eta);

// Exact interpolant of eta-separated labeled data: per sample j a ridge bump
// of half-width eta0 = eta^2 / (2 sqrt(2)) around the hyperplane v_j.x = sqrt(2)
// with v_j = x_j / sqrt(2). Width 3m; balanced cost <= 8 m / eta0.
struct TentResult {
    ReluNet net;
    CostCertificate cert;
    double eta;   // min pairwise distance of the data
    double eta0;  // ridge half-width
};
TentResult tent_interpolant(const SphereDataset& data);

}  // namespace relucost

#endif
