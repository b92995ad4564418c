#ifndef RELUCOST_SPECTRAL_HPP
#define RELUCOST_SPECTRAL_HPP

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <boost/multiprecision/cpp_int.hpp>

namespace relucost {

// Dimension of the space of order-n spherical harmonics on S^{d-1}:
// (2n + d - 2) (n + d - 3)! / (n! (d - 2)!), with N_{d,0} = 1.
boost::multiprecision::cpp_int harmonic_dim(int d, int n);

// One-coordinate profile of the target: t -> sawtooth(3d, sqrt(d) t), and the
// points where it is not smooth (edges of the active band plus all kinks).
double target_profile(int d, double t);
std::vector<double> target_profile_breakpoints(int d);

// L^2(mu_d) distance from g to polynomials of degree < n, where mu_d has
// density ip_density(d, .). Computed by projecting onto the orthonormal
// polynomial basis of mu_d, integrating piecewise between the supplied
// breakpoints (end pieces with Jacobi rules absorbing the (1 -+ t)^e factor).
struct PolyDistanceResult {
    double a = 0.0;               // the distance
    Eigen::VectorXd coeffs;       // <g, p_j> for j = 0..n-1
    double g_norm_sq = 0.0;       // |g|^2 in L^2(mu_d)
    double a_sq_direct = 0.0;     // quadrature of (g - projection)^2
    double pythagoras_gap = 0.0;  // |a^2 - a_sq_direct|
    std::string note;
};
PolyDistanceResult poly_distance_A(int d, int n, const std::function<double(double)>& g,
                                   const std::vector<double>& breakpoints,
                                   int quad_order = -1);  // default 4n

// poly_distance_A specialized to the target profile and its breakpoints.
PolyDistanceResult target_poly_distance(int d, int n, int quad_order = -1);

}  // namespace relucost

#endif
