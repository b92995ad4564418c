#ifndef RELUCOST_BOUNDS_HPP
#define RELUCOST_BOUNDS_HPP

#include <map>
#include <string>

namespace relucost {

// Named reference thresholds from the lower-bound side of the separation
// argument; exposed as values only.
inline constexpr double kSeparationThresholdA = 1.0 / (5.0 * 2.718281828459045 * 3.141592653589793);
inline constexpr double kSpectralMassThreshold =
    1.0 / (50.0 * 2.718281828459045 * 2.718281828459045 * 3.141592653589793 *
           3.141592653589793);
inline constexpr double kSeparationThresholdB = 1e-4;

// Sample-size threshold d^exponent * log(1/delta) / eps^2. The exponent is a
// parameter because only its existence, not its tightness, is certified.
double separation_sample_size(double eps, double delta, int d, double exponent = 15.0);

// Empirical Rademacher complexity bound for cost-M depth-3 nets on m samples:
// 4 sqrt(6) (M + 2/3)^(3/2) / sqrt(m).
double rademacher_bound(double M, long m);

// Constant pinned by composing the generalization chain (Lipschitz loss
// contraction, the Rademacher bound above, and the sup-norm envelope
// 1 + sqrt(3) (M + 2/3)^(3/2)); dominates the raw chain for M >= 1,
// delta <= 1/2.
inline constexpr double kEstimationConstant = 520.0;

// C * M^3 * sqrt(log(1/delta) / m) with C = kEstimationConstant.
double estimation_error_bound(double M, long m, double delta);

// The unsimplified chain behind estimation_error_bound; kept callable so the
// simplified constant stays falsifiable.
double estimation_error_chain(double M, long m, double delta);

// Probabilistic cost bound for the tent interpolant on m uniform samples:
// 16 sqrt(2) m^((d+3)/(d-1)) delta^(-2/(d-1)); requires d >= 3.
double interpolant_cost_bound(long m, int d, double delta);

// Sample budget sufficient for the depth-3 rule to match depth-2 learning:
// C3 * alpha^6 * (d + m2^((d+3)/(d-1)))^6 * log(1/delta) / eps^2, C3 = 1.
inline constexpr double kM3Constant = 1.0;
double m3_sample_complexity(double eps, double delta, int d, double m2_value, double alpha);

// Single-line record of a bound evaluation; re-evaluating from the recorded
// inputs reproduces value exactly.
struct BoundReport {
    std::string id;
    std::map<std::string, double> inputs;
    double value = 0.0;
    std::string formula;
};

// ids: rademacher(M,m) estimation(M,m,delta) tent(m,d,delta)
//      m3(eps,delta,d,m2,alpha) collision(d,m,eta) inner(d,beta)
//      maurey(A,omega) sample(eps,delta,d[,exponent])
BoundReport evaluate_bound(const std::string& id, const std::map<std::string, double>& inputs);

}  // namespace relucost

#endif
