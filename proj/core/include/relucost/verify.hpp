#ifndef RELUCOST_VERIFY_HPP
#define RELUCOST_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace relucost {

// One named measurement compared against its limit. `pass` encodes the
// comparison direction, which varies by check (most are value <= bound).
struct Check {
    std::string name;
    bool pass = false;
    double value = 0.0;
    double bound = 0.0;
    std::string detail;
};

struct SuiteResult {
    std::string suite;
    std::vector<Check> checks;
    bool pass() const;
};

// Fixed-width pass/fail table, one line per check plus a result line.
std::string format_suite(const SuiteResult& r);

// Closed-form match on a dense grid plus every breakpoint, and exact width.
SuiteResult verify_sawtooth(const std::vector<int>& ns);

// Grid sup error of the squaring net against t^2 within s^2 (1/K + 1/K^2).
SuiteResult verify_square(double s, const std::vector<int>& ks);

// Monte Carlo sup error of the inner-product net within 2d (1/K + 1/K^2).
SuiteResult verify_inner(const std::vector<int>& ds, const std::vector<int>& ks,
                         long samples, std::uint64_t seed);

// Monte Carlo sup error of the composed approximant within
// 12 d^(5/2) (1/K + 1/K^2), and exact layer widths (2Kd, 6d+2).
SuiteResult verify_fdk(const std::vector<int>& ds, const std::vector<int>& ks,
                       long samples, std::uint64_t seed);

// Certified cost divided by d^(5/2) stays within `factor` across d at fixed K.
SuiteResult verify_fdk_scaling(int d_lo, int d_hi, int k, double factor);

// Exact interpolation, per-dataset cost within 16 sqrt(2) m / eta^2, and the
// probabilistic cost bound holding in at least a 1 - delta fraction of trials.
SuiteResult verify_tent(int d, int m, int trials, double delta, std::uint64_t seed);

// Mean Monte Carlo L2 error within 1.2 x sqrt(3) A / sqrt(omega) over a corpus
// of balanced random nets; compressed mass within 4A + c^2; mass invariance
// under recompression.
SuiteResult verify_maurey(int width, int d, const std::vector<int>& omegas,
                          int corpus, std::uint64_t seed);

// Lifted nets agree with their sources at random probes and the certificate
// stays within 4d/3 + (4/3) x balanced depth-2 cost, with no tolerance.
SuiteResult verify_lift(int count, std::uint64_t seed);

// Empirical collision frequency stays under m^2 eta^(d-1) with 3 sigma
// binomial slack.
SuiteResult verify_collision(int d, int m, int trials, const std::vector<double>& etas,
                             std::uint64_t seed);

// Harmonic dimensions, the smallest d with N_{d,2d} > 2^d, and the polynomial
// distance of the target staying above its threshold from the measured onset
// through d_max, with Pythagoras residual <= 1e-8.
SuiteResult verify_spectral(int d_max);

// Analytic vs central finite-difference gradients on random (net, batch,
// lambda) triples drawn away from kinks.
SuiteResult verify_gradients(int triples, double h, std::uint64_t seed);

}  // namespace relucost

#endif
