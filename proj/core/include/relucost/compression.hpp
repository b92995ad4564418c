#ifndef RELUCOST_COMPRESSION_HPP
#define RELUCOST_COMPRESSION_HPP

#include <cstdint>

#include "relucost/relu_net.hpp"

namespace relucost {

// Expected L2 error of width-omega resampling of a mass-A dilation:
// sqrt(3) A / sqrt(omega). The sqrt(3) bounds each normalized unit on the
// domain, where |(x, 1)| <= sqrt(3).
double maurey_error_bound(double a_mass, int omega);

struct MaureyResult {
    ReluNet net;           // depth 2, width omega
    CostCertificate cert;  // cost A + c^2/2, independent of omega and seed
    double a_mass = 0.0;   // total unit mass of the balanced input
    double mc_l2 = 0.0;    // Monte Carlo L2 distance to the input net
    int chosen_restart = 0;
};

// Resamples the balanced form of net: omega units drawn with replacement,
// probability proportional to unit mass, each emitted with mass A/omega and
// the original sign. Best of `restarts` candidates under a fixed Monte Carlo
// comparison set; ties keep the earliest restart.
MaureyResult maurey_compress(const ReluNet& net, int omega, std::uint64_t seed,
                             int restarts = 8, long mc_samples = 4096);

}  // namespace relucost

#endif
