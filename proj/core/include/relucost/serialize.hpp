#ifndef RELUCOST_SERIALIZE_HPP
#define RELUCOST_SERIALIZE_HPP

#include <string>
#include <string_view>

#include "relucost/relu_net.hpp"

namespace relucost {

// Text form of a network:
//   {"version": 1, "depth": L, "input_dim": n,
//    "layers": [{"weights": [[row-major]], "bias": [...]}, ...],
//    "output_weights": [...], "output_bias": v}
// Numbers carry 17 significant digits, so parameters round-trip bit-exactly.
std::string serialize(const ReluNet& net);

// Throws ParseError (with byte offset) on malformed input; never returns a partial net.
ReluNet deserialize(std::string_view text);

void save_net(const ReluNet& net, const std::string& path);
ReluNet load_net(const std::string& path);

// Shortest-of-17-significant-digits decimal form used across all text outputs.
std::string format_double(double v);

}  // namespace relucost

#endif
