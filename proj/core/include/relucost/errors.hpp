#ifndef RELUCOST_ERRORS_HPP
#define RELUCOST_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace relucost {

// Shape mismatch between a network and its inputs, or an inconsistent layer chain.
struct ShapeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Caller violated a documented precondition (empty batch, n = 0, delta outside (0,1), ...).
struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Input point lies outside the domain the operation is defined on.
struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Malformed serialized input. byte_offset points at the first byte that could not be consumed.
struct ParseError : std::runtime_error {
    std::size_t byte_offset;
    ParseError(const std::string& what, std::size_t offset)
        : std::runtime_error(what + " (byte " + std::to_string(offset) + ")"), byte_offset(offset) {}
};

// Dataset degeneracy (duplicate points); carries the colliding index pairs.
struct DegeneracyError : std::runtime_error {
    std::vector<std::pair<int, int>> colliding;
    DegeneracyError(const std::string& what, std::vector<std::pair<int, int>> pairs)
        : std::runtime_error(what), colliding(std::move(pairs)) {}
};

// Optimization diverged; iteration records where the objective became non-finite.
struct TrainingError : std::runtime_error {
    long iteration;
    TrainingError(const std::string& what, long iter)
        : std::runtime_error(what + " (iteration " + std::to_string(iter) + ")"), iteration(iter) {}
};

// File could not be opened, read, or written.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace relucost

#endif
