#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rgk {

/// Base class of every error raised by the kernel.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class StateSpaceTooLarge : public Error {
public:
    explicit StateSpaceTooLarge(std::size_t size, std::size_t cap)
        : Error("state space has " + std::to_string(size) + " states, cap is " + std::to_string(cap)) {}
};

class UndeclaredLValue : public Error {
public:
    using Error::Error;
};

class DomainError : public Error {
public:
    using Error::Error;
};

/// Kleene iteration did not stabilise within its cap. The lattice of
/// depth-bounded trace sets is finite, so this signals an engine bug.
class FixpointDivergence : public Error {
public:
    using Error::Error;
};

/// An explicit resource cap (trace count, node count) was exceeded.
class ResourceLimit : public Error {
public:
    using Error::Error;
};

} // namespace rgk
