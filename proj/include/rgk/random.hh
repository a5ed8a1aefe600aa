#pragma once

#include <cstdint>
#include <random>

#include "rgk/command.hh"
#include "rgk/state_model.hh"

namespace rgk {

/// Seeded generator shared by the sweeps. Only draws through this class so
/// that a seed fixes every instance.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t next() { return gen_(); }
    /// Uniform in [0, n).
    std::size_t below(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(gen_); }
    bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(gen_); }

    StateSet state_set(const StateSpace& space, double density = 0.5);
    StateRel state_rel(const StateSpace& space, double density = 0.4);
    /// Closed command with at most `size` constructors (at least 1).
    Command command(const StateSpace& space, std::size_t size);

private:
    Command open_command(const StateSpace& space, std::size_t size, std::size_t bound);
    std::mt19937_64 gen_;
};

} // namespace rgk
