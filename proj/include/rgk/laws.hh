#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "rgk/command.hh"
#include "rgk/random.hh"
#include "rgk/refinement.hh"

namespace rgk {

/// Values for a law's metavariables.
struct LawBindings {
    std::map<std::string, StateSet> sets;
    std::map<std::string, StateRel> rels;
    std::map<std::string, Command> cmds;
    /// Families of state sets (for the generalised union law).
    std::map<std::string, std::vector<StateSet>> families;

    std::string describe(const StateSpace& space) const;
};

struct Law {
    std::string id;
    std::string statement;
    std::vector<std::string> sets;
    std::vector<std::string> rels;
    std::vector<std::string> cmds;
    std::vector<std::string> families;
    /// Returns premise_violation when a side condition fails.
    std::function<Verdict(Checker&, const LawBindings&)> check;
};

const std::vector<Law>& law_catalogue();
/// nullptr if unknown.
const Law* find_law(const std::string& id);

/// Throws Error for an unknown law or missing binding.
Verdict check_law(Checker& checker, const std::string& id, const LawBindings& b);

/// Small command pool used for exhaustive bindings.
std::vector<Command> command_pool(const StateSpace& space);

/// Calls `f` for every binding drawn from all subsets, all relations,
/// the command pool, and families of up to three subsets. Meant for |states| = 2.
void for_each_binding(const Law& law, const StateSpace& space, const std::function<void(const LawBindings&)>& f);
LawBindings random_bindings(const Law& law, const StateSpace& space, Rng& rng, std::size_t max_cmd_size = 5);

struct SweepStats {
    std::size_t instances = 0;
    std::size_t holds = 0;
    std::size_t premise_violations = 0;
    std::size_t failures = 0;
    std::size_t inconclusive = 0;
    std::vector<std::string> failure_notes;

    bool clean() const { return failures == 0 && inconclusive == 0; }
    void add(const Verdict& v, const std::string& what);
    SweepStats& operator+=(const SweepStats& o);
};

/// State space with one variable ranging over 0..n-1.
StateSpace counter_space(int n);

SweepStats sweep_exhaustive(const Law& law, std::size_t depth, Engine engine);
SweepStats sweep_random(const Law& law, std::size_t count, std::uint64_t seed, std::size_t depth, Engine engine);

} // namespace rgk
