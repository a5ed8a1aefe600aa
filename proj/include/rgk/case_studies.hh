#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "rgk/refinement.hh"
#include "rgk/theorems.hh"

namespace rgk {

/// Removing a constant element `i` from a shared set `w` with a CAS loop.
/// `sample` is the loop's local copy; its locality is expressed in the rely.
struct RemoveConfig {
    std::vector<int> universe{0, 1};
    int i = 0;
    std::size_t depth = 8;
    Engine engine = Engine::graph;
    /// Variants used to show the checker notices broken bindings.
    bool rely_univ = false;
    bool guarantee_identity = false;
};

/// Space, relations and commands of one configuration.
struct RemoveSetup {
    std::shared_ptr<const StateSpace> space;
    StateRel rely, guarantee;
    /// i not in w'
    StateRel post;
    Expr guard;
    Command body;

    explicit RemoveSetup(const RemoveConfig& cfg);
    /// rely r /\ guar g /\ [i not in w']
    Command spec() const;
    Command code() const;
    WhileInstance while_instance() const;
};

Command remove_spec(const RemoveSetup& s);
Command remove_code(const RemoveSetup& s);

struct RemoveReport {
    std::shared_ptr<const StateSpace> space;
    TheoremReport loop;
    Verdict guarantee;
    Verdict refinement;
    /// The environment removes i between the read and the CAS, the CAS
    /// fails, and the loop exits without the program shrinking w.
    std::optional<Trace> early_exit;

    bool all_hold() const;
};

RemoveReport verify_remove(const RemoveConfig& cfg);

struct FairnessReport {
    /// term refined by the remove postcondition
    Verdict term_spec;
    /// term /\ fair equals finite iteration of alpha
    Verdict term_fair;
};

FairnessReport fairness_demo(const RemoveConfig& cfg, std::size_t depth = 4);

} // namespace rgk
