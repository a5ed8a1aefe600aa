#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rgk/command.hh"
#include "rgk/expr.hh"
#include "rgk/semantics.hh"
#include "rgk/trace.hh"

namespace rgk {

enum class Outcome { holds, fails, inconclusive, premise_violation, soundness_alarm };

std::string to_string(Outcome o);

struct Verdict {
    Outcome outcome = Outcome::holds;
    /// For `fails`: an uncovered trace of the right-hand side.
    std::optional<Trace> counterexample;
    std::size_t depth = 0;
    Engine engine = Engine::graph;
    double elapsed_ms = 0;
    std::vector<std::string> notes;

    bool holds() const { return outcome == Outcome::holds; }
    bool fails() const { return outcome == Outcome::fails; }
};

struct CheckOptions {
    std::size_t depth = 3;
    Engine engine = Engine::graph;
    std::size_t node_budget = 40'000'000;
    std::size_t max_traces = 2'000'000;
};

/// Bounded refinement judgments over one state space. Keeps a graph engine
/// per depth so repeated queries share memoised denotations.
class Checker {
public:
    Checker(const StateSpace& space, CheckOptions opts = {});

    const StateSpace& space() const { return space_; }
    const CheckOptions& options() const { return opts_; }
    /// Copy of this checker's settings at another depth/engine (fresh caches).
    Checker with(std::size_t depth, Engine engine) const;

    /// c is refined by d: every trace of d is covered by c.
    Verdict refines(const Command& c, const Command& d);
    Verdict equals(const Command& c, const Command& d);
    /// assert(p) ; c  refined by  c ; assert(p1).
    Verdict hoare_triple(const StateSet& p, const Command& c, const StateSet& p1);
    /// hoare_triple(p, rely(r) /\ eval(e, k), P).
    Verdict establishes(const StateSet& p, const StateRel& r, const Expr& e, const Value& k, const StateSet& P);
    /// hoare_triple(p, rely(r) /\ eval_lvexpr(lve, lv), P).
    Verdict establishes_lv(const StateSet& p, const StateRel& r, const LvExpr& lve, const LValue& lv, const StateSet& P);
    /// Every program step in every trace of `c` lies in `g`.
    Verdict satisfies_guarantee(const Command& c, const StateRel& g);

    /// Final states of terminated traces of `c` from `p`.
    StateSet strongest_post(const StateSet& p, const Command& c);
    /// Whether `c` has any terminated trace from `p`.
    bool feasible(const StateSet& p, const Command& c) { return !strongest_post(p, c).empty(); }
    TraceSet traces(const Command& c);
    GraphEngine& graph();

private:
    Verdict run(const std::function<void(Verdict&)>& body) const;

    const StateSpace& space_;
    CheckOptions opts_;
    std::shared_ptr<GraphEngine> graph_;
};

} // namespace rgk
