#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rgk/command.hh"
#include "rgk/expr.hh"
#include "rgk/laws.hh"
#include "rgk/random.hh"
#include "rgk/refinement.hh"

namespace rgk {

/// Variant expression with a strict order on its finite carrier.
struct VariantSpec {
    Expr z;
    ValueOrder order;

    /// States whose variant value v satisfies `pred(v)`.
    StateSet states(const StateSpace& space, const std::function<bool(const Value&)>& pred) const;
    StateSet below(const StateSpace& space, const Value& k) const;
    StateSet at_most(const StateSpace& space, const Value& k) const;
    StateSet equal_to(const StateSpace& space, const Value& k) const;
    /// z evaluates into the carrier in every state.
    bool compatible(const StateSpace& space) const;
    /// r never increases z: every pair has z' at most z.
    bool non_increasing(const StateSpace& space, const StateRel& r) const;
};

struct Obligation {
    std::string name;
    Verdict verdict;
};

/// Premises are all checked (none skipped); the conclusion is always checked
/// so that a premises-hold/conclusion-fails outcome is visible.
struct TheoremReport {
    std::string theorem;
    std::vector<Obligation> premises;
    Verdict conclusion;
    Outcome outcome = Outcome::holds;

    bool premises_hold() const;
    /// Sets `outcome` from the premises and conclusion.
    void settle();
    /// Collapsed verdict: outcome plus the first relevant counterexample.
    Verdict summary() const;
};

enum class ExprRule { constant, variable, deref, unary, binary, array };
std::string to_string(ExprRule r);
std::optional<ExprRule> parse_expr_rule(const std::string& s);

/// One application of a compositional expression rule. `e` is the
/// expression for constant/deref/unary/binary, `lve` the l-value
/// expression for variable/array. The conclusion target is `k` or `lv`.
struct ExprRuleInstance {
    ExprRule rule = ExprRule::constant;
    StateSet p;
    StateRel r;
    std::optional<Expr> e;
    std::optional<LvExpr> lve;
    Value k;
    std::optional<LValue> lv;
    /// Postconditions of the sub-evaluations, keyed by sub-result.
    std::map<Value, StateSet> P1, P2;
    std::map<LValue, StateSet> P1lv;
    /// Postcondition of the conclusion (ignored by the constant and variable rules).
    StateSet P;
};

TheoremReport check_expression_rule(Checker& ck, const ExprRuleInstance& inst);

struct ConditionalInstance {
    Expr b;
    StateRel r, q;
    StateSet p, pT, pF;
};

TheoremReport check_conditional_theorem(Checker& ck, const ConditionalInstance& inst);

/// `f` is a body referring to its argument as var(0).
struct RecursionInstance {
    Command f;
    Command s;
    StateSet pX;
    VariantSpec variant;
};

TheoremReport check_recursion_theorem(Checker& ck, const RecursionInstance& inst);

struct WhileInstance {
    Expr b;
    Command c;
    StateRel r, q;
    StateSet p, pT, pF, pX;
    VariantSpec variant;
};

TheoremReport check_while_theorem(Checker& ck, const WhileInstance& inst);
/// rely r /\ {p} ; [q* |> pF]
Command while_spec(const StateSpace& space, const WhileInstance& inst);

/// The sequential loop rule applied under interference.
struct NegativeControlReport {
    /// Sequential premise {p & b} c {p}, checked under rely identity.
    Verdict premise;
    /// Conclusion {p} loop {p & !b} under an interfering environment; expected to fail.
    Verdict interfered;
    /// Same conclusion under rely identity; expected to hold.
    Verdict isolated;
    /// A loop whose variant the environment may increase: the bounded
    /// unfolding no longer covers the loop. Expected to fail.
    Verdict variant_increase;
    /// Same comparison when the environment cannot increase the variant; expected to hold.
    Verdict variant_stable;

    bool as_expected() const;
};

NegativeControlReport negative_control_hoare_loop(std::size_t depth = 5, Engine engine = Engine::graph);

// ---------------------------------------------------------------- generators

ExprRuleInstance random_expr_rule_instance(ExprRule rule, Checker& ck, Rng& rng);
ConditionalInstance random_conditional_instance(Checker& ck, Rng& rng);
RecursionInstance random_recursion_instance(const StateSpace& space, Rng& rng);
WhileInstance random_while_instance(Checker& ck, Rng& rng);

struct TheoremSweep {
    std::size_t instances = 0;
    std::size_t holds = 0;
    std::size_t premise_violations = 0;
    std::size_t soundness_alarms = 0;
    std::size_t inconclusive = 0;
    std::vector<std::string> alarms;

    void add(const TheoremReport& r, const std::string& what);
};

/// Spaces used by the sweeps.
StateSpace expr_space();
StateSpace array_space();
StateSpace loop_space();

TheoremSweep sweep_expression_rules(std::size_t per_rule, std::uint64_t seed, std::size_t depth, Engine engine);
TheoremSweep sweep_conditional(std::size_t count, std::uint64_t seed, std::size_t depth, Engine engine);
TheoremSweep sweep_recursion(std::size_t count, std::uint64_t seed, std::size_t depth, Engine engine);
TheoremSweep sweep_while(std::size_t count, std::uint64_t seed, std::size_t depth, Engine engine);

} // namespace rgk
