#pragma once

#include <vector>

#include "rgk/command.hh"
#include "rgk/expr.hh"
#include "rgk/state_model.hh"

/// Derived commands of the wide-spectrum language, each expanded eagerly
/// into primitives over a given state space.
namespace rgk::cmd {

/// The null command: a test that always succeeds.
Command nil(const StateSpace& space);
/// Terminates from states in `p`, aborts elsewhere.
Command assertion(const StateSpace& space, const StateSet& p);
/// Any single program transition.
Command pi(const StateSpace& space);
/// Any single environment transition.
Command eps(const StateSpace& space);
/// Any single transition.
Command alpha(const StateSpace& space);

Command fin_iter(const StateSpace& space, const Command& c);
Command om_iter(const StateSpace& space, const Command& c);

/// Every program transition satisfies `g`; environment unconstrained.
Command guar(const StateSpace& space, const StateRel& g);
/// Aborts as soon as an environment transition falls outside `r`.
Command rely(const StateSpace& space, const StateRel& r);
/// Finitely many program transitions, any environment transitions.
Command term(const StateSpace& space);
/// Finitely many stuttering program transitions.
Command idle(const StateSpace& space);
/// Program transitions may modify only l-values in `frame`. An l-value in
/// `frame` also admits every l-value it is an array prefix of.
Command frame(const StateSpace& space, const std::vector<LValue>& frame, const Command& c);
Command opt(const StateSpace& space, const StateRel& r);
Command atomic_spec(const StateSpace& space, const StateRel& r);
/// Terminates in a state related to the initial state by `q`.
Command post_spec(const StateSpace& space, const StateRel& q);
/// Disallows infinite runs of environment transitions.
Command fair(const StateSpace& space);

/// Fine-grained evaluation of `e` to `k`; bot when infeasible.
Command eval_expr(const StateSpace& space, const Expr& e, const Value& k);
/// Fine-grained evaluation of `lve` to the l-value `lv`.
Command eval_lvexpr(const StateSpace& space, const LvExpr& lve, const LValue& lv);

Command conditional(const StateSpace& space, const Expr& b, const Command& c, const Command& d);
Command while_loop(const StateSpace& space, const Expr& b, const Command& c);
/// Body of the while loop as a function of the loop itself (`var(0)`).
Command while_body(const StateSpace& space, const Expr& b, const Command& c);

/// `lv := e`: fine-grained evaluation of `e` followed by one atomic write.
Command assignment(const StateSpace& space, const LValue& lv, const Expr& e);
/// Compare-and-swap on `lv`. `expected` and `desired` are evaluated in the
/// pre-state of the atomic transition.
Command cas(const StateSpace& space, const LValue& lv, const Expr& expected, const Expr& desired);

/// The command `mu x. nil | c ; x` without the nil, i.e. `fin(alpha)`.
Command any_steps(const StateSpace& space);

} // namespace rgk::cmd
