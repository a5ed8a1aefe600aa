#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rgk/state_model.hh"
#include "rgk/value.hh"

namespace rgk {

enum class UnaryOp { logical_not, negate };

enum class BinaryOp {
    logical_and,
    logical_or,
    eq,
    ne,
    lt,
    le,
    gt,
    ge,
    add,
    sub, ///< integer subtraction or set difference
    member,
    not_member,
    set_union,
    set_inter,
    subseteq,
    strict_subset,
};

std::string op_symbol(UnaryOp op);
std::string op_symbol(BinaryOp op);

/// Standard operator semantics. nullopt when the operator is undefined on
/// its arguments (wrong kinds, or an integer result out of range).
std::optional<Value> apply_unary(UnaryOp op, const Value& v);
std::optional<Value> apply_binary(BinaryOp op, const Value& a, const Value& b);

class Expr;

/// L-value expression: a variable or an indexed array reference.
class LvExpr {
public:
    enum class Kind { variable, array_index };

    /// `primed` selects the post-state; only meaningful inside relation predicates.
    static LvExpr variable(std::string name, bool primed = false);
    static LvExpr array_index(LvExpr array, Expr index);

    Kind kind() const;
    const std::string& name() const;
    bool primed() const;
    const LvExpr& array() const;
    const Expr& index() const;

    std::string to_string() const;
    bool operator==(const LvExpr& o) const;

private:
    struct Node;
    explicit LvExpr(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
    std::shared_ptr<const Node> n_;
    friend class Expr;
};

/// Expression: constant, dereference, unary or binary operator application.
class Expr {
public:
    enum class Kind { constant, deref, unary, binary };

    static Expr constant(Value v);
    static Expr deref(LvExpr lve);
    static Expr unary(UnaryOp op, Expr e);
    static Expr binary(Expr a, BinaryOp op, Expr b);

    /// Shorthand for dereferencing a plain variable.
    static Expr var(std::string name, bool primed = false) { return deref(LvExpr::variable(std::move(name), primed)); }

    Kind kind() const;
    const Value& value() const;
    const LvExpr& lvexpr() const;
    UnaryOp unary_op() const;
    BinaryOp binary_op() const;
    const Expr& lhs() const;
    const Expr& rhs() const;
    const Expr& operand() const { return lhs(); }

    std::string to_string() const;
    bool operator==(const Expr& o) const;

private:
    struct Node;
    explicit Expr(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
    std::shared_ptr<const Node> n_;
    friend class LvExpr;
};

/// Atomic evaluation in a single state (or a pre/post pair for primed
/// references). nullopt if some operator is undefined or an l-value is
/// not declared.
std::optional<Value> eval_in_state(const StateSpace& space, const Expr& e, StateId pre, std::optional<StateId> post = std::nullopt);
std::optional<LValue> eval_lv_in_state(const StateSpace& space, const LvExpr& lve, StateId pre, std::optional<StateId> post = std::nullopt);

/// Every value `e` can evaluate to under fine-grained evaluation, where each
/// dereference may observe any value of its l-value's domain.
Domain possible_values(const StateSpace& space, const Expr& e);
/// Every l-value (declared, or a prefix of a declared one) `lve` may denote.
std::vector<LValue> possible_lvalues(const StateSpace& space, const LvExpr& lve);

/// States in which `e` evaluates atomically to true.
StateSet states_where(const StateSpace& space, const Expr& e);
/// Pairs in which `e` (over unprimed/primed references) evaluates to true.
StateRel pairs_where(const StateSpace& space, const Expr& e);

} // namespace rgk
