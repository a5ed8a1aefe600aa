#include "rgk/expr.hh"

#include <algorithm>
#include <set>

#include "rgk/error.hh"

namespace rgk {

struct LvExpr::Node {
    Kind kind;
    std::string name;
    bool primed = false;
    std::optional<LvExpr> array;
    std::optional<Expr> index;
};

struct Expr::Node {
    Kind kind;
    Value value;
    std::optional<LvExpr> lve;
    UnaryOp uop = UnaryOp::logical_not;
    BinaryOp bop = BinaryOp::eq;
    std::optional<Expr> a;
    std::optional<Expr> b;
};

std::string op_symbol(UnaryOp op)
{
    switch (op) {
    case UnaryOp::logical_not:
        return "!";
    case UnaryOp::negate:
        return "-";
    }
    return "?";
}

std::string op_symbol(BinaryOp op)
{
    switch (op) {
    case BinaryOp::logical_and: return "&&";
    case BinaryOp::logical_or: return "||";
    case BinaryOp::eq: return "=";
    case BinaryOp::ne: return "!=";
    case BinaryOp::lt: return "<";
    case BinaryOp::le: return "<=";
    case BinaryOp::gt: return ">";
    case BinaryOp::ge: return ">=";
    case BinaryOp::add: return "+";
    case BinaryOp::sub: return "-";
    case BinaryOp::member: return "in";
    case BinaryOp::not_member: return "notin";
    case BinaryOp::set_union: return "union";
    case BinaryOp::set_inter: return "inter";
    case BinaryOp::subseteq: return "subseteq";
    case BinaryOp::strict_subset: return "subset";
    }
    return "?";
}

namespace {

std::optional<Value> int_result(std::int64_t v)
{
    if (v < Value::kIntMin || v > Value::kIntMax)
        return std::nullopt;
    return Value::integer(v);
}

} // namespace

std::optional<Value> apply_unary(UnaryOp op, const Value& v)
{
    switch (op) {
    case UnaryOp::logical_not:
        if (v.is_bool())
            return Value::boolean(!v.as_bool());
        return std::nullopt;
    case UnaryOp::negate:
        if (v.is_int())
            return int_result(-v.as_int());
        return std::nullopt;
    }
    return std::nullopt;
}

std::optional<Value> apply_binary(BinaryOp op, const Value& a, const Value& b)
{
    const bool ints = a.is_int() && b.is_int();
    const bool sets = a.is_set() && b.is_set();
    const bool bools = a.is_bool() && b.is_bool();
    switch (op) {
    case BinaryOp::logical_and:
        if (bools)
            return Value::boolean(a.as_bool() && b.as_bool());
        break;
    case BinaryOp::logical_or:
        if (bools)
            return Value::boolean(a.as_bool() || b.as_bool());
        break;
    case BinaryOp::eq:
        return Value::boolean(a == b);
    case BinaryOp::ne:
        return Value::boolean(!(a == b));
    case BinaryOp::lt:
        if (ints)
            return Value::boolean(a.as_int() < b.as_int());
        break;
    case BinaryOp::le:
        if (ints)
            return Value::boolean(a.as_int() <= b.as_int());
        break;
    case BinaryOp::gt:
        if (ints)
            return Value::boolean(a.as_int() > b.as_int());
        break;
    case BinaryOp::ge:
        if (ints)
            return Value::boolean(a.as_int() >= b.as_int());
        break;
    case BinaryOp::add:
        if (ints)
            return int_result(a.as_int() + b.as_int());
        break;
    case BinaryOp::sub:
        if (ints)
            return int_result(a.as_int() - b.as_int());
        if (sets)
            return Value::set(a.as_set().minus(b.as_set()));
        break;
    case BinaryOp::member:
        if (a.is_int() && b.is_set())
            return Value::boolean(b.as_set().contains(a.as_int()));
        break;
    case BinaryOp::not_member:
        if (a.is_int() && b.is_set())
            return Value::boolean(!b.as_set().contains(a.as_int()));
        break;
    case BinaryOp::set_union:
        if (sets)
            return Value::set(a.as_set().unite(b.as_set()));
        break;
    case BinaryOp::set_inter:
        if (sets)
            return Value::set(a.as_set().intersect(b.as_set()));
        break;
    case BinaryOp::subseteq:
        if (sets)
            return Value::boolean(a.as_set().subset_of(b.as_set()));
        break;
    case BinaryOp::strict_subset:
        if (sets)
            return Value::boolean(a.as_set().strict_subset_of(b.as_set()));
        break;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------- LvExpr

LvExpr LvExpr::variable(std::string name, bool primed)
{
    auto n = std::make_shared<Node>();
    n->kind = Kind::variable;
    n->name = std::move(name);
    n->primed = primed;
    return LvExpr(std::move(n));
}

LvExpr LvExpr::array_index(LvExpr array, Expr index)
{
    auto n = std::make_shared<Node>();
    n->kind = Kind::array_index;
    n->primed = array.primed();
    n->array = std::move(array);
    n->index = std::move(index);
    return LvExpr(std::move(n));
}

LvExpr::Kind LvExpr::kind() const { return n_->kind; }
const std::string& LvExpr::name() const { return n_->kind == Kind::variable ? n_->name : n_->array->name(); }
bool LvExpr::primed() const { return n_->primed; }
const LvExpr& LvExpr::array() const { return *n_->array; }
const Expr& LvExpr::index() const { return *n_->index; }

std::string LvExpr::to_string() const
{
    if (kind() == Kind::variable)
        return n_->name + (n_->primed ? "'" : "");
    return array().to_string() + "[" + index().to_string() + "]";
}

bool LvExpr::operator==(const LvExpr& o) const
{
    if (n_ == o.n_)
        return true;
    if (kind() != o.kind())
        return false;
    if (kind() == Kind::variable)
        return n_->name == o.n_->name && n_->primed == o.n_->primed;
    return array() == o.array() && index() == o.index();
}

// ---------------------------------------------------------------- Expr

Expr Expr::constant(Value v)
{
    auto n = std::make_shared<Node>();
    n->kind = Kind::constant;
    n->value = v;
    return Expr(std::move(n));
}

Expr Expr::deref(LvExpr lve)
{
    auto n = std::make_shared<Node>();
    n->kind = Kind::deref;
    n->lve = std::move(lve);
    return Expr(std::move(n));
}

Expr Expr::unary(UnaryOp op, Expr e)
{
    auto n = std::make_shared<Node>();
    n->kind = Kind::unary;
    n->uop = op;
    n->a = std::move(e);
    return Expr(std::move(n));
}

Expr Expr::binary(Expr a, BinaryOp op, Expr b)
{
    auto n = std::make_shared<Node>();
    n->kind = Kind::binary;
    n->bop = op;
    n->a = std::move(a);
    n->b = std::move(b);
    return Expr(std::move(n));
}

Expr::Kind Expr::kind() const { return n_->kind; }
const Value& Expr::value() const { return n_->value; }
const LvExpr& Expr::lvexpr() const { return *n_->lve; }
UnaryOp Expr::unary_op() const { return n_->uop; }
BinaryOp Expr::binary_op() const { return n_->bop; }
const Expr& Expr::lhs() const { return *n_->a; }
const Expr& Expr::rhs() const { return *n_->b; }

std::string Expr::to_string() const
{
    switch (kind()) {
    case Kind::constant:
        return value().to_string();
    case Kind::deref:
        return "*" + lvexpr().to_string();
    case Kind::unary:
        return op_symbol(unary_op()) + "(" + operand().to_string() + ")";
    case Kind::binary:
        return "(" + lhs().to_string() + " " + op_symbol(binary_op()) + " " + rhs().to_string() + ")";
    }
    return "?";
}

bool Expr::operator==(const Expr& o) const
{
    if (n_ == o.n_)
        return true;
    if (kind() != o.kind())
        return false;
    switch (kind()) {
    case Kind::constant:
        return value() == o.value();
    case Kind::deref:
        return lvexpr() == o.lvexpr();
    case Kind::unary:
        return unary_op() == o.unary_op() && operand() == o.operand();
    case Kind::binary:
        return binary_op() == o.binary_op() && lhs() == o.lhs() && rhs() == o.rhs();
    }
    return false;
}

// ---------------------------------------------------------------- evaluation

std::optional<LValue> eval_lv_in_state(const StateSpace& space, const LvExpr& lve, StateId pre, std::optional<StateId> post)
{
    if (lve.kind() == LvExpr::Kind::variable)
        return LValue::var(lve.name());
    auto arr = eval_lv_in_state(space, lve.array(), pre, post);
    auto idx = eval_in_state(space, lve.index(), pre, post);
    if (!arr || !idx)
        return std::nullopt;
    return arr->indexed(*idx);
}

std::optional<Value> eval_in_state(const StateSpace& space, const Expr& e, StateId pre, std::optional<StateId> post)
{
    switch (e.kind()) {
    case Expr::Kind::constant:
        return e.value();
    case Expr::Kind::deref: {
        auto lv = eval_lv_in_state(space, e.lvexpr(), pre, post);
        if (!lv)
            return std::nullopt;
        auto idx = space.index_of(*lv);
        if (!idx)
            return std::nullopt;
        StateId s = pre;
        if (e.lvexpr().primed()) {
            if (!post)
                return std::nullopt;
            s = *post;
        }
        return space.value(s, *idx);
    }
    case Expr::Kind::unary: {
        auto v = eval_in_state(space, e.operand(), pre, post);
        return v ? apply_unary(e.unary_op(), *v) : std::nullopt;
    }
    case Expr::Kind::binary: {
        auto a = eval_in_state(space, e.lhs(), pre, post);
        auto b = eval_in_state(space, e.rhs(), pre, post);
        return a && b ? apply_binary(e.binary_op(), *a, *b) : std::nullopt;
    }
    }
    return std::nullopt;
}

std::vector<LValue> possible_lvalues(const StateSpace& space, const LvExpr& lve)
{
    if (lve.kind() == LvExpr::Kind::variable) {
        LValue lv = LValue::var(lve.name());
        if (space.is_declared_prefix(lv))
            return {lv};
        return {};
    }
    std::vector<LValue> out;
    const Domain idx = possible_values(space, lve.index());
    for (const LValue& a : possible_lvalues(space, lve.array()))
        for (const Value& i : idx) {
            LValue cand = a.indexed(i);
            if (space.is_declared_prefix(cand))
                out.push_back(std::move(cand));
        }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

Domain possible_values(const StateSpace& space, const Expr& e)
{
    switch (e.kind()) {
    case Expr::Kind::constant:
        return {e.value()};
    case Expr::Kind::deref: {
        std::vector<Value> out;
        for (const LValue& lv : possible_lvalues(space, e.lvexpr()))
            if (auto i = space.index_of(lv))
                for (const Value& v : space.lvalues()[*i].domain)
                    out.push_back(v);
        return make_domain(std::move(out));
    }
    case Expr::Kind::unary: {
        std::vector<Value> out;
        for (const Value& v : possible_values(space, e.operand()))
            if (auto r = apply_unary(e.unary_op(), v))
                out.push_back(*r);
        return make_domain(std::move(out));
    }
    case Expr::Kind::binary: {
        std::vector<Value> out;
        const Domain as = possible_values(space, e.lhs());
        const Domain bs = possible_values(space, e.rhs());
        for (const Value& a : as)
            for (const Value& b : bs)
                if (auto r = apply_binary(e.binary_op(), a, b))
                    out.push_back(*r);
        return make_domain(std::move(out));
    }
    }
    return {};
}

StateSet states_where(const StateSpace& space, const Expr& e)
{
    return space.filter([&](StateId s) {
        auto v = eval_in_state(space, e, s);
        return v && v->is_bool() && v->as_bool();
    });
}

StateRel pairs_where(const StateSpace& space, const Expr& e)
{
    return space.relation([&](StateId a, StateId b) {
        auto v = eval_in_state(space, e, a, b);
        return v && v->is_bool() && v->as_bool();
    });
}

} // namespace rgk
