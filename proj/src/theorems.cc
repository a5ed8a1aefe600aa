#include "rgk/theorems.hh"

#include <algorithm>
#include <sstream>

#include "rgk/error.hh"
#include "rgk/lang.hh"

namespace rgk {

namespace {

Verdict side_condition(bool ok, std::string note = {})
{
    Verdict v;
    v.outcome = ok ? Outcome::holds : Outcome::fails;
    if (!note.empty())
        v.notes.push_back(std::move(note));
    return v;
}

StateSet set_of_bool(const StateSpace& space, bool b) { return b ? space.all() : space.none(); }

Command spec(const StateSpace& space, const StateRel& r, const StateSet& p, const StateRel& q)
{
    return Command::conj(cmd::rely(space, r), Command::seq(cmd::assertion(space, p), cmd::post_spec(space, q)));
}

} // namespace

// ---------------------------------------------------------------- variant

StateSet VariantSpec::states(const StateSpace& space, const std::function<bool(const Value&)>& pred) const
{
    return space.filter([&](StateId s) {
        auto v = eval_in_state(space, z, s);
        return v && pred(*v);
    });
}

StateSet VariantSpec::below(const StateSpace& space, const Value& k) const
{
    return states(space, [&](const Value& v) { return order.less(v, k); });
}

StateSet VariantSpec::at_most(const StateSpace& space, const Value& k) const
{
    return states(space, [&](const Value& v) { return order.less_eq(v, k); });
}

StateSet VariantSpec::equal_to(const StateSpace& space, const Value& k) const
{
    return states(space, [&](const Value& v) { return v == k; });
}

bool VariantSpec::compatible(const StateSpace& space) const
{
    for (StateId s = 0; s < space.size(); ++s) {
        auto v = eval_in_state(space, z, s);
        if (!v || !order.index_of(*v))
            return false;
    }
    return true;
}

bool VariantSpec::non_increasing(const StateSpace& space, const StateRel& r) const
{
    for (StateId a = 0; a < space.size(); ++a) {
        auto za = eval_in_state(space, z, a);
        bool ok = true;
        r.row(a).for_each([&](std::size_t b) {
            auto zb = eval_in_state(space, z, b);
            if (!za || !zb || !order.less_eq(*zb, *za))
                ok = false;
        });
        if (!ok)
            return false;
    }
    return true;
}

// ---------------------------------------------------------------- report

bool TheoremReport::premises_hold() const
{
    return std::all_of(premises.begin(), premises.end(), [](const Obligation& o) { return o.verdict.holds(); });
}

void TheoremReport::settle()
{
    bool inconclusive = false;
    for (const Obligation& o : premises) {
        if (o.verdict.fails()) {
            outcome = Outcome::premise_violation;
            return;
        }
        if (o.verdict.outcome == Outcome::inconclusive)
            inconclusive = true;
    }
    if (conclusion.outcome == Outcome::inconclusive || inconclusive)
        outcome = Outcome::inconclusive;
    else if (conclusion.fails())
        outcome = Outcome::soundness_alarm;
    else
        outcome = Outcome::holds;
}

Verdict TheoremReport::summary() const
{
    Verdict v = conclusion;
    v.outcome = outcome;
    v.notes.clear();
    if (outcome == Outcome::premise_violation) {
        v.counterexample.reset();
        for (const Obligation& o : premises)
            if (o.verdict.fails()) {
                if (!v.counterexample)
                    v.counterexample = o.verdict.counterexample;
                v.notes.push_back("premise failed: " + o.name);
            }
    } else if (outcome == Outcome::soundness_alarm) {
        v.notes.push_back("premises hold but conclusion fails");
    }
    for (const Obligation& o : premises)
        v.elapsed_ms += o.verdict.elapsed_ms;
    return v;
}

// ---------------------------------------------------------------- expressions

std::string to_string(ExprRule r)
{
    switch (r) {
    case ExprRule::constant: return "const";
    case ExprRule::variable: return "var";
    case ExprRule::deref: return "deref";
    case ExprRule::unary: return "unary";
    case ExprRule::binary: return "binary";
    case ExprRule::array: return "array";
    }
    return "?";
}

std::optional<ExprRule> parse_expr_rule(const std::string& s)
{
    for (ExprRule r : {ExprRule::constant, ExprRule::variable, ExprRule::deref, ExprRule::unary, ExprRule::binary, ExprRule::array})
        if (to_string(r) == s)
            return r;
    return std::nullopt;
}

namespace {

const Expr& need(const std::optional<Expr>& e, const char* rule)
{
    if (!e)
        throw DomainError(std::string(rule) + " rule needs an expression");
    return *e;
}

const LvExpr& need(const std::optional<LvExpr>& e, const char* rule)
{
    if (!e)
        throw DomainError(std::string(rule) + " rule needs an l-value expression");
    return *e;
}

template <class K, class M>
StateSet lookup(const StateSpace& space, const M& m, const K& k)
{
    auto it = m.find(k);
    return it == m.end() ? space.all() : it->second;
}

} // namespace

TheoremReport check_expression_rule(Checker& ck, const ExprRuleInstance& inst)
{
    const StateSpace& sp = ck.space();
    TheoremReport rep;
    rep.theorem = "expr-" + to_string(inst.rule);
    auto premise = [&](std::string name, Verdict v) { rep.premises.push_back({std::move(name), std::move(v)}); };
    premise("p stable under r", side_condition(stable(inst.p, inst.r)));

    switch (inst.rule) {
    case ExprRule::constant: {
        const Expr& e = need(inst.e, "const");
        if (e.kind() != Expr::Kind::constant)
            throw DomainError("const rule applied to " + e.to_string());
        rep.conclusion = ck.establishes(inst.p, inst.r, e, inst.k, inst.p.intersect(set_of_bool(sp, e.value() == inst.k)));
        break;
    }
    case ExprRule::variable: {
        const LvExpr& v = need(inst.lve, "var");
        if (v.kind() != LvExpr::Kind::variable || !inst.lv)
            throw DomainError("var rule needs a variable and a target l-value");
        rep.conclusion = ck.establishes_lv(inst.p, inst.r, v, *inst.lv, inst.p.intersect(set_of_bool(sp, LValue::var(v.name()) == *inst.lv)));
        break;
    }
    case ExprRule::deref: {
        const Expr& e = need(inst.e, "deref");
        if (e.kind() != Expr::Kind::deref)
            throw DomainError("deref rule applied to " + e.to_string());
        premise("P stable under r", side_condition(stable(inst.P, inst.r)));
        for (const LValue& lv : possible_lvalues(sp, e.lvexpr())) {
            const StateSet P1 = lookup(sp, inst.P1lv, lv);
            premise("establish " + e.lvexpr().to_string() + " -> " + lv.to_string(), ck.establishes_lv(inst.p, inst.r, e.lvexpr(), lv, P1));
            auto idx = sp.index_of(lv);
            StateSet holds = idx ? sp.filter([&](StateId s) { return sp.value(s, *idx) == inst.k; }) : sp.none();
            premise("P1 " + lv.to_string() + " & {*" + lv.to_string() + " = " + inst.k.to_string() + "} <= P",
                    side_condition(P1.intersect(holds).subset_of(inst.P)));
        }
        rep.conclusion = ck.establishes(inst.p, inst.r, e, inst.k, inst.P);
        break;
    }
    case ExprRule::unary: {
        const Expr& e = need(inst.e, "unary");
        if (e.kind() != Expr::Kind::unary)
            throw DomainError("unary rule applied to " + e.to_string());
        for (const Value& k1 : possible_values(sp, e.operand())) {
            auto res = apply_unary(e.unary_op(), k1);
            if (!res || *res != inst.k)
                continue;
            const StateSet P1 = lookup(sp, inst.P1, k1);
            premise("establish " + e.operand().to_string() + " -> " + k1.to_string(), ck.establishes(inst.p, inst.r, e.operand(), k1, P1));
            premise("P1 " + k1.to_string() + " <= P", side_condition(P1.subset_of(inst.P)));
        }
        rep.conclusion = ck.establishes(inst.p, inst.r, e, inst.k, inst.P);
        break;
    }
    case ExprRule::binary: {
        const Expr& e = need(inst.e, "binary");
        if (e.kind() != Expr::Kind::binary)
            throw DomainError("binary rule applied to " + e.to_string());
        const Domain as = possible_values(sp, e.lhs());
        const Domain bs = possible_values(sp, e.rhs());
        std::map<Value, bool> seen1, seen2;
        for (const Value& k1 : as)
            for (const Value& k2 : bs) {
                auto res = apply_binary(e.binary_op(), k1, k2);
                if (!res || *res != inst.k)
                    continue;
                const StateSet P1 = lookup(sp, inst.P1, k1);
                const StateSet P2 = lookup(sp, inst.P2, k2);
                if (!seen1[k1])
                    premise("establish " + e.lhs().to_string() + " -> " + k1.to_string(), ck.establishes(inst.p, inst.r, e.lhs(), k1, P1));
                if (!seen2[k2])
                    premise("establish " + e.rhs().to_string() + " -> " + k2.to_string(), ck.establishes(inst.p, inst.r, e.rhs(), k2, P2));
                seen1[k1] = seen2[k2] = true;
                premise("P1 " + k1.to_string() + " & P2 " + k2.to_string() + " <= P", side_condition(P1.intersect(P2).subset_of(inst.P)));
            }
        rep.conclusion = ck.establishes(inst.p, inst.r, e, inst.k, inst.P);
        break;
    }
    case ExprRule::array: {
        const LvExpr& lve = need(inst.lve, "array");
        if (lve.kind() != LvExpr::Kind::array_index || !inst.lv)
            throw DomainError("array rule needs an indexed l-value expression and a target l-value");
        const LValue& target = *inst.lv;
        if (!target.is_base()) {
            const LValue A = target.parent();
            const Value& k = target.indices.back();
            const StateSet P1 = lookup(sp, inst.P1lv, A);
            const StateSet P2 = lookup(sp, inst.P2, k);
            premise("establish " + lve.array().to_string() + " -> " + A.to_string(), ck.establishes_lv(inst.p, inst.r, lve.array(), A, P1));
            premise("establish " + lve.index().to_string() + " -> " + k.to_string(), ck.establishes(inst.p, inst.r, lve.index(), k, P2));
            premise("P1 " + A.to_string() + " & P2 " + k.to_string() + " <= P", side_condition(P1.intersect(P2).subset_of(inst.P)));
        }
        rep.conclusion = ck.establishes_lv(inst.p, inst.r, lve, target, inst.P);
        break;
    }
    }
    rep.settle();
    return rep;
}

// ---------------------------------------------------------------- conditional

namespace {

void guard_premises(Checker& ck, TheoremReport& rep, const Expr& b, const StateSet& p, const StateRel& r, const StateSet& pT,
                    const StateSet& pF, const std::string& prefix)
{
    const StateSpace& sp = ck.space();
    rep.premises.push_back({prefix + "-true", ck.establishes(p, r, b, vtrue(), pT)});
    rep.premises.push_back({prefix + "-false", ck.establishes(p, r, b, vfalse(), pF)});
    for (const Value& k : possible_values(sp, b))
        rep.premises.push_back({prefix + "-bool " + k.to_string(), ck.establishes(p, r, b, k, set_of_bool(sp, k.is_bool()))});
}

} // namespace

TheoremReport check_conditional_theorem(Checker& ck, const ConditionalInstance& inst)
{
    const StateSpace& sp = ck.space();
    TheoremReport rep;
    rep.theorem = "rely-conditional";
    rep.premises.push_back({"q tolerates r from p", side_condition(tolerates(inst.q, inst.r, inst.p))});
    guard_premises(ck, rep, inst.b, inst.p, inst.r, inst.pT, inst.pF, "cond");
    const Command lhs = spec(sp, inst.r, inst.p, inst.q);
    const Command rhs = cmd::conditional(sp, inst.b, spec(sp, inst.r, inst.pT, inst.q), spec(sp, inst.r, inst.pF, inst.q));
    rep.conclusion = ck.refines(lhs, rhs);
    rep.settle();
    return rep;
}

// ---------------------------------------------------------------- recursion

TheoremReport check_recursion_theorem(Checker& ck, const RecursionInstance& inst)
{
    const StateSpace& sp = ck.space();
    const VariantSpec& z = inst.variant;
    TheoremReport rep;
    rep.theorem = "wf-recursion";
    rep.premises.push_back({"order well-founded", side_condition(is_well_founded(z.order))});
    rep.premises.push_back({"variant compatible", side_condition(z.compatible(sp))});
    rep.premises.push_back({"{pX};s >= f top",
                            ck.refines(Command::seq(cmd::assertion(sp, inst.pX), inst.s), substitute(inst.f, Command::top()))});
    for (const Value& k : z.order.carrier()) {
        const Command hyp = Command::seq(cmd::assertion(sp, z.below(sp, k).unite(inst.pX)), inst.s);
        rep.premises.push_back({"{z=" + k.to_string() + "};s >= f({z<<k | pX};s)",
                                ck.refines(Command::seq(cmd::assertion(sp, z.equal_to(sp, k)), inst.s), substitute(inst.f, hyp))});
    }
    rep.conclusion = ck.refines(inst.s, Command::nu(inst.f, "f"));
    rep.settle();
    return rep;
}

// ---------------------------------------------------------------- while

Command while_spec(const StateSpace& space, const WhileInstance& inst)
{
    return spec(space, inst.r, inst.p, range_restrict(refl_trans_closure(inst.q), inst.pF));
}

TheoremReport check_while_theorem(Checker& ck, const WhileInstance& inst)
{
    const StateSpace& sp = ck.space();
    const VariantSpec& z = inst.variant;
    const StateRel qs = refl_trans_closure(inst.q);
    TheoremReport rep;
    rep.theorem = "intro-while";
    auto premise = [&](std::string name, Verdict v) { rep.premises.push_back({std::move(name), std::move(v)}); };
    premise("order well-founded", side_condition(is_well_founded(z.order)));
    premise("order transitive", side_condition(z.order.is_transitive()));
    premise("variant compatible", side_condition(z.compatible(sp)));
    premise("q* tolerates r from p", side_condition(tolerates(qs, inst.r, inst.p)));
    premise("non-increasing", side_condition(z.non_increasing(sp, inst.r)));
    guard_premises(ck, rep, inst.b, inst.p, inst.r, inst.pT, inst.pF, "while");
    premise("while-infeas", ck.establishes(inst.pX.intersect(inst.p), inst.r, inst.b, vtrue(), sp.none()));
    for (const Value& k : z.order.carrier()) {
        const StateSet pre = inst.pT.intersect(z.at_most(sp, k));
        const StateSet post = z.below(sp, k).unite(inst.pX).intersect(inst.p);
        premise("while-ref " + k.to_string(), ck.refines(spec(sp, inst.r, pre, range_restrict(qs, post)), inst.c));
    }
    rep.conclusion = ck.refines(while_spec(sp, inst), cmd::while_loop(sp, inst.b, inst.c));
    rep.settle();
    return rep;
}

// ---------------------------------------------------------------- negative control

bool NegativeControlReport::as_expected() const
{
    return premise.holds() && interfered.fails() && isolated.holds() && variant_increase.fails() && variant_stable.holds();
}

NegativeControlReport negative_control_hoare_loop(std::size_t depth, Engine engine)
{
    static const StateSpace space(StateSpaceDecl().add_var("x", int_range(0, 1)));
    Checker ck(space, CheckOptions{.depth = depth, .engine = engine});
    const Expr x = Expr::var("x");
    const StateSet p = states_where(space, Expr::binary(x, BinaryOp::eq, Expr::constant(Value::integer(0))));
    const Expr b = Expr::binary(x, BinaryOp::ne, Expr::constant(Value::integer(0)));
    const StateSet pb = p.intersect(states_where(space, b));
    const StateSet pnb = p.minus(states_where(space, b));
    const Command c = cmd::assignment(space, LValue::var("x"), Expr::constant(Value::integer(0)));
    const StateRel id = space.identity();
    const StateRel sets_one = pairs_where(space, Expr::binary(Expr::binary(Expr::var("x", true), BinaryOp::eq, Expr::constant(Value::integer(1))),
                                                               BinaryOp::logical_or, Expr::binary(Expr::var("x", true), BinaryOp::eq, x)));
    const Command loop = cmd::while_loop(space, b, c);

    NegativeControlReport rep;
    rep.premise = ck.hoare_triple(pb, Command::conj(cmd::rely(space, id), c), p);
    rep.interfered = ck.hoare_triple(p, Command::conj(cmd::rely(space, sets_one), loop), pnb);
    rep.isolated = ck.hoare_triple(p, Command::conj(cmd::rely(space, id), loop), pnb);

    // while x > 0 do x := x - 1: the variant x bounds the number of iterations
    // only while the environment cannot raise it
    const Expr pos = Expr::binary(x, BinaryOp::gt, Expr::constant(Value::integer(0)));
    const Command dec = cmd::assignment(space, LValue::var("x"), Expr::binary(x, BinaryOp::sub, Expr::constant(Value::integer(1))));
    const Command body = cmd::while_body(space, pos, dec);
    const Command countdown = cmd::while_loop(space, pos, dec);
    const std::size_t m = space.lvalues().front().domain.size();
    const Command bounded = unfold_from_bot(body, m + 1);
    const StateRel down = pairs_where(space, Expr::binary(Expr::var("x", true), BinaryOp::le, x));
    rep.variant_increase = ck.refines(Command::conj(cmd::rely(space, space.univ()), bounded), Command::conj(cmd::rely(space, space.univ()), countdown));
    rep.variant_stable = ck.refines(Command::conj(cmd::rely(space, down), bounded), Command::conj(cmd::rely(space, down), countdown));
    return rep;
}

// ---------------------------------------------------------------- spaces

StateSpace expr_space()
{
    return StateSpace(StateSpaceDecl().add_var("x", int_range(0, 1)).add_var("y", int_range(0, 1)));
}

StateSpace array_space()
{
    return StateSpace(StateSpaceDecl().add_array("a", int_range(0, 1), int_range(0, 1)).add_var("i", int_range(0, 1)));
}

StateSpace loop_space()
{
    return StateSpace(StateSpaceDecl().add_var("x", int_range(0, 2)).add_var("f", int_range(0, 1)));
}

// ---------------------------------------------------------------- generators

namespace {

StateRel random_rely(const StateSpace& sp, Rng& rng)
{
    StateRel r = rng.state_rel(sp, 0.3);
    if (rng.coin(0.6))
        r = r.unite(sp.identity());
    return r;
}

// Occasionally drops a state so that some generated premises fail.
StateSet perturb(StateSet s, Rng& rng, double chance = 0.15)
{
    if (!rng.coin(chance))
        return s;
    auto ms = s.members();
    if (!ms.empty())
        s.erase(ms[rng.below(ms.size())]);
    return s;
}

StateSet sp_expr(Checker& ck, const StateSet& p, const StateRel& r, const Expr& e, const Value& k)
{
    return ck.strongest_post(p, Command::conj(cmd::rely(ck.space(), r), cmd::eval_expr(ck.space(), e, k)));
}

StateSet sp_lv(Checker& ck, const StateSet& p, const StateRel& r, const LvExpr& e, const LValue& lv)
{
    return ck.strongest_post(p, Command::conj(cmd::rely(ck.space(), r), cmd::eval_lvexpr(ck.space(), e, lv)));
}

Expr cnst(int v) { return Expr::constant(Value::integer(v)); }

} // namespace

ExprRuleInstance random_expr_rule_instance(ExprRule rule, Checker& ck, Rng& rng)
{
    const StateSpace& sp = ck.space();
    ExprRuleInstance inst;
    inst.rule = rule;
    inst.r = random_rely(sp, rng);
    inst.p = stable_closure(rng.state_set(sp, 0.4), inst.r);
    inst.P = sp.none();
    auto pick = [&](const Domain& d) { return d[rng.below(d.size())]; };
    const Domain bits = int_range(0, 1);
    switch (rule) {
    case ExprRule::constant:
        inst.e = cnst(static_cast<int>(rng.below(2)));
        inst.k = pick(bits);
        break;
    case ExprRule::variable:
        inst.lve = LvExpr::variable(rng.coin() ? "x" : "y");
        inst.lv = LValue::var(rng.coin() ? "x" : "y");
        break;
    case ExprRule::deref: {
        const bool arr = sp.index_of(LValue::var("i")).has_value();
        const LvExpr lve = arr ? LvExpr::array_index(LvExpr::variable("a"), Expr::var("i")) : LvExpr::variable(rng.coin() ? "x" : "y");
        inst.e = Expr::deref(lve);
        inst.k = pick(bits);
        StateSet P = sp.none();
        for (const LValue& lv : possible_lvalues(sp, lve)) {
            StateSet P1 = perturb(sp_lv(ck, inst.p, inst.r, lve, lv), rng);
            auto idx = sp.index_of(lv);
            if (idx)
                P = P.unite(P1.intersect(sp.filter([&](StateId s) { return sp.value(s, *idx) == inst.k; })));
            inst.P1lv.emplace(lv, std::move(P1));
        }
        inst.P = rng.coin(0.15) ? perturb(P, rng, 1.0) : stable_closure(P, inst.r);
        break;
    }
    case ExprRule::unary: {
        const Expr e = rng.coin() ? Expr::unary(UnaryOp::logical_not, Expr::binary(Expr::var("x"), BinaryOp::eq, Expr::var("y")))
                                  : Expr::unary(UnaryOp::negate, Expr::var("x"));
        inst.e = e;
        inst.k = pick(possible_values(sp, e));
        for (const Value& k1 : possible_values(sp, e.operand())) {
            auto res = apply_unary(e.unary_op(), k1);
            if (!res || *res != inst.k)
                continue;
            StateSet P1 = perturb(sp_expr(ck, inst.p, inst.r, e.operand(), k1), rng);
            inst.P = inst.P.unite(P1);
            inst.P1.emplace(k1, std::move(P1));
        }
        inst.P = perturb(inst.P, rng);
        break;
    }
    case ExprRule::binary: {
        static const BinaryOp ops[] = {BinaryOp::add, BinaryOp::sub, BinaryOp::eq, BinaryOp::lt, BinaryOp::ne};
        const Expr lhs = Expr::var("x");
        const Expr rhs = rng.coin() ? Expr::var("y") : Expr::var("x");
        const Expr e = Expr::binary(lhs, ops[rng.below(std::size(ops))], rhs);
        inst.e = e;
        inst.k = pick(possible_values(sp, e));
        for (const Value& k1 : possible_values(sp, lhs))
            for (const Value& k2 : possible_values(sp, rhs)) {
                auto res = apply_binary(e.binary_op(), k1, k2);
                if (!res || *res != inst.k)
                    continue;
                if (!inst.P1.count(k1))
                    inst.P1.emplace(k1, perturb(sp_expr(ck, inst.p, inst.r, lhs, k1), rng, 0.1));
                if (!inst.P2.count(k2))
                    inst.P2.emplace(k2, perturb(sp_expr(ck, inst.p, inst.r, rhs, k2), rng, 0.1));
                inst.P = inst.P.unite(inst.P1.at(k1).intersect(inst.P2.at(k2)));
            }
        inst.P = perturb(inst.P, rng);
        break;
    }
    case ExprRule::array: {
        const LvExpr lve = LvExpr::array_index(LvExpr::variable("a"), Expr::var("i"));
        inst.lve = lve;
        const Value k = pick(bits);
        const LValue A = LValue::var("a");
        inst.lv = A.indexed(k);
        StateSet P1 = perturb(sp_lv(ck, inst.p, inst.r, lve.array(), A), rng, 0.1);
        StateSet P2 = perturb(sp_expr(ck, inst.p, inst.r, lve.index(), k), rng, 0.1);
        inst.P = perturb(P1.intersect(P2), rng);
        inst.P1lv.emplace(A, std::move(P1));
        inst.P2.emplace(k, std::move(P2));
        break;
    }
    }
    return inst;
}

namespace {

Expr random_guard(Rng& rng, bool allow_non_bool)
{
    const Expr x = Expr::var("x");
    switch (rng.below(allow_non_bool ? 5 : 4)) {
    case 0: return Expr::binary(x, BinaryOp::gt, cnst(0));
    case 1: return Expr::binary(x, BinaryOp::eq, Expr::var("f"));
    case 2: return Expr::binary(Expr::binary(x, BinaryOp::gt, cnst(0)), BinaryOp::logical_and, Expr::binary(Expr::var("f"), BinaryOp::eq, cnst(0)));
    case 3: return Expr::binary(x, BinaryOp::ne, cnst(1));
    default: return Expr::binary(x, BinaryOp::sub, Expr::var("f"));
    }
}

// q = r* ; q0 ; r* tolerates r from any stable p
StateRel tolerant_q(const StateSpace& sp, const StateRel& r, Rng& rng)
{
    const StateRel rs = refl_trans_closure(r);
    StateRel q0 = rng.coin(0.3) ? sp.univ() : rng.state_rel(sp, 0.4);
    if (rng.coin(0.5))
        q0 = q0.unite(sp.identity());
    StateRel q = compose(rs, compose(q0, rs));
    return rng.coin(0.1) ? rng.state_rel(sp, 0.5) : q;
}

} // namespace

ConditionalInstance random_conditional_instance(Checker& ck, Rng& rng)
{
    const StateSpace& sp = ck.space();
    ConditionalInstance inst{random_guard(rng, true), random_rely(sp, rng), sp.empty_rel(), sp.none(), sp.none(), sp.none()};
    inst.p = stable_closure(rng.state_set(sp, 0.5), inst.r);
    inst.q = tolerant_q(sp, inst.r, rng);
    inst.pT = perturb(sp_expr(ck, inst.p, inst.r, inst.b, vtrue()), rng, 0.1);
    inst.pF = perturb(sp_expr(ck, inst.p, inst.r, inst.b, vfalse()), rng, 0.1);
    return inst;
}

RecursionInstance random_recursion_instance(const StateSpace& sp, Rng& rng)
{
    // f x = [x = 0] ; base  |  [x > 0] ; step ; x
    const Expr x = Expr::var("x");
    const StateSet zero = states_where(sp, Expr::binary(x, BinaryOp::eq, cnst(0)));
    const StateSet pos = zero.complement();
    StateRel step = pairs_where(sp, Expr::binary(Expr::var("x", true), BinaryOp::lt, x));
    if (rng.coin(0.2))
        step = step.unite(rng.state_rel(sp, 0.2));
    const StateRel base = rng.coin(0.5) ? sp.identity() : rng.state_rel(sp, 0.5);
    const Command f = Command::choice({Command::seq(Command::test(zero), Command::pgm(base)),
                                       Command::seq(Command::test(pos), Command::seq(Command::pgm(step), Command::var(0)))});
    const StateRel q = rng.coin(0.5) ? sp.univ() : compose(refl_trans_closure(step.unite(base)), base).unite(rng.coin() ? base : sp.empty_rel());
    Command s = cmd::post_spec(sp, q);
    if (rng.coin(0.3))
        s = Command::conj(cmd::guar(sp, step.unite(base)), s);
    StateSet pX = rng.coin(0.5) ? sp.none() : zero;
    if (rng.coin(0.2))
        pX = rng.state_set(sp, 0.5);
    return RecursionInstance{f, s, pX, VariantSpec{x, ValueOrder::less_than(int_range(0, 2))}};
}

WhileInstance random_while_instance(Checker& ck, Rng& rng)
{
    const StateSpace& sp = ck.space();
    const Expr x = Expr::var("x");
    VariantSpec z{x, ValueOrder::less_than(int_range(0, 2))};
    const StateRel nonincr = pairs_where(sp, Expr::binary(Expr::var("x", true), BinaryOp::le, x));
    StateRel r = random_rely(sp, rng);
    if (rng.coin(0.8))
        r = r.intersect(nonincr);
    const Expr b = rng.coin(0.7) ? Expr::binary(x, BinaryOp::gt, cnst(0)) : random_guard(rng, true);
    Command c = cmd::assignment(sp, LValue::var("x"), Expr::binary(x, BinaryOp::sub, cnst(1)));
    switch (rng.below(4)) {
    case 0: c = cmd::assignment(sp, LValue::var("x"), cnst(0)); break;
    case 1: c = cmd::cas(sp, LValue::var("x"), x, Expr::binary(x, BinaryOp::sub, cnst(1))); break;
    case 2: c = Command::seq(c, cmd::assignment(sp, LValue::var("f"), cnst(static_cast<int>(rng.below(2))))); break;
    default: break;
    }
    const StateSet p = stable_closure(states_where(sp, Expr::binary(x, BinaryOp::ge, cnst(0))).intersect(rng.coin(0.7) ? sp.all() : rng.state_set(sp, 0.7)), r);
    StateRel q = rng.coin(0.6) ? sp.univ() : compose(refl_trans_closure(r), compose(nonincr, refl_trans_closure(r)));
    StateSet pX = sp.none();
    if (rng.coin(0.4))
        pX = states_where(sp, Expr::binary(x, BinaryOp::eq, cnst(0)));
    WhileInstance inst{b, c, r, q, p, sp.none(), sp.none(), pX, z};
    inst.pT = perturb(sp_expr(ck, p, r, b, vtrue()), rng, 0.1);
    inst.pF = perturb(sp_expr(ck, p, r, b, vfalse()), rng, 0.1);
    return inst;
}

// ---------------------------------------------------------------- sweeps

void TheoremSweep::add(const TheoremReport& r, const std::string& what)
{
    ++instances;
    switch (r.outcome) {
    case Outcome::holds: ++holds; break;
    case Outcome::premise_violation: ++premise_violations; break;
    case Outcome::inconclusive: ++inconclusive; break;
    default:
        ++soundness_alarms;
        alarms.push_back(what);
        break;
    }
}

TheoremSweep sweep_expression_rules(std::size_t per_rule, std::uint64_t seed, std::size_t depth, Engine engine)
{
    const StateSpace plain = expr_space();
    const StateSpace arr = array_space();
    Checker ckp(plain, CheckOptions{.depth = depth, .engine = engine});
    Checker cka(arr, CheckOptions{.depth = depth, .engine = engine});
    Rng rng(seed);
    TheoremSweep out;
    for (ExprRule rule : {ExprRule::constant, ExprRule::variable, ExprRule::deref, ExprRule::unary, ExprRule::binary, ExprRule::array})
        for (std::size_t n = 0; n < per_rule; ++n) {
            const bool use_array = rule == ExprRule::array || (rule == ExprRule::deref && n % 2 == 1);
            Checker& ck = use_array ? cka : ckp;
            ExprRuleInstance inst = random_expr_rule_instance(rule, ck, rng);
            out.add(check_expression_rule(ck, inst), to_string(rule) + " #" + std::to_string(n));
        }
    return out;
}

TheoremSweep sweep_conditional(std::size_t count, std::uint64_t seed, std::size_t depth, Engine engine)
{
    const StateSpace sp = loop_space();
    Checker ck(sp, CheckOptions{.depth = depth, .engine = engine});
    Rng rng(seed);
    TheoremSweep out;
    for (std::size_t n = 0; n < count; ++n)
        out.add(check_conditional_theorem(ck, random_conditional_instance(ck, rng)), "conditional #" + std::to_string(n));
    return out;
}

TheoremSweep sweep_recursion(std::size_t count, std::uint64_t seed, std::size_t depth, Engine engine)
{
    const StateSpace sp(StateSpaceDecl().add_var("x", int_range(0, 2)));
    Checker ck(sp, CheckOptions{.depth = depth, .engine = engine});
    Rng rng(seed);
    TheoremSweep out;
    for (std::size_t n = 0; n < count; ++n)
        out.add(check_recursion_theorem(ck, random_recursion_instance(sp, rng)), "recursion #" + std::to_string(n));
    return out;
}

TheoremSweep sweep_while(std::size_t count, std::uint64_t seed, std::size_t depth, Engine engine)
{
    const StateSpace sp = loop_space();
    Checker ck(sp, CheckOptions{.depth = depth, .engine = engine});
    Rng rng(seed);
    TheoremSweep out;
    for (std::size_t n = 0; n < count; ++n)
        out.add(check_while_theorem(ck, random_while_instance(ck, rng)), "while #" + std::to_string(n));
    return out;
}

} // namespace rgk
