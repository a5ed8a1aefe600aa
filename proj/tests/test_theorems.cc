#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "rgk/lang.hh"
#include "rgk/theorems.hh"

using namespace rgk;

namespace {

Expr x() { return Expr::var("x"); }
Expr y() { return Expr::var("y"); }
Expr lit(int v) { return Expr::constant(Value::integer(v)); }
Expr eq(Expr a, Expr b) { return Expr::binary(std::move(a), BinaryOp::eq, std::move(b)); }

StateSpace counter(int hi) { return StateSpace(StateSpaceDecl().add_var("x", int_range(0, hi))); }

const Obligation* premise(const TheoremReport& r, const std::string& name)
{
    for (const Obligation& o : r.premises)
        if (o.name == name)
            return &o;
    return nullptr;
}

VariantSpec down_x(int hi) { return VariantSpec{x(), ValueOrder::less_than(int_range(0, hi))}; }

// [x = 0] ; pgm base  |  [x > 0] ; pgm step ; f
Command countdown(const StateSpace& sp, const StateRel& step)
{
    const StateSet zero = states_where(sp, eq(x(), lit(0)));
    return Command::choice({Command::seq(Command::test(zero), Command::pgm(sp.identity())),
                            Command::seq(Command::test(zero.complement()), Command::seq(Command::pgm(step), Command::var(0)))});
}

} // namespace

TEST_CASE("report settling")
{
    TheoremReport r;
    r.premises = {{"a", Verdict{}}, {"b", Verdict{}}};
    r.conclusion.outcome = Outcome::fails;
    r.settle();
    CHECK(r.outcome == Outcome::soundness_alarm);
    r.premises[1].verdict.outcome = Outcome::fails;
    r.settle();
    CHECK(r.outcome == Outcome::premise_violation);
    r.premises[1].verdict.outcome = Outcome::inconclusive;
    r.settle();
    CHECK(r.outcome == Outcome::inconclusive);
    r.premises[1].verdict.outcome = Outcome::holds;
    r.conclusion.outcome = Outcome::holds;
    r.settle();
    CHECK(r.outcome == Outcome::holds);
}

TEST_CASE("variant sets")
{
    StateSpace sp = counter(2);
    VariantSpec z = down_x(2);
    CHECK(z.compatible(sp));
    CHECK(z.below(sp, Value::integer(1)) == sp.singleton(0));
    CHECK(z.at_most(sp, Value::integer(1)).count() == 2);
    CHECK(z.equal_to(sp, Value::integer(2)) == sp.singleton(2));
    CHECK(z.non_increasing(sp, pairs_where(sp, Expr::binary(Expr::var("x", true), BinaryOp::le, x()))));
    CHECK_FALSE(z.non_increasing(sp, sp.univ()));
    CHECK_FALSE(down_x(1).compatible(sp));
}

TEST_CASE("constant rule")
{
    StateSpace sp = counter(1);
    Checker ck(sp);
    ExprRuleInstance inst;
    inst.rule = ExprRule::constant;
    inst.p = sp.all();
    inst.r = sp.univ();
    inst.e = lit(1);
    inst.k = Value::integer(1);
    CHECK(check_expression_rule(ck, inst).outcome == Outcome::holds);
    inst.k = Value::integer(0);
    // {p} r [1 -> 0] {false}: infeasible, still holds
    CHECK(check_expression_rule(ck, inst).outcome == Outcome::holds);
}

TEST_CASE("binary rule when both operands are preserved")
{
    StateSpace sp(StateSpaceDecl().add_var("x", int_range(0, 1)).add_var("y", int_range(0, 1)));
    Checker ck(sp);
    ExprRuleInstance inst;
    inst.rule = ExprRule::binary;
    inst.p = sp.all();
    inst.r = sp.identity();
    inst.e = Expr::binary(x(), BinaryOp::add, y());
    inst.k = Value::integer(1);
    for (int v : {0, 1}) {
        inst.P1[Value::integer(v)] = states_where(sp, eq(x(), lit(v)));
        inst.P2[Value::integer(v)] = states_where(sp, eq(y(), lit(v)));
    }
    inst.P = states_where(sp, eq(Expr::binary(x(), BinaryOp::add, y()), lit(1)));
    TheoremReport r = check_expression_rule(ck, inst);
    CHECK(r.outcome == Outcome::holds);
    CHECK(r.premises.size() > 3);
}

TEST_CASE("deref rule with unstable postcondition")
{
    StateSpace sp = counter(1);
    Checker ck(sp);
    ExprRuleInstance inst;
    inst.rule = ExprRule::deref;
    inst.p = sp.all();
    inst.r = sp.univ();
    inst.e = x();
    inst.k = Value::integer(0);
    inst.P = states_where(sp, eq(x(), lit(0)));
    inst.P1lv[LValue::var("x")] = sp.all();
    TheoremReport r = check_expression_rule(ck, inst);
    CHECK(r.outcome == Outcome::premise_violation);
    REQUIRE(premise(r, "P stable under r"));
    CHECK(premise(r, "P stable under r")->verdict.fails());
    CHECK(r.conclusion.fails());
}

TEST_CASE("rule applied to the wrong shape is an error")
{
    StateSpace sp = counter(1);
    Checker ck(sp);
    ExprRuleInstance inst;
    inst.rule = ExprRule::binary;
    inst.p = sp.all();
    inst.r = sp.identity();
    inst.e = x();
    CHECK_THROWS(check_expression_rule(ck, inst));
}

TEST_CASE("conditional theorem")
{
    StateSpace sp = counter(2);
    Checker ck(sp);
    const Expr b = eq(x(), lit(0));
    ConditionalInstance inst{b, sp.identity(), pairs_where(sp, eq(Expr::var("x", true), lit(0))), sp.all(), states_where(sp, b),
                             states_where(sp, b).complement()};
    CHECK(check_conditional_theorem(ck, inst).outcome == Outcome::holds);
    inst.r = sp.univ();
    CHECK(check_conditional_theorem(ck, inst).outcome == Outcome::premise_violation);
}

TEST_CASE("recursion: identity body refines chaos")
{
    StateSpace sp = counter(2);
    Checker ck(sp, {3, Engine::graph});
    RecursionInstance inst{Command::var(0), Command::top(), sp.none(), down_x(2)};
    TheoremReport r = check_recursion_theorem(ck, inst);
    CHECK(r.outcome == Outcome::holds);
    CHECK(ck.equals(Command::nu(Command::var(0)), Command::top()).holds());
}

TEST_CASE("recursion: decrementing body")
{
    StateSpace sp = counter(2);
    Checker ck(sp, {4, Engine::graph});
    const StateRel dec = pairs_where(sp, eq(Expr::var("x", true), Expr::binary(x(), BinaryOp::sub, lit(1))));
    RecursionInstance inst{countdown(sp, dec), cmd::post_spec(sp, sp.univ()), sp.none(), down_x(2)};
    TheoremReport r = check_recursion_theorem(ck, inst);
    CHECK(r.outcome == Outcome::holds);
    CHECK(r.conclusion.holds());
}

TEST_CASE("recursion: dropping the decrease violates a premise")
{
    StateSpace sp = counter(2);
    Checker ck(sp, {4, Engine::graph});
    RecursionInstance inst{countdown(sp, sp.identity()), cmd::post_spec(sp, sp.univ()), sp.none(), down_x(2)};
    TheoremReport r = check_recursion_theorem(ck, inst);
    CHECK(r.outcome == Outcome::premise_violation);
}

namespace {

WhileInstance countdown_loop(const StateSpace& sp, const StateRel& r)
{
    const Expr b = Expr::binary(x(), BinaryOp::gt, lit(0));
    const StateSet zero = states_where(sp, eq(x(), lit(0)));
    return WhileInstance{b, cmd::assignment(sp, LValue::var("x"), Expr::binary(x(), BinaryOp::sub, lit(1))), r, sp.univ(), sp.all(),
                         zero.complement(), zero, sp.none(), down_x(3)};
}

} // namespace

TEST_CASE("while: counter decrement without early exit")
{
    StateSpace sp = counter(3);
    Checker ck(sp, {5, Engine::graph});
    TheoremReport r = check_while_theorem(ck, countdown_loop(sp, sp.identity()));
    CHECK(r.outcome == Outcome::holds);
    for (const Obligation& o : r.premises) {
        CAPTURE(o.name);
        CHECK(o.verdict.holds());
    }
}

TEST_CASE("while: interference may increase the variant")
{
    StateSpace sp = counter(3);
    Checker ck(sp, {4, Engine::graph});
    TheoremReport r = check_while_theorem(ck, countdown_loop(sp, sp.univ()));
    CHECK(r.outcome == Outcome::premise_violation);
    REQUIRE(premise(r, "non-increasing"));
    CHECK(premise(r, "non-increasing")->verdict.fails());
}

TEST_CASE("while spec shape")
{
    StateSpace sp = counter(3);
    Checker ck(sp, {4, Engine::graph});
    WhileInstance inst = countdown_loop(sp, sp.identity());
    // the loop ends with x = 0
    CHECK(ck.refines(while_spec(sp, inst), Command::conj(cmd::rely(sp, inst.r), cmd::while_loop(sp, inst.b, inst.c))).holds());
    CHECK(ck.hoare_triple(sp.all(), Command::conj(cmd::rely(sp, inst.r), cmd::while_loop(sp, inst.b, inst.c)), inst.pF).holds());
}

TEST_CASE("negative control")
{
    NegativeControlReport n = negative_control_hoare_loop(5, Engine::graph);
    CHECK(n.premise.holds());
    CHECK(n.interfered.fails());
    REQUIRE(n.interfered.counterexample);
    CHECK(n.isolated.holds());
    CHECK(n.variant_increase.fails());
    CHECK(n.variant_stable.holds());
    CHECK(n.as_expected());
}

TEST_CASE("sweeps raise no soundness alarms")
{
    const std::size_t depth = 3;
    for (const TheoremSweep& s : {sweep_expression_rules(10, 7, depth, Engine::graph), sweep_conditional(50, 7, depth, Engine::graph),
                                  sweep_recursion(50, 7, depth, Engine::graph), sweep_while(50, 7, depth, Engine::graph)}) {
        CHECK(s.instances >= 50);
        CHECK(s.soundness_alarms == 0);
        CHECK(s.inconclusive == 0);
        CHECK(s.alarms.empty());
        // generators must exercise both outcomes
        CHECK(s.holds > 0);
        CHECK(s.premise_violations > 0);
    }
}

TEST_CASE("expression rule names")
{
    for (ExprRule r : {ExprRule::constant, ExprRule::variable, ExprRule::deref, ExprRule::unary, ExprRule::binary, ExprRule::array})
        CHECK(parse_expr_rule(to_string(r)) == r);
    CHECK_FALSE(parse_expr_rule("ternary"));
}
