#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "rgk/case_studies.hh"
#include "rgk/lang.hh"
#include "rgk/random.hh"
#include "rgk/refinement.hh"

using namespace rgk;

namespace {

StateSpace two() { return StateSpace(StateSpaceDecl().add_var("x", int_range(0, 1))); }

Expr x() { return Expr::var("x"); }
Expr lit(int v) { return Expr::constant(Value::integer(v)); }

StateSet single(const StateSpace& sp, StateId s) { return sp.singleton(s); }

} // namespace

TEST_CASE("test refinement follows set inclusion")
{
    StateSpace sp = two();
    for (Engine e : {Engine::enumerate, Engine::graph}) {
        Checker ck(sp, {3, e});
        CHECK(ck.refines(Command::test(sp.all()), Command::test(single(sp, 0))).holds());
        Verdict v = ck.refines(Command::test(single(sp, 0)), Command::test(single(sp, 1)));
        REQUIRE(v.fails());
        REQUIRE(v.counterexample);
        CHECK(v.counterexample->start == 1);
        CHECK(v.counterexample->steps.empty());
        CHECK(v.counterexample->status == Status::terminated);
    }
}

TEST_CASE("bot is least")
{
    StateSpace sp = two();
    Checker ck(sp);
    Rng rng(11);
    for (int i = 0; i < 40; ++i)
        CHECK(ck.refines(rng.command(sp, 6), Command::bot()).holds());
}

TEST_CASE("hoare triples")
{
    StateSpace sp = two();
    Checker ck(sp);
    const StateSet zero = states_where(sp, Expr::binary(x(), BinaryOp::eq, lit(0)));
    for (const StateSet& p : {sp.none(), zero, sp.all()}) {
        CHECK(ck.hoare_triple(p, cmd::nil(sp), p).holds());
        for (const StateSet& q : {sp.none(), zero, sp.all()})
            CHECK(ck.hoare_triple(p, Command::top(), q).holds());
    }
    Command read = Command::conj(cmd::rely(sp, sp.identity()), cmd::eval_expr(sp, x(), Value::integer(0)));
    CHECK(ck.hoare_triple(zero, read, zero).holds());
}

TEST_CASE("hoare triple splits over precondition union")
{
    StateSpace sp(StateSpaceDecl().add_var("x", int_range(0, 2)));
    Checker ck(sp);
    Rng rng(5);
    for (int i = 0; i < 40; ++i) {
        Command c = rng.command(sp, 5);
        StateSet p = rng.state_set(sp), p1 = rng.state_set(sp), q = rng.state_set(sp);
        const bool both = ck.hoare_triple(p, c, q).holds() && ck.hoare_triple(p1, c, q).holds();
        CHECK(ck.hoare_triple(p.unite(p1), c, q).holds() == both);
    }
}

TEST_CASE("establishes under interference")
{
    StateSpace sp = two();
    Checker ck(sp);
    const StateSet zero = states_where(sp, Expr::binary(x(), BinaryOp::eq, lit(0)));
    CHECK(ck.establishes(sp.all(), sp.identity(), x(), Value::integer(0), zero).holds());
    Verdict v = ck.establishes(sp.all(), sp.univ(), x(), Value::integer(0), zero);
    CHECK(v.fails());
    REQUIRE(v.counterexample);
    // the environment moves x away after the read
    bool env = false;
    for (const Step& s : v.counterexample->steps)
        env = env || s.label == Label::eps;
    CHECK(env);
}

TEST_CASE("remove guard obligations")
{
    RemoveSetup s{RemoveConfig{}};
    const StateSpace& sp = *s.space;
    Checker ck(sp, {4, Engine::graph});
    const StateSet has_i = states_where(sp, s.guard);
    CHECK(ck.establishes(sp.all(), s.rely, s.guard, vtrue(), sp.all()).holds());
    // the environment may remove i right after the test
    CHECK(ck.establishes(sp.all(), s.rely, s.guard, vtrue(), has_i).fails());
    CHECK(ck.establishes(has_i.complement(), s.rely, s.guard, vtrue(), sp.none()).holds());
    CHECK(ck.establishes(has_i.complement(), sp.univ(), s.guard, vtrue(), sp.none()).fails());
}

TEST_CASE("guarantee satisfaction")
{
    StateSpace sp = two();
    Checker ck(sp, {1, Engine::graph});
    StateRel g = sp.empty_rel();
    g.insert(0, 1);
    CHECK(ck.satisfies_guarantee(Command::pgm(g), g).holds());
    Verdict v = ck.satisfies_guarantee(Command::pgm(sp.univ()), sp.identity());
    CHECK(v.fails());
    REQUIRE(v.counterexample);
    REQUIRE(v.counterexample->steps.size() == 1);
    CHECK(v.counterexample->steps[0].label == Label::pi);
    CHECK(v.counterexample->start != v.counterexample->steps[0].post);

    RemoveSetup s{RemoveConfig{}};
    Checker rk(*s.space, {6, Engine::graph});
    CHECK(rk.satisfies_guarantee(Command::conj(cmd::rely(*s.space, s.rely), s.code()), s.guarantee).holds());
}

TEST_CASE("refinement is a preorder and choice is a join")
{
    StateSpace sp = two();
    Checker ck(sp);
    Rng rng(3);
    for (int i = 0; i < 60; ++i) {
        Command c = rng.command(sp, 5), d = rng.command(sp, 5), e = rng.command(sp, 5);
        CHECK(ck.refines(c, c).holds());
        if (ck.refines(c, d).holds() && ck.refines(d, e).holds())
            CHECK(ck.refines(c, e).holds());
        Command j = Command::choice({c, d});
        CHECK(ck.refines(j, c).holds());
        CHECK(ck.refines(j, d).holds());
        if (ck.refines(e, c).holds() && ck.refines(e, d).holds())
            CHECK(ck.refines(e, j).holds());
    }
}

TEST_CASE("holding at a depth implies holding below it")
{
    StateSpace sp = two();
    Rng rng(9);
    for (int i = 0; i < 60; ++i) {
        Command c = rng.command(sp, 5), d = rng.command(sp, 5);
        for (std::size_t n = 1; n < 4; ++n) {
            Checker hi(sp, {n + 1, Engine::graph}), lo(sp, {n, Engine::graph});
            if (hi.refines(c, d).holds())
                CHECK(lo.refines(c, d).holds());
        }
    }
}

TEST_CASE("engines agree on refinement verdicts")
{
    StateSpace sp = two();
    Checker a(sp, {3, Engine::enumerate}), b(sp, {3, Engine::graph});
    Rng rng(21);
    for (int i = 0; i < 60; ++i) {
        Command c = rng.command(sp, 6), d = rng.command(sp, 6);
        Verdict va = a.refines(c, d), vb = b.refines(c, d);
        CHECK(va.outcome == vb.outcome);
        if (va.counterexample && vb.counterexample)
            CHECK_MESSAGE(*va.counterexample == *vb.counterexample, va.counterexample->to_string(sp) << " vs " << vb.counterexample->to_string(sp));
    }
}
