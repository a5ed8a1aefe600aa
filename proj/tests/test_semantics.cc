#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "rgk/error.hh"
#include "rgk/lang.hh"
#include "rgk/random.hh"
#include "rgk/semantics.hh"

using namespace rgk;

namespace {

StateSpace bits(int n)
{
    StateSpaceDecl d;
    d.add_var("x", int_range(0, n - 1));
    return StateSpace(d);
}

Trace tr(StateId s, std::vector<Step> steps, Status st) { return Trace{s, std::move(steps), st}; }

} // namespace

TEST_CASE("pgm identity then empty test leaves one incomplete step")
{
    StateSpace sp = bits(2);
    Command c = Command::seq(Command::pgm(sp.identity()), Command::test(sp.none()));
    for (Engine e : {Engine::enumerate, Engine::graph}) {
        TraceSet t = denote(sp, c, 2, e);
        // baseline at both states plus one incomplete pi step from each
        CHECK(t.size() == 4);
        CHECK(t.contains(tr(0, {}, Status::incomplete)));
        CHECK(t.contains(tr(0, {{Label::pi, 0}}, Status::incomplete)));
        CHECK_FALSE(t.contains(tr(0, {{Label::pi, 0}}, Status::terminated)));
        CHECK_FALSE(t.validate().has_value());
    }
}

TEST_CASE("parallel matches program with environment step")
{
    StateSpace sp = bits(2);
    StateRel r = sp.empty_rel();
    r.insert(0, 1);
    Command c = Command::par(Command::pgm(r), Command::env(r));
    for (Engine e : {Engine::enumerate, Engine::graph}) {
        TraceSet t = denote(sp, c, 1, e);
        CHECK(t.contains(tr(0, {{Label::pi, 1}}, Status::terminated)));
        CHECK_FALSE(t.contains(tr(0, {{Label::eps, 1}}, Status::terminated)));
    }
}

TEST_CASE("conjunction with top is top")
{
    StateSpace sp = bits(2);
    Rng rng(7);
    for (int i = 0; i < 30; ++i) {
        Command c = rng.command(sp, 5);
        for (Engine e : {Engine::enumerate, Engine::graph})
            CHECK(denote(sp, Command::conj(Command::top(), c), 3, e) == denote(sp, Command::top(), 3, e));
    }
}

TEST_CASE("nu of the identity body is top")
{
    StateSpace sp = bits(3);
    for (Engine e : {Engine::enumerate, Engine::graph})
        for (std::size_t n = 0; n < 4; ++n)
            CHECK(denote(sp, Command::nu(Command::var(0)), n, e) == denote(sp, Command::top(), n, e));
}

TEST_CASE("omega iteration of pi at depth 2")
{
    StateSpace sp = bits(2);
    Command c = cmd::om_iter(sp, cmd::pi(sp));
    TraceSet t = denote(sp, c, 2, Engine::enumerate);
    // every pi sequence of length <= 2, each incomplete and terminated
    std::size_t seqs = 2 + 4 + 8;
    CHECK(t.size() == 2 * seqs);
    CHECK(t == denote(sp, cmd::fin_iter(sp, cmd::pi(sp)), 2, Engine::enumerate));
    CHECK(t == denote(sp, c, 2, Engine::graph));
}

TEST_CASE("engines agree on random commands")
{
    for (int states : {2, 3}) {
        StateSpace sp = bits(states);
        Rng rng(1234 + states);
        for (int i = 0; i < 150; ++i) {
            Command c = rng.command(sp, 1 + rng.below(8));
            const std::size_t n = rng.below(4);
            TraceSet a = denote(sp, c, n, Engine::enumerate);
            TraceSet b = denote(sp, c, n, Engine::graph);
            CHECK_FALSE(a.validate().has_value());
            if (!(a == b))
                FAIL_CHECK("engines disagree on " << c.to_string() << " at depth " << n);
        }
    }
}

TEST_CASE("fixpoint iteration cap")
{
    CHECK(default_fixpoint_cap(2, 3) == 90);
}
