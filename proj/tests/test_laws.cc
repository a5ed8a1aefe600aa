#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "rgk/lang.hh"
#include "rgk/laws.hh"

using namespace rgk;

namespace {

StateSpace two() { return StateSpace(StateSpaceDecl().add_var("x", int_range(0, 1))); }

} // namespace

TEST_CASE("catalogue ids are unique and resolvable")
{
    std::set<std::string> ids;
    for (const Law& l : law_catalogue()) {
        CHECK(ids.insert(l.id).second);
        CHECK(find_law(l.id) == &l);
    }
    CHECK(find_law("no-such-law") == nullptr);
    for (const char* id : {"assert-alt", "assert-merge", "assert-test", "assert-union", "assert-Union", "spec-test", "spec-split",
                           "rely-distrib-seq", "spec-tolerates", "term-fair"})
        CHECK(ids.count(id) == 1);
}

TEST_CASE("assert-merge instance")
{
    StateSpace sp = two();
    Checker ck(sp);
    StateSet s0 = sp.singleton(0);
    LawBindings b;
    b.sets = {{"p1", s0}, {"p2", sp.all()}};
    CHECK(check_law(ck, "assert-merge", b).holds());
    CHECK(ck.equals(Command::seq(cmd::assertion(sp, s0), cmd::assertion(sp, sp.all())), cmd::assertion(sp, s0)).holds());
}

TEST_CASE("spec-split with identities")
{
    StateSpace sp = two();
    Checker ck(sp);
    LawBindings b;
    b.sets = {{"p", sp.all()}};
    b.rels = {{"r1", sp.identity()}, {"r2", sp.identity()}};
    CHECK(check_law(ck, "spec-split", b).holds());
}

TEST_CASE("rely-distrib-seq with chaotic programs")
{
    StateSpace sp = two();
    Checker ck(sp, {3, Engine::graph});
    LawBindings b;
    b.rels = {{"r", sp.identity()}};
    b.cmds = {{"c1", Command::pgm(sp.univ())}, {"c2", Command::pgm(sp.univ())}};
    CHECK(check_law(ck, "rely-distrib-seq", b).holds());
}

TEST_CASE("missing bindings are rejected")
{
    StateSpace sp = two();
    Checker ck(sp);
    CHECK_THROWS(check_law(ck, "assert-merge", LawBindings{}));
    CHECK_THROWS(check_law(ck, "no-such-law", LawBindings{}));
}

TEST_CASE("every law holds on exhaustive and random bindings")
{
    for (const Law& l : law_catalogue()) {
        CAPTURE(l.id);
        SweepStats ex = sweep_exhaustive(l, 2, Engine::graph);
        CHECK(ex.instances > 0);
        CHECK(ex.clean());
        SweepStats rnd = sweep_random(l, 10, 1, 3, Engine::graph);
        CHECK(rnd.instances == 10);
        CHECK(rnd.clean());
    }
}

TEST_CASE("a false law is caught")
{
    // sequential composition does not commute
    Law bogus{"seq-comm", "c ; d = d ; c", {}, {}, {"c", "d"}, {},
              [](Checker& ck, const LawBindings& b) { return ck.equals(Command::seq(b.cmds.at("c"), b.cmds.at("d")), Command::seq(b.cmds.at("d"), b.cmds.at("c"))); }};
    SweepStats ex = sweep_exhaustive(bogus, 2, Engine::graph);
    CHECK(ex.failures > 0);
    CHECK_FALSE(ex.clean());
    CHECK_FALSE(ex.failure_notes.empty());

    // nor is bot the top element
    Law upside{"bot-top", "bot >= c", {}, {}, {"c"}, {}, [](Checker& ck, const LawBindings& b) { return ck.refines(Command::bot(), b.cmds.at("c")); }};
    CHECK(sweep_random(upside, 20, 4, 2, Engine::enumerate).failures > 0);
}
