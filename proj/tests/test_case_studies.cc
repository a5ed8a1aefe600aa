#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "rgk/case_studies.hh"
#include "rgk/error.hh"

using namespace rgk;

namespace {

const Obligation* premise(const TheoremReport& r, const std::string& name)
{
    for (const Obligation& o : r.premises)
        if (o.name == name)
            return &o;
    return nullptr;
}

} // namespace

TEST_CASE("remove setup")
{
    RemoveSetup s{RemoveConfig{}};
    CHECK(s.space->size() == 16);
    CHECK(transitive(s.rely));
    CHECK(tolerates(s.space->univ(), s.rely, s.space->all()));
    CHECK(tolerates(refl_trans_closure(s.space->univ()), s.rely, s.space->all()));
    WhileInstance w = s.while_instance();
    CHECK(is_well_founded(w.variant.order));
    CHECK(w.variant.non_increasing(*s.space, s.rely));
}

TEST_CASE("bad configurations")
{
    RemoveConfig cfg;
    cfg.i = 3;
    CHECK_THROWS_AS(RemoveSetup{cfg}, DomainError);
    cfg = RemoveConfig{};
    cfg.universe = {0, 99};
    CHECK_THROWS_AS(RemoveSetup{cfg}, DomainError);
}

TEST_CASE("remove verifies with the intended bindings")
{
    RemoveConfig cfg;
    cfg.depth = 6;
    RemoveReport r = verify_remove(cfg);
    CHECK(r.loop.outcome == Outcome::holds);
    for (const Obligation& o : r.loop.premises) {
        CAPTURE(o.name);
        CHECK(o.verdict.holds());
    }
    CHECK(r.guarantee.holds());
    CHECK(r.refinement.holds());
    REQUIRE(r.early_exit);
    CHECK(r.all_hold());

    // witness: starts with 0 in w, ends without, terminated
    const Trace& t = *r.early_exit;
    const StateSpace& sp = *r.space;
    const LValue w = LValue::var("w");
    CHECK(t.status == Status::terminated);
    CHECK(sp.value(t.start, w).as_set().contains(0));
    CHECK_FALSE(sp.value(t.last(), w).as_set().contains(0));
    bool env_step = false;
    for (std::size_t k = 0; k < t.steps.size(); ++k)
        if (t.steps[k].label == Label::pi)
            CHECK(sp.value(t.pre(k), w) == sp.value(t.steps[k].post, w));
        else
            env_step = env_step || !(sp.value(t.pre(k), w) == sp.value(t.steps[k].post, w));
    CHECK(env_step);
}

TEST_CASE("remove with an unconstrained environment")
{
    RemoveConfig cfg;
    cfg.depth = 5;
    cfg.rely_univ = true;
    RemoveReport r = verify_remove(cfg);
    CHECK(r.loop.outcome == Outcome::premise_violation);
    REQUIRE(premise(r.loop, "while-false"));
    CHECK(premise(r.loop, "while-false")->verdict.fails());
    CHECK(r.refinement.fails());
}

TEST_CASE("remove with an identity guarantee")
{
    RemoveConfig cfg;
    cfg.depth = 5;
    cfg.guarantee_identity = true;
    RemoveReport r = verify_remove(cfg);
    CHECK(r.loop.outcome == Outcome::holds);
    CHECK(r.guarantee.fails());
    REQUIRE(r.guarantee.counterexample);
    const Trace& t = *r.guarantee.counterexample;
    REQUIRE_FALSE(t.steps.empty());
    CHECK(t.steps.back().label == Label::pi);
    // the failing step is the successful CAS
    const LValue w = LValue::var("w");
    const StateSpace& sp = *r.space;
    CHECK_FALSE(sp.value(t.pre(t.steps.size() - 1), w) == sp.value(t.steps.back().post, w));
    CHECK_FALSE(r.all_hold());
}

TEST_CASE("fairness demo")
{
    FairnessReport f = fairness_demo(RemoveConfig{}, 3);
    CHECK(f.term_spec.holds());
    CHECK(f.term_fair.holds());
}
