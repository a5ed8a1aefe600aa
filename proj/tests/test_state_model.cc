#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "rgk/error.hh"
#include "rgk/expr.hh"
#include "rgk/state_model.hh"

using namespace rgk;

namespace {

StateSpace two() { return StateSpace(StateSpaceDecl().add_var("x", int_range(0, 1))); }

StateSpace two_bools()
{
    return StateSpace(StateSpaceDecl().add_var("x", bool_domain()).add_var("y", bool_domain()));
}

StateRel rel(const StateSpace& sp, std::initializer_list<std::pair<StateId, StateId>> ps)
{
    StateRel r = sp.empty_rel();
    for (auto [a, b] : ps)
        r.insert(a, b);
    return r;
}

StateSet set(const StateSpace& sp, std::initializer_list<StateId> ss)
{
    StateSet p = sp.none();
    for (StateId s : ss)
        p.insert(s);
    return p;
}

} // namespace

TEST_CASE("enumeration is the product of the domains")
{
    StateSpace a = two();
    CHECK(a.size() == 2);
    CHECK(a.describe(0) == std::vector<std::string>{"x=0"});
    CHECK(a.describe(1) == std::vector<std::string>{"x=1"});
    CHECK(two_bools().size() == 4);

    const Domain sub = powerset_domain(SmallSet::of({0, 1}));
    StateSpace ws(StateSpaceDecl().add_var("w", sub).add_var("sample", sub));
    CHECK(ws.size() == 16);
    // every pair of subsets shows up exactly once
    std::set<std::vector<std::string>> seen;
    for (StateId s = 0; s < ws.size(); ++s)
        seen.insert(ws.describe(s));
    CHECK(seen.size() == 16);
}

TEST_CASE("state cap")
{
    StateSpaceDecl d;
    d.cap = 8;
    d.add_var("x", int_range(0, 3)).add_var("y", int_range(0, 3));
    CHECK_THROWS_AS(StateSpace{d}, StateSpaceTooLarge);
}

TEST_CASE("compose")
{
    StateSpace sp = two();
    StateRel r = rel(sp, {{0, 1}, {1, 1}});
    CHECK(compose(r, sp.identity()) == r);
    CHECK(compose(rel(sp, {{0, 1}}), rel(sp, {{1, 0}})) == rel(sp, {{0, 0}}));
    CHECK(compose(r, sp.empty_rel()).empty());
}

TEST_CASE("range and domain restriction")
{
    StateSpace sp = two();
    CHECK(range_restrict(sp.univ(), sp.all()) == sp.univ());
    CHECK(range_restrict(rel(sp, {{0, 1}}), set(sp, {0})).empty());
    CHECK(range_restrict(sp.empty_rel(), set(sp, {1})).empty());

    StateRel r = rel(sp, {{0, 1}, {1, 0}});
    CHECK(domain_restrict(sp.all(), r) == r);
    CHECK(domain_restrict(sp.none(), r).empty());
    CHECK(domain_restrict(set(sp, {0}), r) == rel(sp, {{0, 1}}));
}

TEST_CASE("reflexive transitive closure")
{
    StateSpace sp = two();
    CHECK(refl_trans_closure(sp.empty_rel()) == sp.identity());
    CHECK(refl_trans_closure(rel(sp, {{0, 1}})) == sp.identity().unite(rel(sp, {{0, 1}})));
    CHECK(refl_trans_closure(sp.univ()) == sp.univ());

    StateSpace three(StateSpaceDecl().add_var("x", int_range(0, 2)));
    StateRel chain = rel(three, {{0, 1}, {1, 2}});
    StateRel c = refl_trans_closure(chain);
    CHECK(c.contains(0, 2));
    CHECK_FALSE(c.contains(2, 0));
    CHECK(refl_trans_closure(c) == c);
}

TEST_CASE("identity on a set of l-values")
{
    StateSpace sp = two_bools();
    CHECK(identity_on(sp, {LValue::var("x"), LValue::var("y")}) == sp.identity());
    CHECK(identity_on(sp, {}) == sp.univ());
    CHECK(identity_on(sp, {LValue::var("x")}).count() == 8);
    CHECK_THROWS_AS(identity_on(sp, {LValue::var("z")}), UndeclaredLValue);
}

TEST_CASE("stable")
{
    StateSpace sp = two();
    CHECK(stable(sp.all(), sp.univ()));
    CHECK_FALSE(stable(set(sp, {0}), rel(sp, {{0, 1}})));
    CHECK(stable(states_where(sp, Expr::binary(Expr::var("x"), BinaryOp::eq, Expr::constant(Value::integer(0)))), sp.identity()));
}

TEST_CASE("tolerates")
{
    StateSpace sp = two();
    for (const StateRel& r : {sp.empty_rel(), sp.identity(), sp.univ(), rel(sp, {{0, 1}})})
        CHECK(tolerates(sp.univ(), r, sp.all()));
    CHECK_FALSE(tolerates(sp.identity(), sp.univ(), sp.all()));
}

TEST_CASE("stable splits over union of relations")
{
    StateSpace sp = two_bools();
    const std::size_t n = sp.size();
    // brute force over a few hundred relation pairs and all state sets
    for (std::uint32_t m1 = 0; m1 < (1u << 16); m1 += 997)
        for (std::uint32_t m2 = 0; m2 < (1u << 16); m2 += 1231) {
            StateRel r1 = sp.empty_rel(), r2 = sp.empty_rel();
            for (std::size_t k = 0; k < n * n; ++k) {
                if (m1 >> k & 1)
                    r1.insert(k / n, k % n);
                if (m2 >> k & 1)
                    r2.insert(k / n, k % n);
            }
            for (std::uint32_t pm = 0; pm < 16; ++pm) {
                StateSet p = sp.none();
                for (std::size_t s = 0; s < n; ++s)
                    if (pm >> s & 1)
                        p.insert(s);
                CHECK(stable(p, r1.unite(r2)) == (stable(p, r1) && stable(p, r2)));
                if (tolerates(r2, r1, p)) {
                    StateRel c = refl_trans_closure(r1);
                    CHECK(domain_restrict(p, compose(compose(c, r2), c)).subset_of(r2));
                }
            }
        }
}

TEST_CASE("well-foundedness of variant orders")
{
    CHECK(is_well_founded(ValueOrder::less_than(int_range(0, 2))));
    ValueOrder le(int_range(0, 1), [](const Value& a, const Value& b) { return a.as_int() <= b.as_int(); });
    CHECK_FALSE(is_well_founded(le));
    const ValueOrder sub = ValueOrder::strict_subset(powerset_domain(SmallSet::of({0, 1})));
    CHECK(is_well_founded(sub));
    CHECK(sub.is_transitive());
    CHECK(sub.less(Value::set(SmallSet::of({0})), Value::set(SmallSet::of({0, 1}))));
    CHECK_FALSE(sub.less(Value::set(SmallSet::of({0})), Value::set(SmallSet::of({1}))));
    CHECK(sub.less_eq(Value::set(SmallSet::of({1})), Value::set(SmallSet::of({1}))));
}
