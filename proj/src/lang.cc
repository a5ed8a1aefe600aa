#include "rgk/lang.hh"

#include <algorithm>
#include <map>

#include "rgk/error.hh"

namespace rgk::cmd {

Command nil(const StateSpace& space) { return Command::test(space.all()); }

Command assertion(const StateSpace& space, const StateSet& p)
{
    return Command::choice({nil(space), Command::seq(Command::test(p.complement()), Command::top())});
}

Command pi(const StateSpace& space) { return Command::pgm(space.univ()); }
Command eps(const StateSpace& space) { return Command::env(space.univ()); }
Command alpha(const StateSpace& space) { return Command::choice({pi(space), eps(space)}); }

Command fin_iter(const StateSpace& space, const Command& c)
{
    return Command::mu(Command::choice({nil(space), Command::seq(shift(c, 1), Command::var(0))}), "fin");
}

Command om_iter(const StateSpace& space, const Command& c)
{
    return Command::nu(Command::choice({nil(space), Command::seq(shift(c, 1), Command::var(0))}), "om");
}

Command guar(const StateSpace& space, const StateRel& g)
{
    return om_iter(space, Command::choice({Command::pgm(g), eps(space)}));
}

Command rely(const StateSpace& space, const StateRel& r)
{
    return om_iter(space, Command::choice({alpha(space), Command::seq(Command::env(r.complement()), Command::top())}));
}

Command term(const StateSpace& space)
{
    return Command::seq(fin_iter(space, alpha(space)), om_iter(space, eps(space)));
}

Command idle(const StateSpace& space)
{
    return Command::conj(guar(space, space.identity()), term(space));
}

Command frame(const StateSpace& space, const std::vector<LValue>& frame, const Command& c)
{
    for (const LValue& v : frame)
        if (!space.is_declared_prefix(v))
            throw UndeclaredLValue("frame names undeclared l-value " + v.to_string());
    std::vector<LValue> fixed;
    for (const LValueDecl& d : space.lvalues()) {
        const bool framed = std::any_of(frame.begin(), frame.end(), [&](const LValue& v) { return v.is_prefix_of(d.lvalue); });
        if (!framed)
            fixed.push_back(d.lvalue);
    }
    return Command::conj(guar(space, identity_on(space, fixed)), c);
}

Command opt(const StateSpace& space, const StateRel& r)
{
    (void)space;
    return Command::choice({Command::pgm(r), Command::test(r.reflexive_points())});
}

Command atomic_spec(const StateSpace& space, const StateRel& r)
{
    return Command::seq(idle(space), Command::seq(opt(space, r), idle(space)));
}

Command post_spec(const StateSpace& space, const StateRel& q)
{
    // Initial states with the same q-image share one branch; choice
    // distributes over the initial test so this equals the per-state choice.
    std::map<std::vector<StateId>, StateSet> groups;
    for (StateId s = 0; s < space.size(); ++s) {
        auto img = q.image(space.singleton(s)).members();
        auto it = groups.try_emplace(std::move(img), space.none()).first;
        it->second.insert(s);
    }
    std::vector<Command> branches;
    const Command t = term(space);
    for (const auto& [img, starts] : groups) {
        StateSet finals = space.none();
        for (StateId f : img)
            finals.insert(f);
        branches.push_back(Command::seq(Command::test(starts), Command::seq(t, Command::test(finals))));
    }
    return Command::choice(std::move(branches));
}

Command fair(const StateSpace& space)
{
    return Command::seq(om_iter(space, Command::seq(fin_iter(space, eps(space)), pi(space))), fin_iter(space, eps(space)));
}

Command any_steps(const StateSpace& space) { return fin_iter(space, alpha(space)); }

Command eval_lvexpr(const StateSpace& space, const LvExpr& lve, const LValue& lv)
{
    if (lve.primed())
        throw DomainError("primed reference " + lve.to_string() + " inside a command");
    if (lve.kind() == LvExpr::Kind::variable)
        return lv == LValue::var(lve.name()) ? idle(space) : Command::bot();
    if (lv.is_base())
        return Command::bot();
    return Command::par(eval_lvexpr(space, lve.array(), lv.parent()), eval_expr(space, lve.index(), lv.indices.back()));
}

Command eval_expr(const StateSpace& space, const Expr& e, const Value& k)
{
    switch (e.kind()) {
    case Expr::Kind::constant:
        return e.value() == k ? idle(space) : Command::bot();
    case Expr::Kind::unary: {
        std::vector<Command> branches;
        for (const Value& k1 : possible_values(space, e.operand())) {
            auto r = apply_unary(e.unary_op(), k1);
            if (r && *r == k)
                branches.push_back(eval_expr(space, e.operand(), k1));
        }
        return Command::choice(std::move(branches));
    }
    case Expr::Kind::binary: {
        std::vector<Command> branches;
        const Domain as = possible_values(space, e.lhs());
        const Domain bs = possible_values(space, e.rhs());
        for (const Value& k1 : as)
            for (const Value& k2 : bs) {
                auto r = apply_binary(e.binary_op(), k1, k2);
                if (r && *r == k)
                    branches.push_back(Command::par(eval_expr(space, e.lhs(), k1), eval_expr(space, e.rhs(), k2)));
            }
        return Command::choice(std::move(branches));
    }
    case Expr::Kind::deref: {
        std::vector<Command> branches;
        for (const LValue& lv : possible_lvalues(space, e.lvexpr())) {
            auto idx = space.index_of(lv);
            if (!idx)
                continue;
            StateSet holds = space.filter([&](StateId s) { return space.value(s, *idx) == k; });
            branches.push_back(Command::seq(eval_lvexpr(space, e.lvexpr(), lv), Command::seq(Command::test(holds), idle(space))));
        }
        return Command::choice(std::move(branches));
    }
    }
    return Command::bot();
}

Command conditional(const StateSpace& space, const Expr& b, const Command& c, const Command& d)
{
    std::vector<Command> branches{
        Command::seq(eval_expr(space, b, vtrue()), c),
        Command::seq(eval_expr(space, b, vfalse()), d),
    };
    for (const Value& k : possible_values(space, b))
        if (!k.is_bool())
            branches.push_back(Command::seq(eval_expr(space, b, k), Command::top()));
    return Command::choice(std::move(branches));
}

Command while_body(const StateSpace& space, const Expr& b, const Command& c)
{
    return conditional(space, b, Command::seq(shift(c, 1), Command::var(0)), nil(space));
}

Command while_loop(const StateSpace& space, const Expr& b, const Command& c)
{
    return Command::nu(while_body(space, b, c), "loop");
}

Command assignment(const StateSpace& space, const LValue& lv, const Expr& e)
{
    const std::size_t idx = space.require_index(lv);
    std::vector<Command> branches;
    for (const Value& k : possible_values(space, e)) {
        StateRel write = space.empty_rel();
        bool in_domain = false;
        for (StateId s = 0; s < space.size(); ++s)
            if (auto t = space.with_value(s, idx, k)) {
                write.insert(s, *t);
                in_domain = true;
            }
        if (!in_domain)
            continue;
        branches.push_back(Command::seq(eval_expr(space, e, k), frame(space, {lv}, opt(space, write))));
    }
    return Command::choice(std::move(branches));
}

Command cas(const StateSpace& space, const LValue& lv, const Expr& expected, const Expr& desired)
{
    const std::size_t idx = space.require_index(lv);
    StateRel r = space.relation([&](StateId a, StateId b) {
        auto old = eval_in_state(space, expected, a);
        auto neu = eval_in_state(space, desired, a);
        if (!old || !neu)
            return false;
        const Value& cur = space.value(a, idx);
        const Value& next = space.value(b, idx);
        if (cur == *old)
            return next == *neu;
        return next == cur;
    });
    return frame(space, {lv}, atomic_spec(space, r));
}

} // namespace rgk::cmd
