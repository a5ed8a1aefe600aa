#include "rgk/case_studies.hh"

#include "rgk/error.hh"
#include "rgk/lang.hh"

namespace rgk {

namespace {

StateSpace make_space(const RemoveConfig& cfg)
{
    std::uint64_t bits = 0;
    for (int e : cfg.universe) {
        if (e < 0 || e > SmallSet::kMaxElement)
            throw DomainError("set element " + std::to_string(e) + " out of range");
        bits |= std::uint64_t{1} << e;
    }
    if (!SmallSet(bits).contains(cfg.i))
        throw DomainError("i must belong to the element universe");
    const Domain subsets = powerset_domain(SmallSet(bits));
    return StateSpace(StateSpaceDecl().add_var("w", subsets).add_var("sample", subsets));
}

} // namespace

RemoveSetup::RemoveSetup(const RemoveConfig& cfg)
    : space(std::make_shared<const StateSpace>(make_space(cfg))),
      guard(Expr::binary(Expr::constant(Value::integer(cfg.i)), BinaryOp::member, Expr::var("w"))),
      body(Command::bot())
{
    const StateSpace& sp = *space;
    const Expr w = Expr::var("w"), w1 = Expr::var("w", true);
    const Expr s = Expr::var("sample"), s1 = Expr::var("sample", true);
    const Expr iset = Expr::constant(Value::set(SmallSet(std::uint64_t{1} << cfg.i)));
    const Expr shrinks = Expr::binary(w1, BinaryOp::subseteq, w);
    rely = cfg.rely_univ ? sp.univ() : pairs_where(sp, Expr::binary(shrinks, BinaryOp::logical_and, Expr::binary(s1, BinaryOp::eq, s)));
    // sample is local, so the strengthened guarantee only pins w
    guarantee = cfg.guarantee_identity
                    ? identity_on(sp, {LValue::var("w")})
                    : pairs_where(sp, Expr::binary(Expr::binary(Expr::binary(w, BinaryOp::sub, w1), BinaryOp::subseteq, iset), BinaryOp::logical_and, shrinks));
    post = pairs_where(sp, Expr::binary(Expr::constant(Value::integer(cfg.i)), BinaryOp::not_member, w1));
    body = Command::seq(cmd::assignment(sp, LValue::var("sample"), w),
                        cmd::cas(sp, LValue::var("w"), s, Expr::binary(s, BinaryOp::sub, iset)));
}

Command RemoveSetup::spec() const
{
    const StateSpace& sp = *space;
    return Command::conj(cmd::rely(sp, rely), Command::conj(cmd::guar(sp, guarantee), cmd::post_spec(sp, post)));
}

Command RemoveSetup::code() const { return cmd::while_loop(*space, guard, body); }

WhileInstance RemoveSetup::while_instance() const
{
    const StateSpace& sp = *space;
    const StateSet out = sp.filter([&](StateId st) { return eval_in_state(sp, guard, st) == vfalse(); });
    VariantSpec z{Expr::var("w"), ValueOrder::strict_subset(sp.lvalues().front().domain)};
    return WhileInstance{guard, body, rely, sp.univ(), sp.all(), sp.all(), out, out, std::move(z)};
}

Command remove_spec(const RemoveSetup& s) { return s.spec(); }
Command remove_code(const RemoveSetup& s) { return s.code(); }

bool RemoveReport::all_hold() const
{
    return loop.outcome == Outcome::holds && guarantee.holds() && refinement.holds() && early_exit.has_value();
}

namespace {

// First terminated trace, in trace order, from a state with i in w where an
// environment step after the program copies w into sample removes i
// and no program step changes w.
std::optional<Trace> find_early_exit(Checker& ck, const RemoveSetup& s)
{
    const StateSpace& sp = *s.space;
    const std::size_t w = sp.require_index(LValue::var("w"));
    const std::size_t smp = sp.require_index(LValue::var("sample"));
    const auto has_i = [&](StateId st) { return eval_in_state(sp, s.guard, st) == vtrue(); };
    const StateSet starts = sp.filter(has_i);
    const Command c = Command::seq(Command::test(starts), Command::conj(cmd::rely(sp, s.rely), s.code()));
    const TraceSet ts = ck.traces(c);
    for (const Trace& t : ts) {
        if (t.status != Status::terminated || has_i(t.last()))
            continue;
        bool read = false, env_removes = false, prog_keeps = true;
        for (std::size_t k = 0; k < t.steps.size(); ++k) {
            const StateId a = t.pre(k), b = t.steps[k].post;
            const bool changes = !(sp.value(a, w) == sp.value(b, w));
            if (t.steps[k].label == Label::eps && has_i(a) && !has_i(b) && read)
                env_removes = true;
            if (t.steps[k].label == Label::pi) {
                if (!(sp.value(a, smp) == sp.value(b, smp)) && sp.value(b, smp) == sp.value(b, w) && has_i(b))
                    read = true;
                if (changes)
                    prog_keeps = false;
            }
        }
        if (env_removes && prog_keeps)
            return t;
    }
    return std::nullopt;
}

} // namespace

RemoveReport verify_remove(const RemoveConfig& cfg)
{
    RemoveSetup s(cfg);
    Checker ck(*s.space, CheckOptions{.depth = cfg.depth, .engine = cfg.engine});
    RemoveReport rep;
    rep.space = s.space;
    rep.loop = check_while_theorem(ck, s.while_instance());
    rep.guarantee = ck.satisfies_guarantee(s.code(), s.guarantee);
    rep.refinement = ck.refines(s.spec(), s.code());
    Checker small = ck.with(std::min<std::size_t>(cfg.depth, 4), cfg.engine);
    rep.early_exit = find_early_exit(small, s);
    return rep;
}

FairnessReport fairness_demo(const RemoveConfig& cfg, std::size_t depth)
{
    RemoveSetup s(cfg);
    const StateSpace& sp = *s.space;
    Checker ck(sp, CheckOptions{.depth = depth, .engine = cfg.engine});
    FairnessReport rep;
    rep.term_spec = ck.refines(cmd::term(sp), cmd::post_spec(sp, s.post));
    rep.term_fair = ck.equals(Command::conj(cmd::term(sp), cmd::fair(sp)), cmd::any_steps(sp));
    return rep;
}

} // namespace rgk
