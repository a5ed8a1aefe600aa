#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "rgk/case_studies.hh"
#include "rgk/dsl.hh"
#include "rgk/lang.hh"
#include "rgk/laws.hh"
#include "rgk/theorems.hh"

namespace rgk::dsl {

bool Report::all_as_expected() const
{
    return std::all_of(goals.begin(), goals.end(), [](const GoalResult& g) { return g.as_expected(); });
}

namespace {

using Task = std::function<GoalResult()>;

Verdict side_condition(bool ok, std::string note = {})
{
    Verdict v;
    v.outcome = ok ? Outcome::holds : Outcome::fails;
    if (!ok && !note.empty())
        v.notes.push_back(std::move(note));
    return v;
}

std::vector<std::string> premise_lines(const TheoremReport& rep)
{
    std::vector<std::string> out;
    for (const Obligation& o : rep.premises)
        out.push_back(o.name + ": " + to_string(o.verdict.outcome));
    out.push_back("conclusion: " + to_string(rep.conclusion.outcome));
    return out;
}

class Elaborator {
public:
    Elaborator(const Script& s, const RunOptions& opts) : script_(s), opts_(opts)
    {
        declare_space();
        for (const NamedPred& p : s.sets) {
            check_unique(p.name, p.pos);
            check_names(p.pred, p.pos, false);
            sets_.emplace(p.name, states_where(need_space(p.pos), p.pred));
        }
        for (const NamedPred& p : s.rels) {
            check_unique(p.name, p.pos);
            check_names(p.pred, p.pos, true);
            rels_.emplace(p.name, pairs_where(need_space(p.pos), p.pred));
        }
        for (const NamedCmd& c : s.cmds) {
            check_unique(c.name, c.pos);
            cmds_.emplace(c.name, compile(c.cmd));
        }
    }

    std::vector<Task> tasks()
    {
        std::vector<Task> out;
        for (std::size_t n = 0; n < script_.goals.size(); ++n) {
            const Goal& g = script_.goals[n];
            out.push_back(task(g, g.label.empty() ? "goal-" + std::to_string(n + 1) : g.label));
        }
        for (const std::string& id : extra_laws()) {
            Goal g;
            g.kind = Goal::Kind::law;
            g.law = id;
            out.push_back(task(g, "law-" + id));
        }
        return out;
    }

private:
    // ------------------------------------------------------------ declarations

    void declare_space()
    {
        if (script_.vars.empty())
            return;
        StateSpaceDecl decl;
        for (const VarDecl& v : script_.vars) {
            check_unique(v.name, v.pos);
            bases_.insert(v.name);
            try {
                if (v.index)
                    decl.add_array(v.name, *v.index, v.domain);
                else
                    decl.add_var(v.name, v.domain);
            } catch (const Error& e) {
                throw ParseError(v.pos, e.what());
            }
        }
        try {
            space_ = std::make_shared<const StateSpace>(std::move(decl));
        } catch (const Error& e) {
            throw ParseError(script_.vars.front().pos, e.what());
        }
    }

    void check_unique(const std::string& name, Pos pos)
    {
        if (!names_.insert(name).second)
            throw ParseError(pos, "'" + name + "' is declared twice");
    }

    const StateSpace& need_space(Pos pos) const
    {
        if (!space_)
            throw ParseError(pos, "no variables declared");
        return *space_;
    }

    void check_names(const LvExpr& lv, Pos pos, bool primed_ok) const
    {
        if (lv.kind() == LvExpr::Kind::variable) {
            if (!bases_.count(lv.name()))
                throw ParseError(pos, "unknown variable '" + lv.name() + "'");
            if (lv.primed() && !primed_ok)
                throw ParseError(pos, "primed reference '" + lv.to_string() + "' is only allowed in relations");
            return;
        }
        check_names(lv.array(), pos, primed_ok);
        check_names(lv.index(), pos, primed_ok);
    }

    void check_names(const Expr& e, Pos pos, bool primed_ok) const
    {
        switch (e.kind()) {
        case Expr::Kind::constant: return;
        case Expr::Kind::deref: check_names(e.lvexpr(), pos, primed_ok); return;
        case Expr::Kind::unary: check_names(e.operand(), pos, primed_ok); return;
        case Expr::Kind::binary:
            check_names(e.lhs(), pos, primed_ok);
            check_names(e.rhs(), pos, primed_ok);
            return;
        }
    }

    StateSet set_of(const PredRef& r) const
    {
        if (r.pred) {
            check_names(*r.pred, r.pos, false);
            return states_where(need_space(r.pos), *r.pred);
        }
        if (auto it = sets_.find(r.name); it != sets_.end())
            return it->second;
        if (rels_.count(r.name))
            throw ParseError(r.pos, "'" + r.name + "' is a relation, expected a set");
        throw ParseError(r.pos, "unknown set '" + r.name + "'");
    }

    StateRel rel_of(const PredRef& r) const
    {
        if (r.pred) {
            check_names(*r.pred, r.pos, true);
            return pairs_where(need_space(r.pos), *r.pred);
        }
        if (auto it = rels_.find(r.name); it != rels_.end())
            return it->second;
        if (sets_.count(r.name))
            throw ParseError(r.pos, "'" + r.name + "' is a set, expected a relation");
        throw ParseError(r.pos, "unknown relation '" + r.name + "'");
    }

    // ------------------------------------------------------------ commands

    Command compile(const CmdAst& c)
    {
        std::vector<std::string> bound;
        return compile(c, bound);
    }

    Command compile(const CmdAst& c, std::vector<std::string>& bound)
    {
        using K = CmdAst::Kind;
        const StateSpace& sp = need_space(c.pos);
        auto kid = [&](std::size_t i) { return compile(c.kids[i], bound); };
        auto expr = [&](std::size_t i) -> const Expr& {
            check_names(c.exprs[i], c.pos, false);
            return c.exprs[i];
        };
        try {
            switch (c.kind) {
            case K::bot: return Command::bot();
            case K::top: return Command::top();
            case K::nil: return cmd::nil(sp);
            case K::term: return cmd::term(sp);
            case K::idle: return cmd::idle(sp);
            case K::fair: return cmd::fair(sp);
            case K::pi: return cmd::pi(sp);
            case K::eps: return cmd::eps(sp);
            case K::alpha: return cmd::alpha(sp);
            case K::test: return Command::test(set_of(c.arg));
            case K::assertion: return cmd::assertion(sp, set_of(c.arg));
            case K::pgm: return Command::pgm(rel_of(c.arg));
            case K::env: return Command::env(rel_of(c.arg));
            case K::guar: return cmd::guar(sp, rel_of(c.arg));
            case K::rely: return cmd::rely(sp, rel_of(c.arg));
            case K::post: return cmd::post_spec(sp, rel_of(c.arg));
            case K::atomic: return cmd::atomic_spec(sp, rel_of(c.arg));
            case K::opt: return cmd::opt(sp, rel_of(c.arg));
            case K::frame: return cmd::frame(sp, c.lvalues, kid(0));
            case K::seq: return Command::seq(kid(0), kid(1));
            case K::choice: return Command::choice({kid(0), kid(1)});
            case K::par: return Command::par(kid(0), kid(1));
            case K::conj: return Command::conj(kid(0), kid(1));
            case K::fin: return cmd::fin_iter(sp, kid(0));
            case K::om: return cmd::om_iter(sp, kid(0));
            case K::cond: return cmd::conditional(sp, expr(0), kid(0), kid(1));
            case K::loop: return cmd::while_loop(sp, expr(0), kid(0));
            case K::eval: return cmd::eval_expr(sp, expr(0), c.literal);
            case K::assign: return cmd::assignment(sp, c.lvalues[0], expr(0));
            case K::cas: return cmd::cas(sp, c.lvalues[0], expr(0), expr(1));
            case K::mu:
            case K::nu: {
                bound.push_back(c.name);
                Command body = kid(0);
                bound.pop_back();
                return c.kind == K::mu ? Command::mu(body, c.name) : Command::nu(body, c.name);
            }
            case K::name: {
                for (std::size_t i = bound.size(); i-- > 0;)
                    if (bound[i] == c.name)
                        return Command::var(bound.size() - 1 - i);
                if (auto it = cmds_.find(c.name); it != cmds_.end())
                    return it->second;
                throw ParseError(c.pos, "unknown command '" + c.name + "'");
            }
            }
        } catch (const ParseError&) {
            throw;
        } catch (const Error& e) {
            throw ParseError(c.pos, e.what());
        }
        throw ParseError(c.pos, "unhandled command");
    }

    // ------------------------------------------------------------ bindings

    const Binding* find(const Goal& g, const std::string& key) const
    {
        for (const Binding& b : g.with)
            if (b.key == key)
                return &b;
        return nullptr;
    }

    void only_keys(const Goal& g, std::set<std::string> allowed) const
    {
        std::set<std::string> seen;
        for (const Binding& b : g.with) {
            if (!allowed.count(b.key))
                throw ParseError(b.pos, "unexpected binding '" + b.key + "' for " + to_string(g.kind) + " goal");
            if (!seen.insert(b.key).second)
                throw ParseError(b.pos, "binding '" + b.key + "' given twice");
        }
    }

    /// A binding written as a bare name parses as a command; it may name a set or relation.
    std::optional<PredRef> as_ref(const Binding& b) const
    {
        if (b.kind == Binding::Kind::set || b.kind == Binding::Kind::rel)
            return b.ref;
        if (b.kind == Binding::Kind::cmd && b.cmd->kind == CmdAst::Kind::name) {
            PredRef r;
            r.name = b.cmd->name;
            r.pos = b.pos;
            return r;
        }
        return std::nullopt;
    }

    StateSet bound_set(const Goal& g, const std::string& key, std::optional<StateSet> dflt = std::nullopt) const
    {
        const Binding* b = find(g, key);
        if (!b) {
            if (dflt)
                return *dflt;
            throw ParseError(g.pos, "missing binding '" + key + "'");
        }
        auto r = as_ref(*b);
        if (!r || b->kind == Binding::Kind::rel)
            throw ParseError(b->pos, "binding '" + key + "' must be a set");
        return set_of(*r);
    }

    StateRel bound_rel(const Goal& g, const std::string& key, std::optional<StateRel> dflt = std::nullopt) const
    {
        const Binding* b = find(g, key);
        if (!b) {
            if (dflt)
                return *dflt;
            throw ParseError(g.pos, "missing binding '" + key + "'");
        }
        auto r = as_ref(*b);
        if (!r || b->kind == Binding::Kind::set)
            throw ParseError(b->pos, "binding '" + key + "' must be a relation");
        return rel_of(*r);
    }

    Command bound_cmd(const Goal& g, const std::string& key)
    {
        const Binding* b = find(g, key);
        if (!b)
            throw ParseError(g.pos, "missing binding '" + key + "'");
        if (b->kind != Binding::Kind::cmd)
            throw ParseError(b->pos, "binding '" + key + "' must be a command");
        return compile(*b->cmd);
    }

    VariantSpec variant(const Goal& g) const
    {
        const Binding* z = find(g, "z");
        if (!z)
            throw ParseError(g.pos, "missing binding 'z'");
        const StateSpace& sp = need_space(g.pos);
        check_names(*z->expr, z->pos, false);
        std::vector<Value> vals;
        for (StateId s = 0; s < sp.size(); ++s)
            if (auto v = eval_in_state(sp, *z->expr, s))
                vals.push_back(*v);
        const Domain carrier = make_domain(std::move(vals));
        std::string order = "lt";
        if (const Binding* o = find(g, "order"))
            order = o->word;
        if (order == "lt") {
            for (const Value& v : carrier)
                if (v.kind() != Value::Kind::integer)
                    throw ParseError(z->pos, "order lt needs an integer variant");
            return VariantSpec{*z->expr, ValueOrder::less_than(carrier)};
        }
        if (order == "subset") {
            for (const Value& v : carrier)
                if (v.kind() != Value::Kind::set)
                    throw ParseError(z->pos, "order subset needs a set-valued variant");
            return VariantSpec{*z->expr, ValueOrder::strict_subset(carrier)};
        }
        throw ParseError(find(g, "order")->pos, "unknown order '" + order + "'", {"lt", "subset"});
    }

    LawBindings law_bindings(const Goal& g, const Law& law)
    {
        std::set<std::string> keys;
        for (const auto* names : {&law.sets, &law.rels, &law.cmds, &law.families})
            keys.insert(names->begin(), names->end());
        only_keys(g, keys);
        LawBindings lb;
        for (const std::string& n : law.sets)
            lb.sets.emplace(n, bound_set(g, n));
        for (const std::string& n : law.rels)
            lb.rels.emplace(n, bound_rel(g, n));
        for (const std::string& n : law.cmds)
            lb.cmds.emplace(n, bound_cmd(g, n));
        for (const std::string& n : law.families) {
            const Binding* b = find(g, n);
            if (!b)
                throw ParseError(g.pos, "missing binding '" + n + "'");
            if (b->kind != Binding::Kind::family)
                throw ParseError(b->pos, "binding '" + n + "' must be a family(...)");
            std::vector<StateSet> fam;
            for (const PredRef& r : b->family)
                fam.push_back(set_of(r));
            lb.families.emplace(n, std::move(fam));
        }
        return lb;
    }

    std::vector<std::string> extra_laws() const
    {
        std::vector<std::string> out;
        for (const std::string& id : opts_.laws) {
            if (id == "all") {
                for (const Law& l : law_catalogue())
                    out.push_back(l.id);
            } else {
                if (!find_law(id))
                    throw ParseError(Pos{}, "unknown law '" + id + "'");
                out.push_back(id);
            }
        }
        return out;
    }

    // ------------------------------------------------------------ goals

    static std::size_t default_depth(Goal::Kind k)
    {
        switch (k) {
        case Goal::Kind::hoare_loop: return 5;
        case Goal::Kind::remove: return 8;
        default: return 3;
        }
    }

    Task task(const Goal& g, std::string id)
    {
        using K = Goal::Kind;
        const std::size_t depth = g.depth.value_or(opts_.depth.value_or(default_depth(g.kind)));
        const Engine engine = g.engine.value_or(opts_.engine.value_or(Engine::graph));
        const CheckOptions co{.depth = depth, .engine = engine};
        const std::shared_ptr<const StateSpace> sp = space_;
        auto checker = [sp, co] { return std::make_shared<Checker>(*sp, co); };
        std::function<GoalResult()> body;

        switch (g.kind) {
        case K::refine:
        case K::equal: {
            need_space(g.pos);
            const Command a = compile(g.cmds[0]), b = compile(g.cmds[1]);
            const bool eq = g.kind == K::equal;
            body = [=] {
                auto ck = checker();
                GoalResult r;
                r.verdict = eq ? ck->equals(a, b) : ck->refines(a, b);
                return r;
            };
            break;
        }
        case K::triple: {
            const StateSet p = set_of(g.preds[0]), p1 = set_of(g.preds[1]);
            const Command c = compile(g.cmds[0]);
            body = [=] {
                GoalResult r;
                r.verdict = checker()->hoare_triple(p, c, p1);
                return r;
            };
            break;
        }
        case K::establish: {
            const StateSet p = set_of(g.preds[0]), P = set_of(g.preds[2]);
            const StateRel rl = rel_of(g.preds[1]);
            check_names(*g.expr, g.pos, false);
            const Expr e = *g.expr;
            const Value k = g.literal;
            body = [=] {
                GoalResult r;
                r.verdict = checker()->establishes(p, rl, e, k, P);
                return r;
            };
            break;
        }
        case K::stable: {
            const StateSet p = set_of(g.preds[0]);
            const StateRel rl = rel_of(g.preds[1]);
            body = [=] {
                GoalResult r;
                r.verdict = side_condition(stable(p, rl), "some transition leaves the set");
                return r;
            };
            break;
        }
        case K::tolerates: {
            const StateRel q = rel_of(g.preds[0]), rl = rel_of(g.preds[1]);
            const StateSet p = set_of(g.preds[2]);
            body = [=] {
                GoalResult r;
                r.verdict = side_condition(tolerates(q, rl, p), "q does not tolerate r from p");
                return r;
            };
            break;
        }
        case K::guarantee: {
            const Command c = compile(g.cmds[0]);
            const StateRel gr = rel_of(g.preds[0]);
            body = [=] {
                GoalResult r;
                r.verdict = checker()->satisfies_guarantee(c, gr);
                return r;
            };
            break;
        }
        case K::law: {
            const Law* law = find_law(g.law);
            if (!law)
                throw ParseError(g.pos, "unknown law '" + g.law + "'");
            if (!g.with.empty()) {
                need_space(g.pos);
                const LawBindings lb = law_bindings(g, *law);
                const std::string lid = law->id;
                body = [=] {
                    GoalResult r;
                    auto ck = checker();
                    r.verdict = check_law(*ck, lid, lb);
                    return r;
                };
            } else {
                const std::uint64_t seed = opts_.seed;
                const std::size_t samples = opts_.law_samples;
                body = [=] {
                    GoalResult r;
                    SweepStats st = sweep_exhaustive(*law, depth, engine);
                    SweepStats rnd = sweep_random(*law, samples, seed, depth, engine);
                    r.details.push_back("exhaustive: " + std::to_string(st.instances) + " instances, " + std::to_string(st.holds) + " hold, " +
                                        std::to_string(st.premise_violations) + " premise violations");
                    r.details.push_back("random: " + std::to_string(rnd.instances) + " instances, " + std::to_string(rnd.holds) + " hold, " +
                                        std::to_string(rnd.premise_violations) + " premise violations");
                    st += rnd;
                    r.verdict.outcome = st.failures ? Outcome::fails : st.inconclusive ? Outcome::inconclusive : Outcome::holds;
                    for (const std::string& n : st.failure_notes)
                        r.details.push_back(n);
                    return r;
                };
            }
            break;
        }
        case K::conditional: {
            only_keys(g, {"r", "q", "p", "pT", "pF"});
            check_names(*g.expr, g.pos, false);
            const StateSpace& s = need_space(g.pos);
            ConditionalInstance inst{*g.expr, bound_rel(g, "r"), bound_rel(g, "q", s.univ()), bound_set(g, "p", s.all()), bound_set(g, "pT"),
                                     bound_set(g, "pF")};
            body = [=] {
                auto ck = checker();
                TheoremReport rep = check_conditional_theorem(*ck, inst);
                GoalResult r;
                r.verdict = rep.summary();
                r.details = premise_lines(rep);
                return r;
            };
            break;
        }
        case K::loop: {
            only_keys(g, {"r", "q", "p", "pT", "pF", "pX", "z", "order"});
            check_names(*g.expr, g.pos, false);
            const StateSpace& s = need_space(g.pos);
            const StateSet p = bound_set(g, "p", s.all());
            WhileInstance inst{*g.expr, compile(g.cmds[0]), bound_rel(g, "r"), bound_rel(g, "q", s.univ()), p, bound_set(g, "pT", p),
                               bound_set(g, "pF"), bound_set(g, "pX", s.none()), variant(g)};
            body = [=] {
                auto ck = checker();
                TheoremReport rep = check_while_theorem(*ck, inst);
                GoalResult r;
                r.verdict = rep.summary();
                r.details = premise_lines(rep);
                return r;
            };
            break;
        }
        case K::recursion: {
            only_keys(g, {"s", "pX", "z", "order"});
            const StateSpace& s = need_space(g.pos);
            std::vector<std::string> bound{g.binder};
            const Command f = compile(g.cmds[0], bound);
            RecursionInstance inst{f, bound_cmd(g, "s"), bound_set(g, "pX", s.none()), variant(g)};
            body = [=] {
                auto ck = checker();
                TheoremReport rep = check_recursion_theorem(*ck, inst);
                GoalResult r;
                r.verdict = rep.summary();
                r.details = premise_lines(rep);
                return r;
            };
            break;
        }
        case K::remove: {
            only_keys(g, {"i", "universe", "rely", "guarantee"});
            RemoveConfig cfg;
            cfg.depth = depth;
            cfg.engine = engine;
            if (const Binding* b = find(g, "i")) {
                if (b->value.kind() != Value::Kind::integer)
                    throw ParseError(b->pos, "i must be an integer");
                cfg.i = static_cast<int>(b->value.as_int());
            }
            if (const Binding* b = find(g, "universe")) {
                if (b->value.kind() != Value::Kind::set)
                    throw ParseError(b->pos, "universe must be a set literal");
                cfg.universe = b->value.as_set().elements();
            }
            if (const Binding* b = find(g, "rely")) {
                if (b->word != "univ")
                    throw ParseError(b->pos, "rely may only be weakened to univ", {"univ"});
                cfg.rely_univ = true;
            }
            if (const Binding* b = find(g, "guarantee")) {
                if (b->word != "identity")
                    throw ParseError(b->pos, "guarantee may only be strengthened to identity", {"identity"});
                cfg.guarantee_identity = true;
            }
            try {
                RemoveSetup probe(cfg);
            } catch (const Error& e) {
                throw ParseError(g.pos, e.what());
            }
            body = [=] {
                RemoveReport rep = verify_remove(cfg);
                GoalResult r;
                r.space = rep.space;
                r.details = premise_lines(rep.loop);
                r.details.push_back("guarantee: " + to_string(rep.guarantee.outcome));
                r.details.push_back("spec refined by code: " + to_string(rep.refinement.outcome));
                if (rep.early_exit)
                    r.details.push_back("early exit: " + rep.early_exit->to_string(*rep.space));
                else
                    r.details.push_back("early exit: no witness");
                if (rep.loop.outcome != Outcome::holds)
                    r.verdict = rep.loop.summary();
                else if (!rep.guarantee.holds())
                    r.verdict = rep.guarantee;
                else if (!rep.refinement.holds())
                    r.verdict = rep.refinement;
                else if (!rep.early_exit)
                    r.verdict.outcome = Outcome::fails;
                return r;
            };
            break;
        }
        case K::hoare_loop: {
            body = [=] {
                NegativeControlReport rep = negative_control_hoare_loop(depth, engine);
                GoalResult r;
                r.space = std::make_shared<const StateSpace>(StateSpaceDecl().add_var("x", int_range(0, 1)));
                r.verdict = rep.interfered;
                r.details = {"sequential premise: " + to_string(rep.premise.outcome), "under interference: " + to_string(rep.interfered.outcome),
                             "under rely identity: " + to_string(rep.isolated.outcome),
                             "bounded unfolding, variant may increase: " + to_string(rep.variant_increase.outcome),
                             "bounded unfolding, variant non-increasing: " + to_string(rep.variant_stable.outcome)};
                if (!rep.premise.holds() || !rep.isolated.holds() || !rep.variant_increase.fails() || !rep.variant_stable.holds()) {
                    r.verdict.outcome = Outcome::inconclusive;
                    r.verdict.counterexample.reset();
                    r.details.push_back("control parts disagree with the expected pattern");
                }
                return r;
            };
            break;
        }
        case K::fairness: {
            const StateSpace& s = need_space(g.pos);
            (void)s;
            body = [=] {
                auto ck = checker();
                GoalResult r;
                r.verdict = ck->equals(Command::conj(cmd::term(*sp), cmd::fair(*sp)), cmd::any_steps(*sp));
                return r;
            };
            break;
        }
        }

        const std::string kind = to_string(g.kind);
        const Outcome expect = g.expect;
        return [=] {
            const auto t0 = std::chrono::steady_clock::now();
            GoalResult r = body();
            r.id = id;
            r.kind = kind;
            r.expected = expect;
            if (!r.space)
                r.space = sp;
            r.verdict.depth = depth;
            r.verdict.engine = engine;
            r.verdict.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
            for (const std::string& n : r.verdict.notes)
                r.details.push_back(n);
            return r;
        };
    }

    const Script& script_;
    const RunOptions& opts_;
    std::shared_ptr<const StateSpace> space_;
    std::set<std::string> bases_, names_;
    std::map<std::string, StateSet> sets_;
    std::map<std::string, StateRel> rels_;
    std::map<std::string, Command> cmds_;
};

} // namespace

Report run(const Script& script, const RunOptions& opts)
{
    Elaborator el(script, opts);
    std::vector<Task> tasks = el.tasks();
    Report rep;
    rep.seed = opts.seed;
    rep.timings = opts.timings;
    rep.goals.resize(tasks.size());
    const std::size_t jobs = std::max<std::size_t>(1, std::min(opts.jobs, tasks.size()));
    if (jobs == 1) {
        for (std::size_t i = 0; i < tasks.size(); ++i)
            rep.goals[i] = tasks[i]();
        return rep;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(tasks.size());
    std::vector<std::thread> pool;
    for (std::size_t j = 0; j < jobs; ++j)
        pool.emplace_back([&] {
            for (std::size_t i; (i = next++) < tasks.size();) {
                try {
                    rep.goals[i] = tasks[i]();
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            }
        });
    for (std::thread& t : pool)
        t.join();
    for (const auto& e : errors)
        if (e)
            std::rethrow_exception(e);
    return rep;
}

// ---------------------------------------------------------------- rendering

namespace {

nlohmann::ordered_json state_json(const StateSpace& sp, StateId s)
{
    nlohmann::ordered_json a = nlohmann::ordered_json::array();
    for (const std::string& d : sp.describe(s))
        a.push_back(d);
    return a;
}

nlohmann::ordered_json trace_json(const StateSpace& sp, const Trace& t)
{
    nlohmann::ordered_json j;
    j["start"] = state_json(sp, t.start);
    nlohmann::ordered_json steps = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < t.steps.size(); ++i) {
        nlohmann::ordered_json s;
        s["label"] = to_string(t.steps[i].label);
        s["pre"] = state_json(sp, t.pre(i));
        s["post"] = state_json(sp, t.steps[i].post);
        steps.push_back(std::move(s));
    }
    j["steps"] = std::move(steps);
    j["status"] = to_string(t.status);
    return j;
}

} // namespace

std::string render_json(const Report& r)
{
    nlohmann::ordered_json j;
    j["version"] = 1;
    j["seed"] = r.seed;
    nlohmann::ordered_json goals = nlohmann::ordered_json::array();
    for (const GoalResult& g : r.goals) {
        nlohmann::ordered_json o;
        o["id"] = g.id;
        o["kind"] = g.kind;
        o["verdict"] = to_string(g.verdict.outcome);
        o["depth"] = g.verdict.depth;
        o["engine"] = to_string(g.verdict.engine);
        o["elapsed_ms"] = r.timings ? g.verdict.elapsed_ms : 0.0;
        if (g.verdict.counterexample && g.space)
            o["counterexample"] = trace_json(*g.space, *g.verdict.counterexample);
        else
            o["counterexample"] = nullptr;
        goals.push_back(std::move(o));
    }
    j["goals"] = std::move(goals);
    return j.dump(2) + "\n";
}

std::string render_human(const Report& r)
{
    std::ostringstream os;
    std::size_t ok = 0;
    for (const GoalResult& g : r.goals) {
        os << g.id << " [" << g.kind << "] " << to_string(g.verdict.outcome);
        if (!g.as_expected())
            os << " (expected " << to_string(g.expected) << ")";
        else if (g.expected != Outcome::holds)
            os << " (as expected)";
        os << "  depth " << g.verdict.depth << ", " << to_string(g.verdict.engine);
        if (r.timings)
            os << ", " << static_cast<long long>(g.verdict.elapsed_ms) << " ms";
        os << "\n";
        if (g.verdict.counterexample && g.space)
            os << "    counterexample: " << g.verdict.counterexample->to_string(*g.space) << "\n";
        for (const std::string& d : g.details)
            os << "    " << d << "\n";
        ok += g.as_expected();
    }
    os << ok << "/" << r.goals.size() << " goals as expected (seed " << r.seed << ")\n";
    return os.str();
}

} // namespace rgk::dsl
