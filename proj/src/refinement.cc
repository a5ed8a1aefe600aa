#include "rgk/refinement.hh"

#include <chrono>

#include "rgk/error.hh"
#include "rgk/lang.hh"

namespace rgk {

std::string to_string(Outcome o)
{
    switch (o) {
    case Outcome::holds:
        return "holds";
    case Outcome::fails:
        return "fails";
    case Outcome::inconclusive:
        return "inconclusive";
    case Outcome::premise_violation:
        return "premise_violation";
    case Outcome::soundness_alarm:
        return "soundness_alarm";
    }
    return "?";
}

Checker::Checker(const StateSpace& space, CheckOptions opts) : space_(space), opts_(opts) {}

Checker Checker::with(std::size_t depth, Engine engine) const
{
    CheckOptions o = opts_;
    o.depth = depth;
    o.engine = engine;
    return Checker(space_, o);
}

GraphEngine& Checker::graph()
{
    if (!graph_)
        graph_ = std::make_shared<GraphEngine>(space_, opts_.depth, opts_.node_budget);
    return *graph_;
}

Verdict Checker::run(const std::function<void(Verdict&)>& body) const
{
    Verdict v;
    v.depth = opts_.depth;
    v.engine = opts_.engine;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        body(v);
    } catch (const ResourceLimit& e) {
        v.outcome = Outcome::inconclusive;
        v.counterexample.reset();
        v.notes.push_back(e.what());
    }
    v.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return v;
}

Verdict Checker::refines(const Command& c, const Command& d)
{
    return run([&](Verdict& v) {
        std::optional<Trace> cex;
        if (opts_.engine == Engine::enumerate) {
            const TraceSet a = denote_enum(space_, c, opts_.depth, opts_.max_traces);
            const TraceSet b = denote_enum(space_, d, opts_.depth, opts_.max_traces);
            cex = a.first_uncovered(b);
        } else {
            GraphEngine& g = graph();
            const DenId a = g.denote(c);
            const DenId b = g.denote(d);
            if (!g.covers(a, b))
                cex = g.counterexample(a, b);
        }
        v.outcome = cex ? Outcome::fails : Outcome::holds;
        v.counterexample = std::move(cex);
    });
}

Verdict Checker::equals(const Command& c, const Command& d)
{
    Verdict v = refines(c, d);
    if (!v.holds())
        return v;
    Verdict w = refines(d, c);
    w.elapsed_ms += v.elapsed_ms;
    if (w.fails())
        w.notes.push_back("right-hand side does not refine to the left-hand side");
    return w;
}

Verdict Checker::hoare_triple(const StateSet& p, const Command& c, const StateSet& p1)
{
    return refines(Command::seq(cmd::assertion(space_, p), c), Command::seq(c, cmd::assertion(space_, p1)));
}

Verdict Checker::establishes(const StateSet& p, const StateRel& r, const Expr& e, const Value& k, const StateSet& P)
{
    return hoare_triple(p, Command::conj(cmd::rely(space_, r), cmd::eval_expr(space_, e, k)), P);
}

Verdict Checker::establishes_lv(const StateSet& p, const StateRel& r, const LvExpr& lve, const LValue& lv, const StateSet& P)
{
    return hoare_triple(p, Command::conj(cmd::rely(space_, r), cmd::eval_lvexpr(space_, lve, lv)), P);
}

Verdict Checker::satisfies_guarantee(const Command& c, const StateRel& g)
{
    return run([&](Verdict& v) {
        std::optional<Trace> bad;
        if (opts_.engine == Engine::enumerate) {
            const TraceSet t = denote_enum(space_, c, opts_.depth, opts_.max_traces);
            for (const Trace& tr : t) {
                for (std::size_t i = 0; i < tr.length() && !bad; ++i)
                    if (tr.steps[i].label == Label::pi && !g.contains(tr.pre(i), tr.steps[i].post))
                        bad = tr.prefix(i + 1, Status::incomplete);
                if (bad)
                    break;
            }
        } else {
            GraphEngine& ge = graph();
            bad = ge.guarantee_violation(ge.denote(c), g);
        }
        v.outcome = bad ? Outcome::fails : Outcome::holds;
        v.counterexample = std::move(bad);
    });
}

StateSet Checker::strongest_post(const StateSet& p, const Command& c)
{
    if (opts_.engine == Engine::enumerate) {
        StateSet out = space_.none();
        for (const Trace& t : denote_enum(space_, c, opts_.depth, opts_.max_traces))
            if (t.status == Status::terminated && p.contains(t.start))
                out.insert(t.last());
        return out;
    }
    GraphEngine& g = graph();
    return g.terminal_states(g.denote(c), p);
}

TraceSet Checker::traces(const Command& c)
{
    if (opts_.engine == Engine::enumerate)
        return denote_enum(space_, c, opts_.depth, opts_.max_traces);
    GraphEngine& g = graph();
    return g.traces(g.denote(c), opts_.max_traces);
}

} // namespace rgk
