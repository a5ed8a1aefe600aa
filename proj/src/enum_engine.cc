#include <map>

#include "rgk/error.hh"
#include "rgk/semantics.hh"

namespace rgk {

namespace {

struct EnumCtx {
    const StateSpace& space;
    std::size_t depth;
    std::size_t max_traces;
};

void check_size(const EnumCtx& ctx, const TraceSet& t)
{
    if (t.size() > ctx.max_traces)
        throw ResourceLimit("enumeration exceeded " + std::to_string(ctx.max_traces) + " traces");
}

std::optional<Label> match(Label a, Label b, bool conj)
{
    if (conj)
        return a == b ? std::optional<Label>(a) : std::nullopt;
    if (a == Label::pi && b == Label::pi)
        return std::nullopt;
    return (a == Label::pi || b == Label::pi) ? Label::pi : Label::eps;
}

Status combine(Status a, Status b)
{
    if (a == Status::aborted || b == Status::aborted)
        return Status::aborted;
    if (a == Status::terminated && b == Status::terminated)
        return Status::terminated;
    return Status::incomplete;
}

TraceSet eval(const EnumCtx& ctx, const Command& c, std::vector<TraceSet>& env);

TraceSet product(const EnumCtx& ctx, const TraceSet& a, const TraceSet& b, bool conj)
{
    std::map<std::pair<StateId, std::size_t>, std::vector<const Trace*>> groups;
    for (const Trace& u : b)
        groups[{u.start, u.length()}].push_back(&u);
    TraceSet out(ctx.space.size(), ctx.depth);
    for (const Trace& t : a) {
        auto it = groups.find({t.start, t.length()});
        if (it == groups.end())
            continue;
        for (const Trace* u : it->second) {
            Trace r{t.start, {}, combine(t.status, u->status)};
            bool ok = true;
            for (std::size_t i = 0; i < t.length() && ok; ++i) {
                auto l = match(t.steps[i].label, u->steps[i].label, conj);
                ok = l && t.steps[i].post == u->steps[i].post;
                if (ok)
                    r.steps.push_back({*l, t.steps[i].post});
            }
            if (ok)
                out.add(std::move(r));
        }
    }
    out.normalize();
    return out;
}

TraceSet eval(const EnumCtx& ctx, const Command& c, std::vector<TraceSet>& env)
{
    using K = Command::Kind;
    const std::size_t n = ctx.space.size();
    TraceSet out(n, ctx.depth);
    switch (c.kind()) {
    case K::bot:
        return out;
    case K::top:
        for (StateId s = 0; s < n; ++s)
            out.add(Trace{s, {}, Status::aborted});
        break;
    case K::test:
        for (StateId s : c.set().members())
            out.add(Trace{s, {}, Status::terminated});
        break;
    case K::pgm:
    case K::env: {
        const Label l = c.kind() == K::pgm ? Label::pi : Label::eps;
        for (StateId a = 0; a < n; ++a)
            c.rel().row(a).for_each([&](std::size_t b) { out.add(Trace{a, {{l, static_cast<StateId>(b)}}, Status::terminated}); });
        break;
    }
    case K::choice:
        for (const Command& k : c.children())
            for (const Trace& t : eval(ctx, k, env))
                out.add(t);
        break;
    case K::seq: {
        const TraceSet a = eval(ctx, c.left(), env);
        const TraceSet b = eval(ctx, c.right(), env);
        std::vector<std::vector<const Trace*>> by_start(n);
        for (const Trace& u : b)
            by_start[u.start].push_back(&u);
        for (const Trace& t : a) {
            if (t.status != Status::terminated) {
                out.add(t);
                continue;
            }
            for (const Trace* u : by_start[t.last()]) {
                if (t.length() + u->length() > ctx.depth)
                    continue;
                Trace r = t;
                r.status = u->status;
                r.steps.insert(r.steps.end(), u->steps.begin(), u->steps.end());
                out.add(std::move(r));
            }
        }
        break;
    }
    case K::par:
    case K::conj: {
        const TraceSet a = eval(ctx, c.left(), env);
        const TraceSet b = eval(ctx, c.right(), env);
        out = product(ctx, a, b, c.kind() == K::conj);
        check_size(ctx, out);
        return out;
    }
    case K::var:
        if (c.var_index() >= env.size())
            throw Error("unbound fixed-point variable");
        return env[env.size() - 1 - c.var_index()];
    case K::mu:
    case K::nu: {
        TraceSet cur = eval(ctx, c.kind() == K::mu ? Command::bot() : Command::top(), env);
        const std::size_t cap = default_fixpoint_cap(ctx.depth, n);
        for (std::size_t i = 0;; ++i) {
            if (i > cap)
                throw FixpointDivergence("fixed point did not stabilise within " + std::to_string(cap) + " iterations");
            env.push_back(cur);
            TraceSet next = eval(ctx, c.body(), env);
            env.pop_back();
            if (next == cur)
                return cur;
            cur = std::move(next);
        }
    }
    }
    out.normalize();
    check_size(ctx, out);
    return out;
}

} // namespace

std::string to_string(Engine e) { return e == Engine::enumerate ? "enum" : "graph"; }

std::optional<Engine> parse_engine(const std::string& s)
{
    if (s == "enum")
        return Engine::enumerate;
    if (s == "graph")
        return Engine::graph;
    return std::nullopt;
}

std::size_t default_fixpoint_cap(std::size_t depth, std::size_t states) { return 10 * (depth + 1) * states; }

TraceSet denote_enum(const StateSpace& space, const Command& c, std::size_t depth, std::size_t max_traces)
{
    if (!c.closed())
        throw Error("cannot denote a command with free fixed-point variables");
    EnumCtx ctx{space, depth, max_traces};
    std::vector<TraceSet> env;
    return eval(ctx, c, env);
}

} // namespace rgk
