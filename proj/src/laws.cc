#include "rgk/laws.hh"

#include <sstream>

#include "rgk/error.hh"
#include "rgk/lang.hh"

namespace rgk {

namespace {

using C = Command;

Verdict premise_violation(const Checker& ck, const std::string& why)
{
    Verdict v;
    v.outcome = Outcome::premise_violation;
    v.depth = ck.options().depth;
    v.engine = ck.options().engine;
    v.notes.push_back(why);
    return v;
}

/// Checks the premises in order; the first that does not hold is reported.
std::optional<Verdict> premises(Checker& ck, std::initializer_list<std::pair<const char*, std::function<Verdict()>>> ps)
{
    for (const auto& [name, f] : ps) {
        Verdict v = f();
        if (v.outcome == Outcome::inconclusive)
            return v;
        if (!v.holds())
            return premise_violation(ck, std::string("premise ") + name + " does not hold");
    }
    return std::nullopt;
}

const StateSet& S(const LawBindings& b, const char* n)
{
    auto it = b.sets.find(n);
    if (it == b.sets.end())
        throw Error(std::string("missing set binding ") + n);
    return it->second;
}

const StateRel& R(const LawBindings& b, const char* n)
{
    auto it = b.rels.find(n);
    if (it == b.rels.end())
        throw Error(std::string("missing relation binding ") + n);
    return it->second;
}

const Command& K(const LawBindings& b, const char* n)
{
    auto it = b.cmds.find(n);
    if (it == b.cmds.end())
        throw Error(std::string("missing command binding ") + n);
    return it->second;
}

std::vector<Law> build_catalogue()
{
    std::vector<Law> laws;
    auto add = [&](std::string id, std::string stmt, std::vector<std::string> sets, std::vector<std::string> rels,
                   std::vector<std::string> cmds, std::function<Verdict(Checker&, const LawBindings&)> f,
                   std::vector<std::string> families = {}) {
        laws.push_back(Law{std::move(id), std::move(stmt), std::move(sets), std::move(rels), std::move(cmds), std::move(families), std::move(f)});
    };

    add("assert-alt", "{p} = [p] | [~p] ; top", {"p"}, {}, {}, [](Checker& ck, const LawBindings& b) {
        const StateSet& p = S(b, "p");
        return ck.equals(cmd::assertion(ck.space(), p), C::choice({C::test(p), C::seq(C::test(p.complement()), C::top())}));
    });
    add("assert-merge", "{p1} ; {p2} = {p1 & p2}", {"p1", "p2"}, {}, {}, [](Checker& ck, const LawBindings& b) {
        const auto& sp = ck.space();
        return ck.equals(C::seq(cmd::assertion(sp, S(b, "p1")), cmd::assertion(sp, S(b, "p2"))),
                         cmd::assertion(sp, S(b, "p1").intersect(S(b, "p2"))));
    });
    add("assert-test", "{p} ; [p] = {p}", {"p"}, {}, {}, [](Checker& ck, const LawBindings& b) {
        const StateSet& p = S(b, "p");
        return ck.equals(C::seq(cmd::assertion(ck.space(), p), C::test(p)), cmd::assertion(ck.space(), p));
    });
    add("assert-union", "{p1 | p2} ; c >= d  if  {p1} ; c >= d  and  {p2} ; c >= d", {"p1", "p2"}, {}, {"c", "d"},
        [](Checker& ck, const LawBindings& b) {
            const auto& sp = ck.space();
            const Command& c = K(b, "c");
            const Command& d = K(b, "d");
            if (auto pv = premises(ck, {{"{p1};c >= d", [&] { return ck.refines(C::seq(cmd::assertion(sp, S(b, "p1")), c), d); }},
                                        {"{p2};c >= d", [&] { return ck.refines(C::seq(cmd::assertion(sp, S(b, "p2")), c), d); }}}))
                return *pv;
            return ck.refines(C::seq(cmd::assertion(sp, S(b, "p1").unite(S(b, "p2"))), c), d);
        });
    add("assert-Union", "{U P} ; c >= d  if  {p} ; c >= d  for every p in P", {}, {}, {"c", "d"},
        [](Checker& ck, const LawBindings& b) {
            const auto& sp = ck.space();
            const Command& c = K(b, "c");
            const Command& d = K(b, "d");
            auto it = b.families.find("P");
            if (it == b.families.end())
                throw Error("missing family binding P");
            StateSet all = sp.none();
            for (const StateSet& p : it->second) {
                Verdict v = ck.refines(C::seq(cmd::assertion(sp, p), c), d);
                if (v.outcome == Outcome::inconclusive)
                    return v;
                if (!v.holds())
                    return premise_violation(ck, "premise {p};c >= d does not hold for some p in P");
                all = all.unite(p);
            }
            return ck.refines(C::seq(cmd::assertion(sp, all), c), d);
        },
        {"P"});
    add("spec-test", "[q |> p] = [q] ; [p]", {"p"}, {"q"}, {}, [](Checker& ck, const LawBindings& b) {
        const auto& sp = ck.space();
        return ck.equals(cmd::post_spec(sp, range_restrict(R(b, "q"), S(b, "p"))), C::seq(cmd::post_spec(sp, R(b, "q")), C::test(S(b, "p"))));
    });
    add("spec-split", "[r1 o r2] >= [r1 |> p] ; {p} ; [r2]", {"p"}, {"r1", "r2"}, {}, [](Checker& ck, const LawBindings& b) {
        const auto& sp = ck.space();
        const StateSet& p = S(b, "p");
        return ck.refines(cmd::post_spec(sp, compose(R(b, "r1"), R(b, "r2"))),
                          C::seq(cmd::post_spec(sp, range_restrict(R(b, "r1"), p)), C::seq(cmd::assertion(sp, p), cmd::post_spec(sp, R(b, "r2")))));
    });
    add("rely-distrib-seq", "rely r /\\ (c1 ; c2) = (rely r /\\ c1) ; (rely r /\\ c2)", {}, {"r"}, {"c1", "c2"},
        [](Checker& ck, const LawBindings& b) {
            const Command rl = cmd::rely(ck.space(), R(b, "r"));
            return ck.equals(C::conj(rl, C::seq(K(b, "c1"), K(b, "c2"))), C::seq(C::conj(rl, K(b, "c1")), C::conj(rl, K(b, "c2"))));
        });
    add("spec-tolerates", "rely r /\\ {p};[q] = rely r /\\ {p};idle;[q];idle  if q tolerates r from p", {"p"}, {"q", "r"}, {},
        [](Checker& ck, const LawBindings& b) {
            const auto& sp = ck.space();
            const StateSet& p = S(b, "p");
            const StateRel& q = R(b, "q");
            const StateRel& r = R(b, "r");
            if (!tolerates(q, r, p))
                return premise_violation(ck, "q does not tolerate r from p");
            const Command rl = cmd::rely(sp, r);
            const Command spec = cmd::post_spec(sp, q);
            const Command idle = cmd::idle(sp);
            return ck.equals(C::conj(rl, C::seq(cmd::assertion(sp, p), spec)),
                             C::conj(rl, C::seq(cmd::assertion(sp, p), C::seq(idle, C::seq(spec, idle)))));
        });

    add("seq-assoc", "(c ; d) ; e = c ; (d ; e)", {}, {}, {"c", "d", "e"}, [](Checker& ck, const LawBindings& b) {
        return ck.equals(C::seq(C::seq(K(b, "c"), K(b, "d")), K(b, "e")), C::seq(K(b, "c"), C::seq(K(b, "d"), K(b, "e"))));
    });
    add("seq-nil", "nil ; c = c = c ; nil", {}, {}, {"c"}, [](Checker& ck, const LawBindings& b) {
        const Command nil = cmd::nil(ck.space());
        Verdict v = ck.equals(C::seq(nil, K(b, "c")), K(b, "c"));
        if (!v.holds())
            return v;
        return ck.equals(C::seq(K(b, "c"), nil), K(b, "c"));
    });
    add("seq-top-left", "top ; c = top", {}, {}, {"c"}, [](Checker& ck, const LawBindings& b) {
        return ck.equals(C::seq(C::top(), K(b, "c")), C::top());
    });
    add("seq-distrib-left", "(c | d) ; e = c ; e | d ; e", {}, {}, {"c", "d", "e"}, [](Checker& ck, const LawBindings& b) {
        return ck.equals(C::seq(C::choice({K(b, "c"), K(b, "d")}), K(b, "e")),
                         C::choice({C::seq(K(b, "c"), K(b, "e")), C::seq(K(b, "d"), K(b, "e"))}));
    });
    add("seq-distrib-right", "c ; (d | e) = c ; d | c ; e", {}, {}, {"c", "d", "e"}, [](Checker& ck, const LawBindings& b) {
        return ck.equals(C::seq(K(b, "c"), C::choice({K(b, "d"), K(b, "e")})),
                         C::choice({C::seq(K(b, "c"), K(b, "d")), C::seq(K(b, "c"), K(b, "e"))}));
    });
    add("par-comm", "c || d = d || c", {}, {}, {"c", "d"}, [](Checker& ck, const LawBindings& b) {
        return ck.equals(C::par(K(b, "c"), K(b, "d")), C::par(K(b, "d"), K(b, "c")));
    });
    add("par-assoc", "(c || d) || e = c || (d || e)", {}, {}, {"c", "d", "e"}, [](Checker& ck, const LawBindings& b) {
        return ck.equals(C::par(C::par(K(b, "c"), K(b, "d")), K(b, "e")), C::par(K(b, "c"), C::par(K(b, "d"), K(b, "e"))));
    });
    add("par-distrib", "c || (d | e) = c || d | c || e", {}, {}, {"c", "d", "e"}, [](Checker& ck, const LawBindings& b) {
        return ck.equals(C::par(K(b, "c"), C::choice({K(b, "d"), K(b, "e")})),
                         C::choice({C::par(K(b, "c"), K(b, "d")), C::par(K(b, "c"), K(b, "e"))}));
    });
    add("conj-comm", "c /\\ d = d /\\ c", {}, {}, {"c", "d"}, [](Checker& ck, const LawBindings& b) {
        return ck.equals(C::conj(K(b, "c"), K(b, "d")), C::conj(K(b, "d"), K(b, "c")));
    });
    add("conj-assoc", "(c /\\ d) /\\ e = c /\\ (d /\\ e)", {}, {}, {"c", "d", "e"}, [](Checker& ck, const LawBindings& b) {
        return ck.equals(C::conj(C::conj(K(b, "c"), K(b, "d")), K(b, "e")), C::conj(K(b, "c"), C::conj(K(b, "d"), K(b, "e"))));
    });
    add("conj-idem", "c /\\ c = c", {}, {}, {"c"}, [](Checker& ck, const LawBindings& b) {
        return ck.equals(C::conj(K(b, "c"), K(b, "c")), K(b, "c"));
    });
    add("conj-distrib", "c /\\ (d | e) = c /\\ d | c /\\ e", {}, {}, {"c", "d", "e"}, [](Checker& ck, const LawBindings& b) {
        return ck.equals(C::conj(K(b, "c"), C::choice({K(b, "d"), K(b, "e")})),
                         C::choice({C::conj(K(b, "c"), K(b, "d")), C::conj(K(b, "c"), K(b, "e"))}));
    });
    add("choice-comm", "c | d = d | c", {}, {}, {"c", "d"}, [](Checker& ck, const LawBindings& b) {
        return ck.equals(C::choice({K(b, "c"), K(b, "d")}), C::choice({K(b, "d"), K(b, "c")}));
    });
    add("choice-assoc", "(c | d) | e = c | (d | e)", {}, {}, {"c", "d", "e"}, [](Checker& ck, const LawBindings& b) {
        // Built without flattening so both groupings are really compared.
        const Command l = C::choice({C::seq(cmd::nil(ck.space()), C::choice({K(b, "c"), K(b, "d")})), K(b, "e")});
        const Command r = C::choice({K(b, "c"), C::seq(cmd::nil(ck.space()), C::choice({K(b, "d"), K(b, "e")}))});
        return ck.equals(l, r);
    });
    add("choice-idem", "c | c = c", {}, {}, {"c"}, [](Checker& ck, const LawBindings& b) {
        return ck.equals(C::choice({K(b, "c"), K(b, "c")}), K(b, "c"));
    });
    add("choice-join", "c | d >= c  and  c | d >= d", {}, {}, {"c", "d"}, [](Checker& ck, const LawBindings& b) {
        const Command j = C::choice({K(b, "c"), K(b, "d")});
        Verdict v = ck.refines(j, K(b, "c"));
        if (!v.holds())
            return v;
        return ck.refines(j, K(b, "d"));
    });
    add("choice-bot", "c | bot = c", {}, {}, {"c"}, [](Checker& ck, const LawBindings& b) {
        return ck.equals(C::choice({K(b, "c"), C::bot()}), K(b, "c"));
    });
    add("test-refine", "[p1] >= [p2]  if p1 contains p2", {"p1", "p2"}, {}, {}, [](Checker& ck, const LawBindings& b) {
        if (!S(b, "p2").subset_of(S(b, "p1")))
            return premise_violation(ck, "p2 is not a subset of p1");
        return ck.refines(C::test(S(b, "p1")), C::test(S(b, "p2")));
    });
    add("atomic-refine", "pgm g1 >= pgm g2  and  env g1 >= env g2  if g1 contains g2", {}, {"g1", "g2"}, {},
        [](Checker& ck, const LawBindings& b) {
            if (!R(b, "g2").subset_of(R(b, "g1")))
                return premise_violation(ck, "g2 is not a subset of g1");
            Verdict v = ck.refines(C::pgm(R(b, "g1")), C::pgm(R(b, "g2")));
            if (!v.holds())
                return v;
            return ck.refines(C::env(R(b, "g1")), C::env(R(b, "g2")));
        });
    add("empty-bot", "[{}] = pgm {} = env {} = bot", {}, {}, {}, [](Checker& ck, const LawBindings&) {
        const auto& sp = ck.space();
        for (const Command& c : {C::test(sp.none()), C::pgm(sp.empty_rel()), C::env(sp.empty_rel())}) {
            Verdict v = ck.equals(c, C::bot());
            if (!v.holds())
                return v;
        }
        return ck.equals(C::bot(), C::bot());
    });
    add("assert-sigma", "{all} = nil", {}, {}, {}, [](Checker& ck, const LawBindings&) {
        return ck.equals(cmd::assertion(ck.space(), ck.space().all()), cmd::nil(ck.space()));
    });
    add("assert-empty", "{} = top", {}, {}, {}, [](Checker& ck, const LawBindings&) {
        return ck.equals(cmd::assertion(ck.space(), ck.space().none()), C::top());
    });
    add("bot-least", "c >= bot", {}, {}, {"c"}, [](Checker& ck, const LawBindings& b) { return ck.refines(K(b, "c"), C::bot()); });
    add("top-greatest", "top >= c", {}, {}, {"c"}, [](Checker& ck, const LawBindings& b) { return ck.refines(C::top(), K(b, "c")); });
    add("term-fair", "term /\\ fair = fin alpha", {}, {}, {}, [](Checker& ck, const LawBindings&) {
        const auto& sp = ck.space();
        return ck.equals(C::conj(cmd::term(sp), cmd::fair(sp)), cmd::any_steps(sp));
    });
    return laws;
}

std::vector<StateSet> all_sets(const StateSpace& sp)
{
    std::vector<StateSet> out;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << sp.size()); ++m) {
        StateSet p = sp.none();
        for (StateId s = 0; s < sp.size(); ++s)
            if ((m >> s) & 1U)
                p.insert(s);
        out.push_back(p);
    }
    return out;
}

std::vector<StateRel> all_rels(const StateSpace& sp)
{
    const std::size_t n = sp.size();
    std::vector<StateRel> out;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << (n * n)); ++m) {
        StateRel r = sp.empty_rel();
        for (std::size_t i = 0; i < n * n; ++i)
            if ((m >> i) & 1U)
                r.insert(static_cast<StateId>(i / n), static_cast<StateId>(i % n));
        out.push_back(r);
    }
    return out;
}

} // namespace

std::string LawBindings::describe(const StateSpace& space) const
{
    std::ostringstream os;
    auto set_str = [&](const StateSet& p) {
        std::string s = "{";
        bool first = true;
        for (StateId m : p.members()) {
            s += (first ? "" : ", ") + space.describe_inline(m);
            first = false;
        }
        return s + "}";
    };
    for (const auto& [k, v] : sets)
        os << k << "=" << set_str(v) << " ";
    for (const auto& [k, v] : rels) {
        os << k << "={";
        bool first = true;
        for (StateId a = 0; a < space.size(); ++a)
            v.row(a).for_each([&](std::size_t b) {
                os << (first ? "" : ", ") << space.describe_inline(a) << "->" << space.describe_inline(static_cast<StateId>(b));
                first = false;
            });
        os << "} ";
    }
    for (const auto& [k, v] : families) {
        os << k << "=[";
        for (const StateSet& p : v)
            os << set_str(p) << " ";
        os << "] ";
    }
    for (const auto& [k, v] : cmds)
        os << k << "=" << v.to_string() << " ";
    return os.str();
}

const std::vector<Law>& law_catalogue()
{
    static const std::vector<Law> laws = build_catalogue();
    return laws;
}

const Law* find_law(const std::string& id)
{
    for (const Law& l : law_catalogue())
        if (l.id == id)
            return &l;
    return nullptr;
}

Verdict check_law(Checker& checker, const std::string& id, const LawBindings& b)
{
    const Law* law = find_law(id);
    if (!law)
        throw Error("unknown law " + id);
    return law->check(checker, b);
}

std::vector<Command> command_pool(const StateSpace& sp)
{
    StateRel step = sp.empty_rel();
    StateRel back = sp.empty_rel();
    if (sp.size() > 1) {
        step.insert(0, 1);
        back.insert(1, 0);
    }
    StateSet first = sp.singleton(0);
    StateSet last = sp.singleton(static_cast<StateId>(sp.size() - 1));
    return {
        C::bot(),
        C::top(),
        cmd::nil(sp),
        C::test(first),
        cmd::pi(sp),
        C::pgm(sp.identity()),
        cmd::eps(sp),
        C::env(back),
        C::pgm(step),
        cmd::idle(sp),
        cmd::guar(sp, sp.identity()),
        C::seq(cmd::pi(sp), cmd::assertion(sp, last)),
        cmd::fin_iter(sp, cmd::pi(sp)),
        C::choice({C::pgm(step), C::env(sp.identity())}),
    };
}

void for_each_binding(const Law& law, const StateSpace& space, const std::function<void(const LawBindings&)>& f)
{
    const std::vector<StateSet> sets = all_sets(space);
    const std::vector<StateRel> rels = all_rels(space);
    const std::vector<Command> pool = command_pool(space);
    std::vector<std::vector<StateSet>> fams;
    for (std::size_t i = 0; i < sets.size(); ++i) {
        fams.push_back({sets[i]});
        for (std::size_t j = i + 1; j < sets.size(); ++j) {
            fams.push_back({sets[i], sets[j]});
            for (std::size_t k = j + 1; k < sets.size(); ++k)
                fams.push_back({sets[i], sets[j], sets[k]});
        }
    }
    fams.push_back({});

    LawBindings b;
    // Odometer over every metavariable.
    std::vector<std::size_t> radix;
    for (std::size_t i = 0; i < law.sets.size(); ++i)
        radix.push_back(sets.size());
    for (std::size_t i = 0; i < law.rels.size(); ++i)
        radix.push_back(rels.size());
    for (std::size_t i = 0; i < law.cmds.size(); ++i)
        radix.push_back(pool.size());
    for (std::size_t i = 0; i < law.families.size(); ++i)
        radix.push_back(fams.size());
    std::vector<std::size_t> digit(radix.size(), 0);
    for (;;) {
        std::size_t at = 0;
        for (const auto& n : law.sets)
            b.sets.insert_or_assign(n, sets[digit[at++]]);
        for (const auto& n : law.rels)
            b.rels.insert_or_assign(n, rels[digit[at++]]);
        for (const auto& n : law.cmds)
            b.cmds.insert_or_assign(n, pool[digit[at++]]);
        for (const auto& n : law.families)
            b.families.insert_or_assign(n, fams[digit[at++]]);
        f(b);
        std::size_t i = 0;
        while (i < digit.size() && ++digit[i] == radix[i])
            digit[i++] = 0;
        if (i == digit.size())
            return;
    }
}

LawBindings random_bindings(const Law& law, const StateSpace& space, Rng& rng, std::size_t max_cmd_size)
{
    LawBindings b;
    for (const auto& n : law.sets)
        b.sets.emplace(n, rng.state_set(space));
    for (const auto& n : law.rels) {
        // Mix sparse, dense and reflexive relations.
        StateRel r = rng.state_rel(space, rng.coin() ? 0.25 : 0.6);
        if (rng.coin(0.4))
            r = r.unite(space.identity());
        b.rels.emplace(n, r);
    }
    for (const auto& n : law.cmds)
        b.cmds.emplace(n, rng.command(space, 1 + rng.below(max_cmd_size)));
    for (const auto& n : law.families) {
        std::vector<StateSet> fam;
        const std::size_t k = rng.below(4);
        for (std::size_t i = 0; i < k; ++i)
            fam.push_back(rng.state_set(space));
        b.families.emplace(n, fam);
    }
    return b;
}

void SweepStats::add(const Verdict& v, const std::string& what)
{
    ++instances;
    switch (v.outcome) {
    case Outcome::holds:
        ++holds;
        break;
    case Outcome::premise_violation:
        ++premise_violations;
        break;
    case Outcome::inconclusive:
        ++inconclusive;
        failure_notes.push_back("inconclusive: " + what);
        break;
    default:
        ++failures;
        failure_notes.push_back(what);
        break;
    }
}

SweepStats& SweepStats::operator+=(const SweepStats& o)
{
    instances += o.instances;
    holds += o.holds;
    premise_violations += o.premise_violations;
    failures += o.failures;
    inconclusive += o.inconclusive;
    failure_notes.insert(failure_notes.end(), o.failure_notes.begin(), o.failure_notes.end());
    return *this;
}

StateSpace counter_space(int n)
{
    StateSpaceDecl d;
    d.add_var("x", int_range(0, n - 1));
    return StateSpace(d);
}

SweepStats sweep_exhaustive(const Law& law, std::size_t depth, Engine engine)
{
    const StateSpace sp = counter_space(2);
    Checker ck(sp, {depth, engine});
    SweepStats st;
    for_each_binding(law, sp, [&](const LawBindings& b) {
        Verdict v = law.check(ck, b);
        std::string what;
        if (!v.holds() && v.outcome != Outcome::premise_violation) {
            what = law.id + " " + b.describe(sp);
            if (v.counterexample)
                what += " cex: " + v.counterexample->to_string(sp);
        }
        st.add(v, what);
    });
    return st;
}

SweepStats sweep_random(const Law& law, std::size_t count, std::uint64_t seed, std::size_t depth, Engine engine)
{
    const StateSpace sp = counter_space(3);
    Checker ck(sp, {depth, engine});
    Rng rng(seed);
    SweepStats st;
    for (std::size_t i = 0; i < count; ++i) {
        const LawBindings b = random_bindings(law, sp, rng);
        Verdict v = law.check(ck, b);
        std::string what;
        if (!v.holds() && v.outcome != Outcome::premise_violation) {
            what = law.id + " " + b.describe(sp);
            if (v.counterexample)
                what += " cex: " + v.counterexample->to_string(sp);
        }
        st.add(v, what);
    }
    return st;
}

} // namespace rgk
