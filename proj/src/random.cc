#include "rgk/random.hh"

namespace rgk {

StateSet Rng::state_set(const StateSpace& space, double density)
{
    StateSet p = space.none();
    for (StateId s = 0; s < space.size(); ++s)
        if (coin(density))
            p.insert(s);
    return p;
}

StateRel Rng::state_rel(const StateSpace& space, double density)
{
    StateRel r = space.empty_rel();
    for (StateId a = 0; a < space.size(); ++a)
        for (StateId b = 0; b < space.size(); ++b)
            if (coin(density))
                r.insert(a, b);
    return r;
}

Command Rng::command(const StateSpace& space, std::size_t size) { return open_command(space, std::max<std::size_t>(size, 1), 0); }

Command Rng::open_command(const StateSpace& space, std::size_t size, std::size_t bound)
{
    if (size <= 1) {
        // Leaves; a bound variable is only picked under a binder.
        switch (below(bound > 0 ? 7 : 6)) {
        case 0:
            // bot and tests alone give near-empty denotations; keep them rare
            return coin(0.3) ? Command::bot() : Command::pgm(state_rel(space));
        case 1:
            return coin(0.3) ? Command::top() : Command::test(state_set(space));
        case 2:
            return coin(0.5) ? Command::test(state_set(space)) : Command::env(state_rel(space));
        case 3:
            return Command::pgm(state_rel(space));
        case 4:
            return Command::env(state_rel(space));
        case 5:
            return coin() ? Command::pgm(state_rel(space)) : Command::env(state_rel(space));
        default:
            return Command::var(below(bound));
        }
    }
    const std::size_t rest = size - 1;
    switch (below(6)) {
    case 4:
    case 5: {
        Command body = open_command(space, rest, bound + 1);
        return coin() ? Command::mu(body) : Command::nu(body);
    }
    default: {
        if (rest < 2)
            return open_command(space, 1, bound);
        const std::size_t l = 1 + below(rest - 1);
        Command a = open_command(space, l, bound);
        Command b = open_command(space, rest - l, bound);
        switch (below(4)) {
        case 0:
            return Command::choice({a, b});
        case 1:
            return Command::seq(a, b);
        case 2:
            return Command::par(a, b);
        default:
            return Command::conj(a, b);
        }
    }
    }
}

} // namespace rgk
