#include "rgk/trace.hh"

#include <sstream>

namespace rgk {

std::string to_string(Label l) { return l == Label::pi ? "pi" : "eps"; }

std::string to_string(Status s)
{
    switch (s) {
    case Status::terminated:
        return "terminated";
    case Status::aborted:
        return "aborted";
    case Status::incomplete:
        return "incomplete";
    }
    return "?";
}

Trace Trace::prefix(std::size_t len, Status st) const
{
    Trace t;
    t.start = start;
    t.steps.assign(steps.begin(), steps.begin() + static_cast<std::ptrdiff_t>(len));
    t.status = st;
    return t;
}

bool Trace::steps_prefix_of(const Trace& o) const
{
    if (start != o.start || steps.size() > o.steps.size())
        return false;
    for (std::size_t i = 0; i < steps.size(); ++i)
        if (!(steps[i] == o.steps[i]))
            return false;
    return true;
}

std::strong_ordering Trace::operator<=>(const Trace& o) const
{
    if (auto c = steps.size() <=> o.steps.size(); c != 0)
        return c;
    if (auto c = start <=> o.start; c != 0)
        return c;
    for (std::size_t i = 0; i < steps.size(); ++i)
        if (auto c = steps[i].key() <=> o.steps[i].key(); c != 0)
            return c;
    return status <=> o.status;
}

std::string Trace::to_string(const StateSpace& space) const
{
    std::ostringstream os;
    os << space.describe_inline(start);
    for (const Step& s : steps)
        os << " -" << rgk::to_string(s.label) << "-> " << space.describe_inline(s.post);
    os << " " << rgk::to_string(status);
    return os.str();
}

TraceSet::TraceSet(std::size_t states, std::size_t depth) : states_(states), depth_(depth)
{
    for (StateId s = 0; s < states; ++s)
        set_.insert(Trace{s, {}, Status::incomplete});
}

void TraceSet::add(Trace t)
{
    if (t.length() <= depth_)
        set_.insert(std::move(t));
}

void TraceSet::normalize()
{
    std::set<Trace> closed;
    for (StateId s = 0; s < states_; ++s)
        closed.insert(Trace{s, {}, Status::incomplete});
    for (const Trace& t : set_) {
        closed.insert(t);
        for (std::size_t j = 0; j <= t.length(); ++j)
            closed.insert(t.prefix(j, Status::incomplete));
    }
    set_.clear();
    for (const Trace& t : closed) {
        bool covered = false;
        for (std::size_t j = 0; j <= t.length() && !covered; ++j) {
            if (j == t.length() && t.status != Status::terminated)
                break;
            covered = closed.count(t.prefix(j, Status::aborted)) > 0;
        }
        if (!covered)
            set_.insert(t);
    }
}

bool TraceSet::covers(const Trace& t) const
{
    if (contains(t))
        return true;
    for (std::size_t j = 0; j <= t.length(); ++j)
        if (contains(t.prefix(j, Status::aborted)))
            return true;
    return false;
}

std::optional<Trace> TraceSet::first_uncovered(const TraceSet& o) const
{
    for (const Trace& t : o)
        if (!covers(t))
            return t;
    return std::nullopt;
}

std::optional<std::string> TraceSet::validate() const
{
    for (StateId s = 0; s < states_; ++s)
        if (!contains(Trace{s, {}, Status::incomplete}))
            return "missing baseline trace at state " + std::to_string(s);
    for (const Trace& t : set_) {
        if (t.length() > depth_)
            return "trace longer than depth";
        if (t.start >= states_)
            return "start state out of range";
        for (const Step& st : t.steps)
            if (st.post >= states_)
                return "post state out of range";
        for (std::size_t j = 0; j <= t.length(); ++j)
            if (!contains(t.prefix(j, Status::incomplete)))
                return "not prefix closed";
        for (std::size_t j = 0; j < t.length(); ++j)
            if (contains(t.prefix(j, Status::aborted)))
                return "trace extends an aborted trace";
        if (t.status == Status::terminated && contains(t.prefix(t.length(), Status::aborted)))
            return "terminated trace shadowed by aborted trace";
    }
    return std::nullopt;
}

} // namespace rgk
