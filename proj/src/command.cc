#include "rgk/command.hh"

#include <algorithm>
#include <sstream>

#include "rgk/error.hh"

namespace rgk {

struct Command::Node {
    Kind kind = Kind::bot;
    StateSet set;
    StateRel rel;
    std::vector<Command> kids;
    std::size_t index = 0;
    std::string hint;
    std::size_t free_bound = 0;
    std::size_t size = 1;
    std::size_t hash = 0;
};

namespace {

std::size_t mix(std::size_t h, std::size_t v)
{
    return (h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2)));
}

} // namespace

Command Command::make(Node n)
{
    std::size_t h = static_cast<std::size_t>(n.kind) + 1;
    std::size_t fb = 0;
    std::size_t size = 1;
    switch (n.kind) {
    case Kind::test:
        h = mix(h, n.set.hash());
        break;
    case Kind::pgm:
    case Kind::env:
        h = mix(h, n.rel.hash());
        break;
    case Kind::var:
        h = mix(h, n.index);
        fb = n.index + 1;
        break;
    default:
        break;
    }
    for (const Command& k : n.kids) {
        h = mix(h, k.hash());
        size += k.size();
        fb = std::max(fb, k.free_bound());
    }
    if (n.kind == Kind::mu || n.kind == Kind::nu)
        fb = fb > 0 ? fb - 1 : 0;
    n.hash = h;
    n.free_bound = fb;
    n.size = size;
    return Command(std::make_shared<const Node>(std::move(n)));
}

Command Command::bot()
{
    static const Command c = make(Node{});
    return c;
}

Command Command::top()
{
    static const Command c = [] {
        Node n;
        n.kind = Kind::top;
        return make(std::move(n));
    }();
    return c;
}

Command Command::test(StateSet p)
{
    Node n;
    n.kind = Kind::test;
    n.set = std::move(p);
    return make(std::move(n));
}

Command Command::pgm(StateRel r)
{
    Node n;
    n.kind = Kind::pgm;
    n.rel = std::move(r);
    return make(std::move(n));
}

Command Command::env(StateRel r)
{
    Node n;
    n.kind = Kind::env;
    n.rel = std::move(r);
    return make(std::move(n));
}

Command Command::choice(std::vector<Command> cs)
{
    std::vector<Command> flat;
    for (Command& c : cs) {
        if (c.kind() == Kind::choice)
            flat.insert(flat.end(), c.children().begin(), c.children().end());
        else
            flat.push_back(std::move(c));
    }
    if (flat.empty())
        return bot();
    if (flat.size() == 1)
        return flat.front();
    Node n;
    n.kind = Kind::choice;
    n.kids = std::move(flat);
    return make(std::move(n));
}

Command Command::seq(Command c, Command d)
{
    Node n;
    n.kind = Kind::seq;
    n.kids = {std::move(c), std::move(d)};
    return make(std::move(n));
}

Command Command::par(Command c, Command d)
{
    Node n;
    n.kind = Kind::par;
    n.kids = {std::move(c), std::move(d)};
    return make(std::move(n));
}

Command Command::conj(Command c, Command d)
{
    Node n;
    n.kind = Kind::conj;
    n.kids = {std::move(c), std::move(d)};
    return make(std::move(n));
}

Command Command::mu(Command body, std::string hint)
{
    Node n;
    n.kind = Kind::mu;
    n.kids = {std::move(body)};
    n.hint = std::move(hint);
    return make(std::move(n));
}

Command Command::nu(Command body, std::string hint)
{
    Node n;
    n.kind = Kind::nu;
    n.kids = {std::move(body)};
    n.hint = std::move(hint);
    return make(std::move(n));
}

Command Command::var(std::size_t index)
{
    Node n;
    n.kind = Kind::var;
    n.index = index;
    return make(std::move(n));
}

Command::Kind Command::kind() const { return n_->kind; }
const StateSet& Command::set() const { return n_->set; }
const StateRel& Command::rel() const { return n_->rel; }
const std::vector<Command>& Command::children() const { return n_->kids; }
std::size_t Command::var_index() const { return n_->index; }
const std::string& Command::hint() const { return n_->hint; }
std::size_t Command::free_bound() const { return n_->free_bound; }
std::size_t Command::size() const { return n_->size; }
std::size_t Command::hash() const { return n_->hash; }

bool Command::operator==(const Command& o) const
{
    if (n_ == o.n_)
        return true;
    if (n_->hash != o.n_->hash || n_->kind != o.n_->kind || n_->size != o.n_->size)
        return false;
    switch (n_->kind) {
    case Kind::test:
        return n_->set == o.n_->set;
    case Kind::pgm:
    case Kind::env:
        return n_->rel == o.n_->rel;
    case Kind::var:
        return n_->index == o.n_->index;
    default:
        return n_->kids == o.n_->kids;
    }
}

namespace {

std::string set_string(const StateSet& p)
{
    std::string s = "{";
    bool first = true;
    for (StateId m : p.members()) {
        if (!first)
            s += ",";
        s += "s" + std::to_string(m);
        first = false;
    }
    return s + "}";
}

std::string rel_string(const StateRel& r)
{
    std::string s = "{";
    bool first = true;
    for (StateId a = 0; a < r.universe_size(); ++a)
        r.row(a).for_each([&](std::size_t b) {
            if (!first)
                s += ",";
            s += "s" + std::to_string(a) + ">s" + std::to_string(b);
            first = false;
        });
    return s + "}";
}

void print(std::ostream& os, const Command& c, std::vector<std::string>& names)
{
    using K = Command::Kind;
    switch (c.kind()) {
    case K::bot:
        os << "bot";
        return;
    case K::top:
        os << "top";
        return;
    case K::test:
        os << "test" << set_string(c.set());
        return;
    case K::pgm:
        os << "pgm" << rel_string(c.rel());
        return;
    case K::env:
        os << "env" << rel_string(c.rel());
        return;
    case K::var:
        if (c.var_index() < names.size())
            os << names[names.size() - 1 - c.var_index()];
        else
            os << "#" << c.var_index();
        return;
    case K::mu:
    case K::nu: {
        std::string name = c.hint() + std::to_string(names.size());
        os << (c.kind() == K::mu ? "mu " : "nu ") << name << ". (";
        names.push_back(name);
        print(os, c.body(), names);
        names.pop_back();
        os << ")";
        return;
    }
    case K::choice:
    case K::seq:
    case K::par:
    case K::conj: {
        const char* sep = c.kind() == K::choice ? " | " : c.kind() == K::seq ? " ; " : c.kind() == K::par ? " || " : " /\\ ";
        os << "(";
        for (std::size_t i = 0; i < c.children().size(); ++i) {
            if (i)
                os << sep;
            print(os, c.children()[i], names);
        }
        os << ")";
        return;
    }
    }
}

Command rebuild(const Command& c, std::vector<Command> kids)
{
    using K = Command::Kind;
    switch (c.kind()) {
    case K::choice:
        return Command::choice(std::move(kids));
    case K::seq:
        return Command::seq(std::move(kids[0]), std::move(kids[1]));
    case K::par:
        return Command::par(std::move(kids[0]), std::move(kids[1]));
    case K::conj:
        return Command::conj(std::move(kids[0]), std::move(kids[1]));
    case K::mu:
        return Command::mu(std::move(kids[0]), c.hint());
    case K::nu:
        return Command::nu(std::move(kids[0]), c.hint());
    default:
        return c;
    }
}

// Replaces free index `depth` by `arg` shifted by `depth`; lowers larger indices.
Command subst_at(const Command& c, const Command& arg, std::size_t depth)
{
    if (c.free_bound() <= depth)
        return c;
    if (c.kind() == Command::Kind::var) {
        if (c.var_index() == depth)
            return shift(arg, static_cast<std::ptrdiff_t>(depth));
        return Command::var(c.var_index() - 1);
    }
    const bool binds = c.kind() == Command::Kind::mu || c.kind() == Command::Kind::nu;
    std::vector<Command> kids;
    for (const Command& k : c.children())
        kids.push_back(subst_at(k, arg, binds ? depth + 1 : depth));
    return rebuild(c, std::move(kids));
}

} // namespace

std::string Command::to_string() const
{
    std::ostringstream os;
    std::vector<std::string> names;
    print(os, *this, names);
    return os.str();
}

Command shift(const Command& c, std::ptrdiff_t by, std::size_t cutoff)
{
    if (by == 0 || c.free_bound() <= cutoff)
        return c;
    if (c.kind() == Command::Kind::var) {
        const auto idx = static_cast<std::ptrdiff_t>(c.var_index()) + by;
        if (idx < 0)
            throw Error("negative de Bruijn index after shift");
        return Command::var(static_cast<std::size_t>(idx));
    }
    const bool binds = c.kind() == Command::Kind::mu || c.kind() == Command::Kind::nu;
    std::vector<Command> kids;
    for (const Command& k : c.children())
        kids.push_back(shift(k, by, binds ? cutoff + 1 : cutoff));
    return rebuild(c, std::move(kids));
}

Command substitute(const Command& body, const Command& arg)
{
    return subst_at(body, arg, 0);
}

Command unfold_from_bot(const Command& body, std::size_t n)
{
    Command cur = Command::bot();
    for (std::size_t i = 0; i < n; ++i)
        cur = substitute(body, cur);
    return cur;
}

bool is_expanded(const Command& c)
{
    return c.closed();
}

} // namespace rgk
