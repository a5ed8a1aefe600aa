#include <algorithm>
#include <deque>
#include <limits>
#include <map>

#include "rgk/error.hh"
#include "rgk/semantics.hh"

namespace rgk {

namespace {

constexpr std::uint32_t kInf = std::numeric_limits<std::uint32_t>::max();

std::size_t mix(std::size_t h, std::size_t v)
{
    return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

std::uint64_t pack(std::uint32_t a, std::uint32_t b) { return (static_cast<std::uint64_t>(a) << 32) | b; }

} // namespace

std::size_t GraphEngine::NodeHash::operator()(NodeId n) const
{
    const Node& x = g->nodes_[n];
    std::size_t h = (x.abort ? 1U : 0U) | (x.term ? 2U : 0U);
    for (const auto& [k, c] : x.kids)
        h = mix(mix(h, k), c);
    return h;
}

std::size_t GraphEngine::DenKeyHash::operator()(const DenKey& k) const
{
    std::size_t h = k.cmd.hash();
    for (DenId d : k.env)
        h = mix(h, d);
    return h;
}

std::size_t GraphEngine::VecHash::operator()(const std::vector<NodeId>& v) const
{
    std::size_t h = v.size();
    for (NodeId n : v)
        h = mix(h, n);
    return h;
}

GraphEngine::GraphEngine(const StateSpace& space, std::size_t depth, std::size_t node_budget)
    : space_(space), depth_(depth), budget_(node_budget), table_(1024, NodeHash{this}, NodeEq{this})
{
    nodes_.push_back(Node{});
    nodes_.push_back(Node{true, false, {}});
    nodes_.push_back(Node{false, true, {}});
    height_ = {0, 0, 0};
    for (NodeId i = 0; i < 3; ++i)
        table_.insert(i);
    bot_ = intern_den(std::vector<NodeId>(space.size(), kEmpty));
    top_ = intern_den(std::vector<NodeId>(space.size(), kAbort));
}

NodeId GraphEngine::intern(Node n)
{
    if (n.abort)
        return kAbort;
    std::uint8_t h = 0;
    for (const auto& kc : n.kids)
        h = std::max<std::uint8_t>(h, height_[kc.second] + 1);
    nodes_.push_back(std::move(n));
    const NodeId id = static_cast<NodeId>(nodes_.size() - 1);
    auto [it, fresh] = table_.insert(id);
    if (!fresh) {
        nodes_.pop_back();
        return *it;
    }
    if (nodes_.size() > budget_)
        throw ResourceLimit("trace graph exceeded " + std::to_string(budget_) + " nodes");
    height_.push_back(h);
    return id;
}

DenId GraphEngine::intern_den(std::vector<NodeId> roots)
{
    auto it = den_table_.find(roots);
    if (it != den_table_.end())
        return it->second;
    const DenId id = static_cast<DenId>(dens_.size());
    dens_.push_back(roots);
    den_table_.emplace(std::move(roots), id);
    return id;
}

NodeId GraphEngine::unite(NodeId a, NodeId b)
{
    if (a == b || b == kEmpty)
        return a;
    if (a == kEmpty)
        return b;
    if (a == kAbort || b == kAbort)
        return kAbort;
    if (a > b)
        std::swap(a, b);
    const std::uint64_t key = pack(a, b);
    if (auto it = union_memo_.find(key); it != union_memo_.end())
        return it->second;
    const Node x = nodes_[a];
    const Node y = nodes_[b];
    Node r;
    r.term = x.term || y.term;
    std::size_t i = 0, j = 0;
    while (i < x.kids.size() || j < y.kids.size()) {
        if (j == y.kids.size() || (i < x.kids.size() && x.kids[i].first < y.kids[j].first)) {
            r.kids.push_back(x.kids[i++]);
        } else if (i == x.kids.size() || y.kids[j].first < x.kids[i].first) {
            r.kids.push_back(y.kids[j++]);
        } else {
            r.kids.emplace_back(x.kids[i].first, unite(x.kids[i].second, y.kids[j].second));
            ++i;
            ++j;
        }
    }
    const NodeId res = intern(std::move(r));
    union_memo_.emplace(key, res);
    return res;
}

NodeId GraphEngine::par(NodeId a, NodeId b) { return product(a, b, false); }
NodeId GraphEngine::conj(NodeId a, NodeId b) { return product(a, b, true); }

NodeId GraphEngine::product(NodeId a, NodeId b, bool is_conj)
{
    if (a == kAbort || b == kAbort)
        return kAbort;
    if (a == kEmpty || b == kEmpty)
        return kEmpty;
    if (a > b)
        std::swap(a, b);
    auto& memo = is_conj ? conj_memo_ : par_memo_;
    const std::uint64_t key = pack(a, b);
    if (auto it = memo.find(key); it != memo.end())
        return it->second;
    const Node x = nodes_[a];
    const Node y = nodes_[b];
    Node r;
    r.term = x.term && y.term;
    std::map<std::uint32_t, NodeId> kids;
    std::size_t i = 0, j = 0;
    while (i < x.kids.size() && j < y.kids.size()) {
        const std::uint32_t px = x.kids[i].first >> 1;
        const std::uint32_t py = y.kids[j].first >> 1;
        if (px < py) {
            ++i;
            continue;
        }
        if (py < px) {
            ++j;
            continue;
        }
        std::size_t ie = i, je = j;
        while (ie < x.kids.size() && (x.kids[ie].first >> 1) == px)
            ++ie;
        while (je < y.kids.size() && (y.kids[je].first >> 1) == py)
            ++je;
        for (std::size_t u = i; u < ie; ++u)
            for (std::size_t v = j; v < je; ++v) {
                const auto lx = x.kids[u].first & 1U;
                const auto ly = y.kids[v].first & 1U;
                std::uint32_t label;
                if (is_conj) {
                    if (lx != ly)
                        continue;
                    label = lx;
                } else {
                    if (lx == 0 && ly == 0)
                        continue;
                    label = (lx == 0 || ly == 0) ? 0U : 1U;
                }
                const NodeId child = product(x.kids[u].second, y.kids[v].second, is_conj);
                const std::uint32_t k = px * 2 + label;
                auto [it, fresh] = kids.emplace(k, child);
                if (!fresh)
                    it->second = unite(it->second, child);
            }
        i = ie;
        j = je;
    }
    r.kids.assign(kids.begin(), kids.end());
    const NodeId res = intern(std::move(r));
    memo.emplace(key, res);
    return res;
}

NodeId GraphEngine::truncate(NodeId a, std::size_t room)
{
    if (height_[a] <= room)
        return a;
    const std::uint64_t key = (static_cast<std::uint64_t>(a) << 8) | room;
    if (auto it = trunc_memo_.find(key); it != trunc_memo_.end())
        return it->second;
    const Node x = nodes_[a];
    Node r;
    r.term = x.term;
    if (room > 0)
        for (const auto& [k, c] : x.kids)
            r.kids.emplace_back(k, truncate(c, room - 1));
    const NodeId res = intern(std::move(r));
    trunc_memo_.emplace(key, res);
    return res;
}

NodeId GraphEngine::seq(NodeId a, StateId at, std::size_t room, DenId d)
{
    if (a == kAbort || a == kEmpty)
        return a;
    if (a == kTerm)
        return truncate(dens_[d][at], room);
    const std::pair<std::uint64_t, std::uint64_t> key{pack(a, d), pack(at, static_cast<std::uint32_t>(room))};
    if (auto it = seq_memo_.find(key); it != seq_memo_.end())
        return it->second;
    const Node x = nodes_[a];
    Node r;
    for (const auto& [k, c] : x.kids)
        r.kids.emplace_back(k, seq(c, k >> 1, room - 1, d));
    NodeId res = intern(std::move(r));
    if (x.term)
        res = unite(res, truncate(dens_[d][at], room));
    seq_memo_.emplace(key, res);
    return res;
}

DenId GraphEngine::denote(const Command& c)
{
    if (!c.closed())
        throw Error("cannot denote a command with free fixed-point variables");
    std::vector<DenId> env;
    return eval(c, env);
}

DenId GraphEngine::eval(const Command& c, std::vector<DenId>& env)
{
    DenKey key{c, {}};
    if (c.free_bound() > 0)
        key.env.assign(env.end() - static_cast<std::ptrdiff_t>(c.free_bound()), env.end());
    if (auto it = den_memo_.find(key); it != den_memo_.end())
        return it->second;
    const DenId res = eval_uncached(c, env);
    den_memo_.emplace(std::move(key), res);
    return res;
}

DenId GraphEngine::eval_uncached(const Command& c, std::vector<DenId>& env)
{
    using K = Command::Kind;
    const std::size_t n = space_.size();
    std::vector<NodeId> roots(n, kEmpty);
    switch (c.kind()) {
    case K::bot:
        return bot_;
    case K::top:
        return top_;
    case K::test:
        for (StateId s = 0; s < n; ++s)
            roots[s] = c.set().contains(s) ? kTerm : kEmpty;
        break;
    case K::pgm:
    case K::env: {
        if (depth_ == 0)
            return bot_;
        const std::uint32_t l = c.kind() == K::pgm ? 0U : 1U;
        for (StateId s = 0; s < n; ++s) {
            Node x;
            c.rel().row(s).for_each([&](std::size_t b) { x.kids.emplace_back(static_cast<std::uint32_t>(b) * 2 + l, kTerm); });
            roots[s] = intern(std::move(x));
        }
        break;
    }
    case K::choice: {
        bool first = true;
        for (const Command& k : c.children()) {
            const DenId d = eval(k, env);
            const std::vector<NodeId> kr = dens_[d];
            for (StateId s = 0; s < n; ++s)
                roots[s] = first ? kr[s] : unite(roots[s], kr[s]);
            first = false;
        }
        break;
    }
    case K::seq: {
        const DenId a = eval(c.left(), env);
        const DenId b = eval(c.right(), env);
        const std::vector<NodeId> ar = dens_[a];
        for (StateId s = 0; s < n; ++s)
            roots[s] = seq(ar[s], s, depth_, b);
        break;
    }
    case K::par:
    case K::conj: {
        const DenId a = eval(c.left(), env);
        const DenId b = eval(c.right(), env);
        const std::vector<NodeId> ar = dens_[a];
        const std::vector<NodeId> br = dens_[b];
        for (StateId s = 0; s < n; ++s)
            roots[s] = product(ar[s], br[s], c.kind() == K::conj);
        break;
    }
    case K::var:
        if (c.var_index() >= env.size())
            throw Error("unbound fixed-point variable");
        return env[env.size() - 1 - c.var_index()];
    case K::mu:
    case K::nu: {
        DenId cur = c.kind() == K::mu ? bot_ : top_;
        const std::size_t cap = default_fixpoint_cap(depth_, n);
        for (std::size_t i = 0;; ++i) {
            if (i > cap)
                throw FixpointDivergence("fixed point did not stabilise within " + std::to_string(cap) + " iterations");
            env.push_back(cur);
            const DenId next = eval(c.body(), env);
            env.pop_back();
            if (next == cur)
                return cur;
            cur = next;
        }
    }
    }
    return intern_den(std::move(roots));
}

std::uint32_t GraphEngine::dist(NodeId c, NodeId d)
{
    if (c == kAbort || c == d)
        return kInf;
    if (d == kAbort)
        return 0;
    const std::uint64_t key = pack(c, d);
    if (auto it = dist_memo_.find(key); it != dist_memo_.end())
        return it->second;
    const Node& x = nodes_[c];
    const Node& y = nodes_[d];
    std::uint32_t best = kInf;
    if (y.term && !x.term)
        best = 0;
    std::size_t i = 0;
    for (std::size_t j = 0; j < y.kids.size() && best > 1; ++j) {
        while (i < x.kids.size() && x.kids[i].first < y.kids[j].first)
            ++i;
        if (i == x.kids.size() || x.kids[i].first != y.kids[j].first) {
            best = std::min<std::uint32_t>(best, 1);
            continue;
        }
        const std::uint32_t sub = dist(x.kids[i].second, y.kids[j].second);
        if (sub != kInf)
            best = std::min(best, sub + 1);
    }
    dist_memo_.emplace(key, best);
    return best;
}

bool GraphEngine::covers(DenId c, DenId d)
{
    for (StateId s = 0; s < space_.size(); ++s)
        if (dist(dens_[c][s], dens_[d][s]) != kInf)
            return false;
    return true;
}

std::optional<Trace> GraphEngine::counterexample(DenId c, DenId d)
{
    std::uint32_t best = kInf;
    StateId start = 0;
    for (StateId s = 0; s < space_.size(); ++s) {
        const std::uint32_t v = dist(dens_[c][s], dens_[d][s]);
        if (v < best) {
            best = v;
            start = s;
        }
    }
    if (best == kInf)
        return std::nullopt;
    Trace t{start, {}, Status::incomplete};
    NodeId x = dens_[c][start];
    NodeId y = dens_[d][start];
    for (std::uint32_t rem = best;; --rem) {
        if (rem == 0) {
            t.status = nodes_[y].term && !nodes_[x].term ? Status::terminated : Status::aborted;
            return t;
        }
        const Node& cx = nodes_[x];
        const Node& cy = nodes_[y];
        bool moved = false;
        for (const auto& [k, yc] : cy.kids) {
            auto it = std::lower_bound(cx.kids.begin(), cx.kids.end(), std::make_pair(k, NodeId{0}));
            const bool missing = it == cx.kids.end() || it->first != k;
            if (missing) {
                if (rem == 1) {
                    // every status of this step is uncovered; report the least
                    t.steps.push_back(Step::from_key(k));
                    t.status = yc == kAbort ? Status::aborted : nodes_[yc].term ? Status::terminated : Status::incomplete;
                    return t;
                }
                continue;
            }
            if (dist(it->second, yc) == rem - 1) {
                t.steps.push_back(Step::from_key(k));
                x = it->second;
                y = yc;
                moved = true;
                break;
            }
        }
        if (!moved)
            throw Error("counterexample extraction lost its path");
    }
}

std::optional<Trace> GraphEngine::guarantee_violation(DenId d, const StateRel& g)
{
    struct Entry {
        NodeId node;
        StateId state;
        std::size_t parent;
        std::uint32_t key;
    };
    std::vector<Entry> q;
    std::unordered_set<std::uint64_t> seen;
    const auto npos = std::numeric_limits<std::size_t>::max();
    for (StateId s = 0; s < space_.size(); ++s)
        if (seen.insert(pack(dens_[d][s], s)).second)
            q.push_back({dens_[d][s], s, npos, 0});
    for (std::size_t head = 0; head < q.size(); ++head) {
        const Entry e = q[head];
        for (const auto& [k, child] : nodes_[e.node].kids) {
            const StateId post = k >> 1;
            if ((k & 1U) == 0 && !g.contains(e.state, post)) {
                std::vector<Step> rev{Step::from_key(k)};
                std::size_t at = head;
                while (q[at].parent != npos) {
                    rev.push_back(Step::from_key(q[at].key));
                    at = q[at].parent;
                }
                Trace t{q[at].state, {rev.rbegin(), rev.rend()}, Status::incomplete};
                return t;
            }
            if (seen.insert(pack(child, post)).second)
                q.push_back({child, post, head, k});
        }
    }
    return std::nullopt;
}

StateSet GraphEngine::terminal_states(DenId d, const StateSet& from) const
{
    StateSet out = space_.none();
    std::unordered_set<std::uint64_t> seen;
    std::vector<std::pair<NodeId, StateId>> stack;
    for (StateId s : from.members())
        stack.emplace_back(dens_[d][s], s);
    while (!stack.empty()) {
        auto [node, state] = stack.back();
        stack.pop_back();
        if (!seen.insert(pack(node, state)).second)
            continue;
        const Node& x = nodes_[node];
        if (x.term)
            out.insert(state);
        for (const auto& [k, child] : x.kids)
            stack.emplace_back(child, k >> 1);
    }
    return out;
}

TraceSet GraphEngine::traces(DenId d, std::size_t max_traces) const
{
    TraceSet out(space_.size(), depth_);
    std::size_t count = 0;
    Trace cur;
    auto walk = [&](auto&& self, NodeId n) -> void {
        if (++count > max_traces)
            throw ResourceLimit("trace expansion exceeded " + std::to_string(max_traces) + " traces");
        const Node& x = nodes_[n];
        cur.status = Status::incomplete;
        out.add(cur);
        if (x.term) {
            cur.status = Status::terminated;
            out.add(cur);
        }
        if (x.abort) {
            cur.status = Status::aborted;
            out.add(cur);
        }
        for (const auto& [k, child] : x.kids) {
            cur.steps.push_back(Step::from_key(k));
            self(self, child);
            cur.steps.pop_back();
        }
    };
    for (StateId s = 0; s < space_.size(); ++s) {
        cur = Trace{s, {}, Status::incomplete};
        walk(walk, dens_[d][s]);
    }
    return out;
}

TraceSet denote(const StateSpace& space, const Command& c, std::size_t depth, Engine engine)
{
    if (engine == Engine::enumerate)
        return denote_enum(space, c, depth);
    GraphEngine g(space, depth);
    return g.traces(g.denote(c));
}

bool engines_agree(const StateSpace& space, const Command& c, std::size_t depth)
{
    return denote(space, c, depth, Engine::enumerate) == denote(space, c, depth, Engine::graph);
}

} // namespace rgk
