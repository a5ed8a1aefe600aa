#include "rgk/state_model.hh"

#include <algorithm>

#include "rgk/error.hh"

namespace rgk {

// ---------------------------------------------------------------- Bitset

Bitset::Bitset(std::size_t n, bool fill) : n_(n), w_((n + 63) / 64, fill ? ~std::uint64_t{0} : 0)
{
    trim();
}

void Bitset::trim()
{
    if (n_ % 64 != 0 && !w_.empty())
        w_.back() &= (std::uint64_t{1} << (n_ % 64)) - 1;
}

std::size_t Bitset::count() const
{
    std::size_t c = 0;
    for (std::uint64_t w : w_)
        c += static_cast<std::size_t>(__builtin_popcountll(w));
    return c;
}

bool Bitset::any() const
{
    return std::any_of(w_.begin(), w_.end(), [](std::uint64_t w) { return w != 0; });
}

Bitset& Bitset::operator|=(const Bitset& o)
{
    for (std::size_t i = 0; i < w_.size(); ++i)
        w_[i] |= o.w_[i];
    return *this;
}

Bitset& Bitset::operator&=(const Bitset& o)
{
    for (std::size_t i = 0; i < w_.size(); ++i)
        w_[i] &= o.w_[i];
    return *this;
}

Bitset& Bitset::subtract(const Bitset& o)
{
    for (std::size_t i = 0; i < w_.size(); ++i)
        w_[i] &= ~o.w_[i];
    return *this;
}

Bitset Bitset::complement() const
{
    Bitset out = *this;
    for (auto& w : out.w_)
        w = ~w;
    out.trim();
    return out;
}

bool Bitset::subset_of(const Bitset& o) const
{
    for (std::size_t i = 0; i < w_.size(); ++i)
        if (w_[i] & ~o.w_[i])
            return false;
    return true;
}

bool Bitset::intersects(const Bitset& o) const
{
    for (std::size_t i = 0; i < w_.size(); ++i)
        if (w_[i] & o.w_[i])
            return true;
    return false;
}

std::size_t Bitset::hash() const
{
    std::size_t h = n_;
    for (std::uint64_t w : w_)
        h = (h ^ w) * 0x100000001b3ULL;
    return h;
}

// ---------------------------------------------------------------- StateSet

std::vector<StateId> StateSet::members() const
{
    std::vector<StateId> out;
    bits_.for_each([&](std::size_t i) { out.push_back(static_cast<StateId>(i)); });
    return out;
}

StateSet StateSet::unite(const StateSet& o) const
{
    StateSet out = *this;
    out.bits_ |= o.bits_;
    return out;
}

StateSet StateSet::intersect(const StateSet& o) const
{
    StateSet out = *this;
    out.bits_ &= o.bits_;
    return out;
}

StateSet StateSet::minus(const StateSet& o) const
{
    StateSet out = *this;
    out.bits_.subtract(o.bits_);
    return out;
}

StateSet StateSet::complement() const
{
    StateSet out;
    out.bits_ = bits_.complement();
    return out;
}

// ---------------------------------------------------------------- StateRel

std::size_t StateRel::count() const
{
    std::size_t c = 0;
    for (const auto& r : rows_)
        c += r.count();
    return c;
}

bool StateRel::empty() const
{
    return std::all_of(rows_.begin(), rows_.end(), [](const Bitset& r) { return r.none(); });
}

StateRel StateRel::unite(const StateRel& o) const
{
    StateRel out = *this;
    for (std::size_t i = 0; i < rows_.size(); ++i)
        out.rows_[i] |= o.rows_[i];
    return out;
}

StateRel StateRel::intersect(const StateRel& o) const
{
    StateRel out = *this;
    for (std::size_t i = 0; i < rows_.size(); ++i)
        out.rows_[i] &= o.rows_[i];
    return out;
}

StateRel StateRel::minus(const StateRel& o) const
{
    StateRel out = *this;
    for (std::size_t i = 0; i < rows_.size(); ++i)
        out.rows_[i].subtract(o.rows_[i]);
    return out;
}

StateRel StateRel::complement() const
{
    StateRel out = *this;
    for (auto& r : out.rows_)
        r = r.complement();
    return out;
}

StateRel StateRel::converse() const
{
    StateRel out(rows_.size());
    for (std::size_t a = 0; a < rows_.size(); ++a)
        rows_[a].for_each([&](std::size_t b) { out.insert(static_cast<StateId>(b), static_cast<StateId>(a)); });
    return out;
}

bool StateRel::subset_of(const StateRel& o) const
{
    for (std::size_t i = 0; i < rows_.size(); ++i)
        if (!rows_[i].subset_of(o.rows_[i]))
            return false;
    return true;
}

StateSet StateRel::reflexive_points() const
{
    StateSet out(rows_.size());
    for (std::size_t a = 0; a < rows_.size(); ++a)
        if (rows_[a].test(a))
            out.insert(static_cast<StateId>(a));
    return out;
}

StateSet StateRel::domain() const
{
    StateSet out(rows_.size());
    for (std::size_t a = 0; a < rows_.size(); ++a)
        if (rows_[a].any())
            out.insert(static_cast<StateId>(a));
    return out;
}

StateSet StateRel::image(const StateSet& from) const
{
    StateSet out(rows_.size());
    for (StateId a : from.members())
        rows_[a].for_each([&](std::size_t b) { out.insert(static_cast<StateId>(b)); });
    return out;
}

std::size_t StateRel::hash() const
{
    std::size_t h = rows_.size();
    for (const auto& r : rows_)
        h = (h ^ r.hash()) * 0x100000001b3ULL;
    return h;
}

// ---------------------------------------------------------------- declarations

StateSpaceDecl& StateSpaceDecl::add(LValue lv, Domain domain)
{
    domain = make_domain(std::move(domain));
    if (domain.empty())
        throw DomainError("l-value " + lv.to_string() + " has an empty domain");
    for (const auto& e : entries_)
        if (e.lvalue == lv)
            throw DomainError("l-value " + lv.to_string() + " declared twice");
    entries_.push_back({std::move(lv), std::move(domain)});
    return *this;
}

StateSpaceDecl& StateSpaceDecl::add_array(const std::string& name, const Domain& index, const Domain& domain)
{
    for (const Value& i : index)
        add(LValue::var(name).indexed(i), domain);
    return *this;
}

StateSpace::StateSpace(StateSpaceDecl decl) : decl_(std::move(decl))
{
    const auto& entries = decl_.entries();
    if (entries.empty())
        throw DomainError("state space declares no l-values");
    std::size_t n = 1;
    for (const auto& e : entries) {
        if (n * e.domain.size() > decl_.cap)
            throw StateSpaceTooLarge(n * e.domain.size(), decl_.cap);
        n *= e.domain.size();
    }
    size_ = n;
    stride_.assign(entries.size(), 1);
    for (std::size_t i = entries.size(); i-- > 1;)
        stride_[i - 1] = stride_[i] * entries[i].domain.size();
    digit_of_.resize(entries.size());
    std::vector<Value> all{vfalse(), vtrue()};
    for (std::size_t i = 0; i < entries.size(); ++i) {
        index_.emplace(entries[i].lvalue, i);
        for (std::size_t d = 0; d < entries[i].domain.size(); ++d) {
            digit_of_[i].emplace(entries[i].domain[d], d);
            all.push_back(entries[i].domain[d]);
        }
    }
    universe_ = make_domain(std::move(all));
}

std::optional<std::size_t> StateSpace::index_of(const LValue& lv) const
{
    auto it = index_.find(lv);
    if (it == index_.end())
        return std::nullopt;
    return it->second;
}

std::size_t StateSpace::require_index(const LValue& lv) const
{
    if (auto i = index_of(lv))
        return *i;
    throw UndeclaredLValue("undeclared l-value " + lv.to_string());
}

bool StateSpace::is_declared_prefix(const LValue& lv) const
{
    return std::any_of(lvalues().begin(), lvalues().end(), [&](const LValueDecl& d) { return lv.is_prefix_of(d.lvalue); });
}

const Value& StateSpace::value(StateId s, std::size_t lv) const
{
    return decl_.entries()[lv].domain[digit(s, lv)];
}

std::optional<StateId> StateSpace::with_value(StateId s, std::size_t lv, const Value& v) const
{
    auto it = digit_of_[lv].find(v);
    if (it == digit_of_[lv].end())
        return std::nullopt;
    std::size_t cur = digit(s, lv);
    return static_cast<StateId>(s + (it->second - cur) * stride_[lv]);
}

std::optional<StateId> StateSpace::state_of(const std::vector<Value>& values) const
{
    if (values.size() != lvalues().size())
        return std::nullopt;
    std::size_t s = 0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        auto it = digit_of_[i].find(values[i]);
        if (it == digit_of_[i].end())
            return std::nullopt;
        s += it->second * stride_[i];
    }
    return static_cast<StateId>(s);
}

std::vector<std::string> StateSpace::describe(StateId s) const
{
    std::vector<std::string> out;
    for (std::size_t i = 0; i < lvalues().size(); ++i)
        out.push_back(lvalues()[i].lvalue.to_string() + "=" + value(s, i).to_string());
    std::sort(out.begin(), out.end());
    return out;
}

std::string StateSpace::describe_inline(StateId s) const
{
    std::string out = "(";
    bool first = true;
    for (const auto& d : describe(s)) {
        if (!first)
            out += ", ";
        out += d;
        first = false;
    }
    return out + ")";
}

StateSet StateSpace::singleton(StateId s) const
{
    StateSet out(size_);
    out.insert(s);
    return out;
}

StateRel StateSpace::identity() const
{
    StateRel out(size_);
    for (StateId s = 0; s < size_; ++s)
        out.insert(s, s);
    return out;
}

StateSet StateSpace::filter(const std::function<bool(StateId)>& pred) const
{
    StateSet out(size_);
    for (StateId s = 0; s < size_; ++s)
        if (pred(s))
            out.insert(s);
    return out;
}

StateRel StateSpace::relation(const std::function<bool(StateId, StateId)>& pred) const
{
    StateRel out(size_);
    for (StateId a = 0; a < size_; ++a)
        for (StateId b = 0; b < size_; ++b)
            if (pred(a, b))
                out.insert(a, b);
    return out;
}

// ---------------------------------------------------------------- relational algebra

StateRel compose(const StateRel& r1, const StateRel& r2)
{
    const std::size_t n = r1.universe_size();
    StateRel out(n);
    for (StateId a = 0; a < n; ++a) {
        Bitset row(n);
        r1.row(a).for_each([&](std::size_t mid) { row |= r2.row(static_cast<StateId>(mid)); });
        row.for_each([&](std::size_t b) { out.insert(a, static_cast<StateId>(b)); });
    }
    return out;
}

StateRel range_restrict(const StateRel& r, const StateSet& p)
{
    StateRel out(r.universe_size());
    for (StateId a = 0; a < r.universe_size(); ++a)
        r.row(a).for_each([&](std::size_t b) {
            if (p.contains(static_cast<StateId>(b)))
                out.insert(a, static_cast<StateId>(b));
        });
    return out;
}

StateRel domain_restrict(const StateSet& p, const StateRel& r)
{
    StateRel out(r.universe_size());
    for (StateId a : p.members())
        r.row(a).for_each([&](std::size_t b) { out.insert(a, static_cast<StateId>(b)); });
    return out;
}

StateRel refl_trans_closure(const StateRel& r)
{
    const std::size_t n = r.universe_size();
    // Warshall on bit rows: after processing k, row(i) holds every state
    // reachable from i through intermediates <= k.
    std::vector<Bitset> rows;
    rows.reserve(n);
    for (StateId i = 0; i < n; ++i) {
        rows.push_back(r.row(i));
        rows.back().set(i);
    }
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            if (rows[i].test(k))
                rows[i] |= rows[k];
    StateRel out(n);
    for (StateId i = 0; i < n; ++i)
        rows[i].for_each([&](std::size_t j) { out.insert(i, static_cast<StateId>(j)); });
    return out;
}

StateRel identity_on(const StateSpace& space, const std::vector<LValue>& vs)
{
    std::vector<std::size_t> idx;
    for (const auto& v : vs)
        idx.push_back(space.require_index(v));
    return space.relation([&](StateId a, StateId b) {
        return std::all_of(idx.begin(), idx.end(), [&](std::size_t i) { return space.digit(a, i) == space.digit(b, i); });
    });
}

bool stable(const StateSet& p, const StateRel& r)
{
    for (StateId a : p.members())
        if (!r.row(a).subset_of(p.bits()))
            return false;
    return true;
}

StateSet stable_closure(const StateSet& p, const StateRel& r)
{
    StateSet cur = p;
    while (true) {
        StateSet next = cur.unite(r.image(cur));
        if (next == cur)
            return cur;
        cur = std::move(next);
    }
}

bool tolerates(const StateRel& q, const StateRel& r, const StateSet& p)
{
    return stable(p, r) && domain_restrict(p, compose(r, q)).subset_of(q) && domain_restrict(p, compose(q, r)).subset_of(q);
}

bool transitive(const StateRel& r)
{
    return compose(r, r).subset_of(r);
}

// ---------------------------------------------------------------- orders

ValueOrder::ValueOrder(Domain carrier, std::function<bool(const Value&, const Value&)> less)
    : carrier_(make_domain(std::move(carrier))),
      rel_(carrier_.size(), std::vector<bool>(carrier_.size(), false))
{
    for (std::size_t i = 0; i < carrier_.size(); ++i)
        for (std::size_t j = 0; j < carrier_.size(); ++j)
            rel_[i][j] = less(carrier_[i], carrier_[j]);
}

ValueOrder ValueOrder::less_than(Domain carrier)
{
    return ValueOrder(std::move(carrier), [](const Value& a, const Value& b) {
        return a.is_int() && b.is_int() && a.as_int() < b.as_int();
    });
}

ValueOrder ValueOrder::strict_subset(Domain carrier)
{
    return ValueOrder(std::move(carrier), [](const Value& a, const Value& b) {
        return a.is_set() && b.is_set() && a.as_set().strict_subset_of(b.as_set());
    });
}

std::optional<std::size_t> ValueOrder::index_of(const Value& v) const
{
    auto it = std::lower_bound(carrier_.begin(), carrier_.end(), v);
    if (it == carrier_.end() || !(*it == v))
        return std::nullopt;
    return static_cast<std::size_t>(it - carrier_.begin());
}

bool ValueOrder::less(const Value& a, const Value& b) const
{
    auto i = index_of(a);
    auto j = index_of(b);
    return i && j && rel_[*i][*j];
}

bool ValueOrder::less_eq(const Value& a, const Value& b) const
{
    auto i = index_of(a);
    auto j = index_of(b);
    return i && j && (*i == *j || rel_[*i][*j]);
}

bool ValueOrder::is_transitive() const
{
    const std::size_t n = carrier_.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (rel_[i][j])
                for (std::size_t k = 0; k < n; ++k)
                    if (rel_[j][k] && !rel_[i][k])
                        return false;
    return true;
}

bool is_well_founded(const ValueOrder& order)
{
    const std::size_t n = order.carrier().size();
    // Colour-based DFS cycle detection over the "greater-than" edges.
    std::vector<int> colour(n, 0);
    std::function<bool(std::size_t)> has_cycle = [&](std::size_t v) {
        colour[v] = 1;
        for (std::size_t w = 0; w < n; ++w) {
            if (!order.related(w, v))
                continue;
            if (colour[w] == 1)
                return true;
            if (colour[w] == 0 && has_cycle(w))
                return true;
        }
        colour[v] = 2;
        return false;
    };
    for (std::size_t v = 0; v < n; ++v)
        if (colour[v] == 0 && has_cycle(v))
            return false;
    return true;
}

} // namespace rgk
