#include "rgk/value.hh"

#include <algorithm>

#include "rgk/error.hh"

namespace rgk {

SmallSet SmallSet::of(std::initializer_list<int> elems)
{
    std::uint64_t bits = 0;
    for (int e : elems) {
        if (e < 0 || e > kMaxElement)
            throw DomainError("set element " + std::to_string(e) + " outside 0..63");
        bits |= std::uint64_t{1} << e;
    }
    return SmallSet{bits};
}

std::vector<int> SmallSet::elements() const
{
    std::vector<int> out;
    for (int e = 0; e <= kMaxElement; ++e)
        if (contains(e))
            out.push_back(e);
    return out;
}

std::vector<SmallSet> SmallSet::subsets() const
{
    std::vector<SmallSet> out;
    // Standard submask enumeration, collected then sorted ascending.
    std::uint64_t sub = bits_;
    while (true) {
        out.emplace_back(sub);
        if (sub == 0)
            break;
        sub = (sub - 1) & bits_;
    }
    std::sort(out.begin(), out.end());
    return out;
}

Value Value::integer(std::int64_t i)
{
    if (i < kIntMin || i > kIntMax)
        throw DomainError("integer " + std::to_string(i) + " outside representable range");
    return Value(Repr{i});
}

std::string Value::to_string() const
{
    switch (kind()) {
    case Kind::boolean:
        return as_bool() ? "true" : "false";
    case Kind::integer:
        return std::to_string(as_int());
    case Kind::set: {
        std::string s = "{";
        bool first = true;
        for (int e : as_set().elements()) {
            if (!first)
                s += ",";
            s += std::to_string(e);
            first = false;
        }
        return s + "}";
    }
    }
    return "?";
}

std::size_t Value::hash() const
{
    std::size_t h = static_cast<std::size_t>(kind()) * 0x9e3779b97f4a7c15ULL;
    switch (kind()) {
    case Kind::boolean:
        return h ^ (as_bool() ? 1 : 2);
    case Kind::integer:
        return h ^ std::hash<std::int64_t>{}(as_int());
    case Kind::set:
        return h ^ std::hash<std::uint64_t>{}(as_set().bits());
    }
    return h;
}

std::strong_ordering Value::operator<=>(const Value& o) const
{
    if (auto c = v_.index() <=> o.v_.index(); c != 0)
        return c;
    switch (kind()) {
    case Kind::boolean:
        return as_bool() <=> o.as_bool();
    case Kind::integer:
        return as_int() <=> o.as_int();
    case Kind::set:
        return as_set() <=> o.as_set();
    }
    return std::strong_ordering::equal;
}

Domain make_domain(std::vector<Value> values)
{
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    return values;
}

Domain int_range(std::int64_t lo, std::int64_t hi)
{
    Domain d;
    for (std::int64_t i = lo; i <= hi; ++i)
        d.push_back(Value::integer(i));
    return d;
}

Domain bool_domain() { return {vfalse(), vtrue()}; }

Domain powerset_domain(SmallSet universe)
{
    Domain d;
    for (SmallSet s : universe.subsets())
        d.push_back(Value::set(s));
    return make_domain(std::move(d));
}

LValue LValue::indexed(Value i) const
{
    LValue out = *this;
    out.indices.push_back(i);
    return out;
}

LValue LValue::parent() const
{
    LValue out = *this;
    out.indices.pop_back();
    return out;
}

bool LValue::is_prefix_of(const LValue& other) const
{
    if (base != other.base || indices.size() > other.indices.size())
        return false;
    return std::equal(indices.begin(), indices.end(), other.indices.begin());
}

std::string LValue::to_string() const
{
    std::string s = base;
    for (const Value& i : indices)
        s += "[" + i.to_string() + "]";
    return s;
}

std::size_t LValueHash::operator()(const LValue& lv) const
{
    std::size_t h = std::hash<std::string>{}(lv.base);
    for (const Value& i : lv.indices)
        h = h * 1000003U ^ i.hash();
    return h;
}

} // namespace rgk
