#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace rgk {

/// Finite set of small naturals (0..63), stored as a bit map.
class SmallSet {
public:
    static constexpr int kMaxElement = 63;

    constexpr SmallSet() = default;
    constexpr explicit SmallSet(std::uint64_t bits) : bits_(bits) {}
    static SmallSet of(std::initializer_list<int> elems);

    std::uint64_t bits() const { return bits_; }
    bool contains(std::int64_t e) const { return e >= 0 && e <= kMaxElement && ((bits_ >> e) & 1U); }
    bool empty() const { return bits_ == 0; }
    int size() const { return __builtin_popcountll(bits_); }
    std::vector<int> elements() const;

    SmallSet unite(SmallSet o) const { return SmallSet{bits_ | o.bits_}; }
    SmallSet intersect(SmallSet o) const { return SmallSet{bits_ & o.bits_}; }
    SmallSet minus(SmallSet o) const { return SmallSet{bits_ & ~o.bits_}; }
    bool subset_of(SmallSet o) const { return (bits_ & ~o.bits_) == 0; }
    bool strict_subset_of(SmallSet o) const { return subset_of(o) && bits_ != o.bits_; }

    /// Every subset of this set, ordered by bit pattern.
    std::vector<SmallSet> subsets() const;

    // Numeric order on the bit pattern; a total order used for enumeration only.
    auto operator<=>(const SmallSet&) const = default;

private:
    std::uint64_t bits_ = 0;
};

/// A program value: a boolean, a bounded integer, or a finite set of small naturals.
class Value {
public:
    enum class Kind : std::uint8_t { boolean = 0, integer = 1, set = 2 };

    /// Integers outside this range are not representable; arithmetic that
    /// leaves it is infeasible rather than wrapping.
    static constexpr std::int64_t kIntMin = -1024;
    static constexpr std::int64_t kIntMax = 1024;

    Value() : v_(false) {}
    static Value boolean(bool b) { return Value(Repr{b}); }
    static Value integer(std::int64_t i);
    static Value set(SmallSet s) { return Value(Repr{s}); }

    Kind kind() const { return static_cast<Kind>(v_.index()); }
    bool is_bool() const { return kind() == Kind::boolean; }
    bool is_int() const { return kind() == Kind::integer; }
    bool is_set() const { return kind() == Kind::set; }

    bool as_bool() const { return std::get<bool>(v_); }
    std::int64_t as_int() const { return std::get<std::int64_t>(v_); }
    SmallSet as_set() const { return std::get<SmallSet>(v_); }

    std::string to_string() const;
    std::size_t hash() const;

    // Booleans before integers before sets; natural order inside each kind.
    std::strong_ordering operator<=>(const Value& o) const;
    bool operator==(const Value& o) const { return v_ == o.v_; }

private:
    using Repr = std::variant<bool, std::int64_t, SmallSet>;
    explicit Value(Repr r) : v_(r) {}
    Repr v_;
};

inline Value vtrue() { return Value::boolean(true); }
inline Value vfalse() { return Value::boolean(false); }
inline Value vint(std::int64_t i) { return Value::integer(i); }
inline Value vset(std::initializer_list<int> e) { return Value::set(SmallSet::of(e)); }

/// Sorted, duplicate-free list of values.
using Domain = std::vector<Value>;

Domain make_domain(std::vector<Value> values);
Domain int_range(std::int64_t lo, std::int64_t hi);
Domain bool_domain();
/// All subsets of `universe`.
Domain powerset_domain(SmallSet universe);

/// Assignable location: a base variable followed by zero or more index values.
struct LValue {
    std::string base;
    std::vector<Value> indices;

    static LValue var(std::string name) { return LValue{std::move(name), {}}; }
    LValue indexed(Value i) const;
    /// The l-value this one indexes into; requires `!indices.empty()`.
    LValue parent() const;
    bool is_base() const { return indices.empty(); }
    /// True if `this` equals `other` or is an array prefix of it.
    bool is_prefix_of(const LValue& other) const;

    std::string to_string() const;
    auto operator<=>(const LValue&) const = default;
    bool operator==(const LValue&) const = default;
};

struct LValueHash {
    std::size_t operator()(const LValue& lv) const;
};

} // namespace rgk

template <>
struct std::hash<rgk::Value> {
    std::size_t operator()(const rgk::Value& v) const { return v.hash(); }
};
