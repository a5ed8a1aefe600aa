#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "rgk/value.hh"

namespace rgk {

/// Index of a state in the enumeration of a StateSpace.
using StateId = std::uint32_t;

/// Fixed-width bit vector; the carrier of StateSet rows.
class Bitset {
public:
    Bitset() = default;
    explicit Bitset(std::size_t n, bool fill = false);

    std::size_t size() const { return n_; }
    bool test(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1U; }
    void set(std::size_t i) { w_[i >> 6] |= std::uint64_t{1} << (i & 63); }
    void reset(std::size_t i) { w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
    std::size_t count() const;
    bool any() const;
    bool none() const { return !any(); }

    Bitset& operator|=(const Bitset& o);
    Bitset& operator&=(const Bitset& o);
    Bitset& subtract(const Bitset& o);
    Bitset complement() const;
    bool subset_of(const Bitset& o) const;
    bool intersects(const Bitset& o) const;

    template <typename F>
    void for_each(F&& f) const
    {
        for (std::size_t wi = 0; wi < w_.size(); ++wi) {
            std::uint64_t w = w_[wi];
            while (w) {
                int b = __builtin_ctzll(w);
                f(static_cast<std::size_t>(wi * 64 + b));
                w &= w - 1;
            }
        }
    }

    std::size_t hash() const;
    bool operator==(const Bitset&) const = default;

private:
    void trim();
    std::size_t n_ = 0;
    std::vector<std::uint64_t> w_;
};

/// Extensional set of states over a fixed enumeration of the state space.
class StateSet {
public:
    StateSet() = default;
    explicit StateSet(std::size_t n, bool fill = false) : bits_(n, fill) {}

    std::size_t universe_size() const { return bits_.size(); }
    bool contains(StateId s) const { return bits_.test(s); }
    void insert(StateId s) { bits_.set(s); }
    void erase(StateId s) { bits_.reset(s); }
    std::size_t count() const { return bits_.count(); }
    bool empty() const { return bits_.none(); }
    std::vector<StateId> members() const;

    StateSet unite(const StateSet& o) const;
    StateSet intersect(const StateSet& o) const;
    StateSet minus(const StateSet& o) const;
    StateSet complement() const;
    bool subset_of(const StateSet& o) const { return bits_.subset_of(o.bits_); }

    const Bitset& bits() const { return bits_; }
    std::size_t hash() const { return bits_.hash(); }
    bool operator==(const StateSet&) const = default;

private:
    Bitset bits_;
};

/// Extensional binary relation on states, stored as one bit row per pre-state.
class StateRel {
public:
    StateRel() = default;
    explicit StateRel(std::size_t n, bool fill = false) : rows_(n, Bitset(n, fill)) {}

    std::size_t universe_size() const { return rows_.size(); }
    bool contains(StateId a, StateId b) const { return rows_[a].test(b); }
    void insert(StateId a, StateId b) { rows_[a].set(b); }
    void erase(StateId a, StateId b) { rows_[a].reset(b); }
    const Bitset& row(StateId a) const { return rows_[a]; }
    std::size_t count() const;
    bool empty() const;

    StateRel unite(const StateRel& o) const;
    StateRel intersect(const StateRel& o) const;
    StateRel minus(const StateRel& o) const;
    StateRel complement() const;
    StateRel converse() const;
    bool subset_of(const StateRel& o) const;
    /// States that are related to themselves.
    StateSet reflexive_points() const;
    StateSet domain() const;
    /// States reachable from `from` in exactly one step.
    StateSet image(const StateSet& from) const;

    std::size_t hash() const;
    bool operator==(const StateRel&) const = default;

private:
    std::vector<Bitset> rows_;
};

struct LValueDecl {
    LValue lvalue;
    Domain domain;
};

/// Declaration of the finite state space: every l-value with its value domain.
class StateSpaceDecl {
public:
    static constexpr std::size_t kDefaultCap = 4096;

    StateSpaceDecl& add(LValue lv, Domain domain);
    StateSpaceDecl& add_var(const std::string& name, Domain domain) { return add(LValue::var(name), std::move(domain)); }
    /// Declares `name[i]` for every `i` in `index`, each with domain `domain`.
    StateSpaceDecl& add_array(const std::string& name, const Domain& index, const Domain& domain);

    const std::vector<LValueDecl>& entries() const { return entries_; }
    std::size_t cap = kDefaultCap;

private:
    std::vector<LValueDecl> entries_;
};

/// The enumerated state space. States are numbered in mixed radix with
/// the first declared l-value as the most significant digit.
class StateSpace {
public:
    explicit StateSpace(StateSpaceDecl decl);

    std::size_t size() const { return size_; }
    const std::vector<LValueDecl>& lvalues() const { return decl_.entries(); }
    std::optional<std::size_t> index_of(const LValue& lv) const;
    std::size_t require_index(const LValue& lv) const;
    /// True if `lv` is declared or is an array prefix of a declared l-value.
    bool is_declared_prefix(const LValue& lv) const;

    const Value& value(StateId s, std::size_t lv) const;
    const Value& value(StateId s, const LValue& lv) const { return value(s, require_index(lv)); }
    std::size_t digit(StateId s, std::size_t lv) const { return (s / stride_[lv]) % decl_.entries()[lv].domain.size(); }
    /// The state equal to `s` except at `lv`; nullopt if `v` lies outside the domain of `lv`.
    std::optional<StateId> with_value(StateId s, std::size_t lv, const Value& v) const;
    /// Looks up the state with the given value for each declared l-value.
    std::optional<StateId> state_of(const std::vector<Value>& values) const;

    /// Sorted `lvalue=value` strings.
    std::vector<std::string> describe(StateId s) const;
    std::string describe_inline(StateId s) const;

    StateSet none() const { return StateSet(size_); }
    StateSet all() const { return StateSet(size_, true); }
    StateSet singleton(StateId s) const;
    StateRel empty_rel() const { return StateRel(size_); }
    StateRel univ() const { return StateRel(size_, true); }
    StateRel identity() const;

    StateSet filter(const std::function<bool(StateId)>& pred) const;
    StateRel relation(const std::function<bool(StateId, StateId)>& pred) const;

    /// All values appearing in any declared domain, plus the booleans.
    const Domain& value_universe() const { return universe_; }

private:
    StateSpaceDecl decl_;
    std::size_t size_ = 0;
    std::vector<std::size_t> stride_;
    std::unordered_map<LValue, std::size_t, LValueHash> index_;
    std::vector<std::unordered_map<Value, std::size_t>> digit_of_;
    Domain universe_;
};

StateRel compose(const StateRel& r1, const StateRel& r2);
/// Pairs of `r` whose post-state lies in `p`.
StateRel range_restrict(const StateRel& r, const StateSet& p);
/// Pairs of `r` whose pre-state lies in `p`.
StateRel domain_restrict(const StateSet& p, const StateRel& r);
StateRel refl_trans_closure(const StateRel& r);
/// Pairs agreeing on every l-value in `vs`. Throws UndeclaredLValue.
StateRel identity_on(const StateSpace& space, const std::vector<LValue>& vs);
bool stable(const StateSet& p, const StateRel& r);
/// Smallest superset of `p` that is stable under `r`.
StateSet stable_closure(const StateSet& p, const StateRel& r);
bool tolerates(const StateRel& q, const StateRel& r, const StateSet& p);
bool transitive(const StateRel& r);

/// Binary relation on a finite carrier of values, e.g. a variant ordering.
class ValueOrder {
public:
    ValueOrder() = default;
    ValueOrder(Domain carrier, std::function<bool(const Value&, const Value&)> less);

    static ValueOrder less_than(Domain carrier);
    static ValueOrder strict_subset(Domain carrier);

    const Domain& carrier() const { return carrier_; }
    std::optional<std::size_t> index_of(const Value& v) const;
    bool less(const Value& a, const Value& b) const;
    /// Reflexive closure restricted to the carrier.
    bool less_eq(const Value& a, const Value& b) const;
    bool related(std::size_t i, std::size_t j) const { return rel_[i][j]; }
    void relate(std::size_t i, std::size_t j) { rel_[i][j] = true; }
    bool is_transitive() const;

private:
    Domain carrier_;
    std::vector<std::vector<bool>> rel_;
};

/// No infinite descending chain; on a finite carrier this is acyclicity,
/// with a reflexive pair counting as a cycle.
bool is_well_founded(const ValueOrder& order);

} // namespace rgk
