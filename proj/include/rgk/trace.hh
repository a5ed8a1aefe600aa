#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "rgk/state_model.hh"

namespace rgk {

enum class Label : std::uint8_t { pi = 0, eps = 1 };
enum class Status : std::uint8_t { terminated = 0, aborted = 1, incomplete = 2 };

std::string to_string(Label l);
std::string to_string(Status s);

/// One transition. The pre-state is the post-state of the previous step
/// (or the trace start), so traces are chained by construction.
struct Step {
    Label label = Label::pi;
    StateId post = 0;

    /// Sort key used for trie children and trace ordering.
    std::uint32_t key() const { return post * 2 + static_cast<std::uint32_t>(label); }
    static Step from_key(std::uint32_t k) { return {static_cast<Label>(k & 1U), k >> 1}; }
    bool operator==(const Step&) const = default;
};

struct Trace {
    StateId start = 0;
    std::vector<Step> steps;
    Status status = Status::incomplete;

    std::size_t length() const { return steps.size(); }
    /// Pre-state of step `i`.
    StateId pre(std::size_t i) const { return i == 0 ? start : steps[i - 1].post; }
    StateId last() const { return steps.empty() ? start : steps.back().post; }
    Trace prefix(std::size_t len, Status st) const;
    /// True if `o`'s steps extend ours (not necessarily strictly).
    bool steps_prefix_of(const Trace& o) const;

    std::string to_string(const StateSpace& space) const;

    bool operator==(const Trace&) const = default;
    /// Shortest first, then start state, then steps by key, then status.
    std::strong_ordering operator<=>(const Trace& o) const;
};

/// Depth-bounded, prefix-closed trace set in normal form: every incomplete
/// prefix is present, the zero-step incomplete trace exists at every state,
/// and traces covered by an aborted trace are omitted.
class TraceSet {
public:
    TraceSet() = default;
    TraceSet(std::size_t states, std::size_t depth);

    std::size_t states() const { return states_; }
    std::size_t depth() const { return depth_; }

    /// Adds `t` (dropped if longer than the depth). Call normalize() afterwards.
    void add(Trace t);
    /// Restores the normal form.
    void normalize();

    bool contains(const Trace& t) const { return set_.count(t) > 0; }
    /// In the set, or some prefix of `t` (possibly `t` itself) is in the set as aborted.
    bool covers(const Trace& t) const;
    /// First trace of `o` (in trace order) that this set does not cover.
    std::optional<Trace> first_uncovered(const TraceSet& o) const;

    std::size_t size() const { return set_.size(); }
    auto begin() const { return set_.begin(); }
    auto end() const { return set_.end(); }

    /// Describes the first violated representation invariant, if any.
    std::optional<std::string> validate() const;

    bool operator==(const TraceSet& o) const { return set_ == o.set_; }

private:
    std::size_t states_ = 0;
    std::size_t depth_ = 0;
    std::set<Trace> set_;
};

} // namespace rgk
