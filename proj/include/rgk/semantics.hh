#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "rgk/command.hh"
#include "rgk/state_model.hh"
#include "rgk/trace.hh"

namespace rgk {

enum class Engine { enumerate, graph };

std::string to_string(Engine e);
std::optional<Engine> parse_engine(const std::string& s);

/// Default cap on Kleene iterations: 10 * (depth + 1) * |states|.
std::size_t default_fixpoint_cap(std::size_t depth, std::size_t states);

/// Executable definition: denotations as explicit trace sets.
/// Throws ResourceLimit when more than `max_traces` traces are produced.
TraceSet denote_enum(const StateSpace& space, const Command& c, std::size_t depth, std::size_t max_traces = 2'000'000);

using NodeId = std::uint32_t;
using DenId = std::uint32_t;

/// Hash-consed trie of traces. A node stands for the incomplete trace
/// ending there; the flags add the terminated and aborted traces with the
/// same steps. Equal trace sets get equal node ids.
class GraphEngine {
public:
    static constexpr NodeId kEmpty = 0;
    static constexpr NodeId kAbort = 1;
    static constexpr NodeId kTerm = 2;

    struct Node {
        bool abort = false;
        bool term = false;
        std::vector<std::pair<std::uint32_t, NodeId>> kids; // sorted by step key
        bool operator==(const Node&) const = default;
    };

    GraphEngine(const StateSpace& space, std::size_t depth, std::size_t node_budget = 40'000'000);

    const StateSpace& space() const { return space_; }
    std::size_t depth() const { return depth_; }
    std::size_t node_count() const { return nodes_.size(); }
    const Node& node(NodeId n) const { return nodes_[n]; }

    /// Throws ResourceLimit when the node budget is exhausted.
    DenId denote(const Command& c);
    /// One root per start state.
    const std::vector<NodeId>& roots(DenId d) const { return dens_[d]; }

    bool covers(DenId c, DenId d);
    /// Shortest uncovered trace of `d`, least in trace order.
    std::optional<Trace> counterexample(DenId c, DenId d);
    /// A shortest trace with a program step outside `g`; aborting branches are not inspected.
    std::optional<Trace> guarantee_violation(DenId d, const StateRel& g);
    /// Final states of terminated traces starting in `from`.
    StateSet terminal_states(DenId d, const StateSet& from) const;
    /// Expands the denotation into an explicit trace set (small instances only).
    TraceSet traces(DenId d, std::size_t max_traces = 2'000'000) const;

private:
    struct NodeHash {
        const GraphEngine* g;
        std::size_t operator()(NodeId n) const;
    };
    struct NodeEq {
        const GraphEngine* g;
        bool operator()(NodeId a, NodeId b) const { return g->nodes_[a] == g->nodes_[b]; }
    };
    struct KeyHash {
        std::size_t operator()(const std::uint64_t& k) const { return std::hash<std::uint64_t>{}(k * 0x9e3779b97f4a7c15ULL); }
    };
    struct DenKey {
        Command cmd;
        std::vector<DenId> env;
        bool operator==(const DenKey& o) const { return env == o.env && cmd == o.cmd; }
    };
    struct DenKeyHash {
        std::size_t operator()(const DenKey& k) const;
    };
    struct VecHash {
        std::size_t operator()(const std::vector<NodeId>& v) const;
    };

    NodeId intern(Node n);
    DenId intern_den(std::vector<NodeId> roots);
    DenId eval(const Command& c, std::vector<DenId>& env);
    DenId eval_uncached(const Command& c, std::vector<DenId>& env);

    NodeId unite(NodeId a, NodeId b);
    NodeId par(NodeId a, NodeId b);
    NodeId conj(NodeId a, NodeId b);
    NodeId product(NodeId a, NodeId b, bool is_conj);
    NodeId seq(NodeId a, StateId at, std::size_t room, DenId d);
    NodeId truncate(NodeId a, std::size_t room);
    std::uint32_t dist(NodeId c, NodeId d);

    const StateSpace& space_;
    std::size_t depth_;
    std::size_t budget_;
    std::vector<Node> nodes_;
    std::vector<std::uint8_t> height_;
    std::unordered_set<NodeId, NodeHash, NodeEq> table_;
    std::vector<std::vector<NodeId>> dens_;
    std::unordered_map<std::vector<NodeId>, DenId, VecHash> den_table_;
    std::unordered_map<DenKey, DenId, DenKeyHash> den_memo_;
    std::unordered_map<std::uint64_t, NodeId, KeyHash> union_memo_, par_memo_, conj_memo_, trunc_memo_;
    struct PairHash {
        std::size_t operator()(const std::pair<std::uint64_t, std::uint64_t>& k) const
        {
            return KeyHash{}(k.first) ^ (KeyHash{}(k.second) << 1);
        }
    };
    std::unordered_map<std::pair<std::uint64_t, std::uint64_t>, NodeId, PairHash> seq_memo_;
    std::unordered_map<std::uint64_t, std::uint32_t, KeyHash> dist_memo_;
    DenId bot_ = 0;
    DenId top_ = 0;
};

/// Denotation through either engine, as an explicit trace set.
TraceSet denote(const StateSpace& space, const Command& c, std::size_t depth, Engine engine);
/// Both engines produce the same trace set.
bool engines_agree(const StateSpace& space, const Command& c, std::size_t depth);

} // namespace rgk
