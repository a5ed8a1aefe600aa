#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "rgk/state_model.hh"

namespace rgk {

/// Abstract syntax of the primitive wide-spectrum language.
///
/// Fixed points use de Bruijn indices: `var(0)` refers to the nearest
/// enclosing `mu`/`nu`. Two alpha-equivalent commands are therefore
/// structurally equal, which lets the engines share memoised denotations
/// between independently built copies of the same derived form.
///
/// Commands are immutable and cheap to copy.
class Command {
public:
    enum class Kind { bot, top, test, pgm, env, choice, seq, par, conj, mu, nu, var };

    static Command bot();
    static Command top();
    static Command test(StateSet p);
    static Command pgm(StateRel r);
    static Command env(StateRel r);
    /// n-ary choice, flattened; the empty choice is `bot`, a singleton is its element.
    static Command choice(std::vector<Command> cs);
    static Command seq(Command c, Command d);
    static Command par(Command c, Command d);
    static Command conj(Command c, Command d);
    /// Least fixed point of `body`, which refers to the bound command as `var(0)`.
    static Command mu(Command body, std::string hint = "x");
    /// Greatest fixed point.
    static Command nu(Command body, std::string hint = "x");
    static Command var(std::size_t index);

    Kind kind() const;
    const StateSet& set() const;
    const StateRel& rel() const;
    const std::vector<Command>& children() const;
    const Command& body() const { return children().front(); }
    const Command& left() const { return children()[0]; }
    const Command& right() const { return children()[1]; }
    std::size_t var_index() const;
    const std::string& hint() const;

    /// One more than the largest free de Bruijn index; 0 when closed.
    std::size_t free_bound() const;
    bool closed() const { return free_bound() == 0; }
    /// Number of constructors.
    std::size_t size() const;
    std::size_t hash() const;

    bool operator==(const Command& o) const;
    /// Identity of the shared node, for memo tables.
    const void* id() const { return n_.get(); }

    std::string to_string() const;

private:
    struct Node;
    explicit Command(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
    static Command make(Node n);
    std::shared_ptr<const Node> n_;
};

struct CommandHash {
    std::size_t operator()(const Command& c) const { return c.hash(); }
};

/// Adds `by` to every free index >= `cutoff`.
Command shift(const Command& c, std::ptrdiff_t by, std::size_t cutoff = 0);
/// Replaces `var(0)` in `body` with `arg` (shifted appropriately) and
/// lowers the remaining free indices by one: the application `f arg`
/// of the function `f` whose body is `body`.
Command substitute(const Command& body, const Command& arg);
/// Kleene approximant f^n(bot) of the function with body `body`.
Command unfold_from_bot(const Command& body, std::size_t n);

/// True if every constructor is a primitive or a fixed point and every
/// variable is bound, i.e. `c` is ready for denotation.
bool is_expanded(const Command& c);

} // namespace rgk
