#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rgk/command.hh"
#include "rgk/error.hh"
#include "rgk/expr.hh"
#include "rgk/refinement.hh"
#include "rgk/value.hh"

namespace rgk::dsl {

struct Pos {
    int line = 1;
    int col = 1;
    bool operator==(const Pos&) const = default;
};

/// Syntax or resolution error with a source position.
class ParseError : public Error {
public:
    ParseError(Pos pos, std::string msg, std::vector<std::string> expected = {});

    Pos pos;
    std::string message;
    std::vector<std::string> expected;

    /// "line:col: message" followed by the offending source line and a caret.
    std::string render(const std::string& source, const std::string& file = "") const;
};

/// A named set/relation, or an inline predicate.
struct PredRef {
    std::string name;
    std::optional<Expr> pred;
    Pos pos;

    bool operator==(const PredRef& o) const { return name == o.name && pred == o.pred; }
};

struct CmdAst {
    enum class Kind {
        bot, top, nil, term, idle, fair, pi, eps, alpha,
        test, pgm, env, assertion, guar, rely, post, atomic, opt,
        frame, seq, choice, par, conj, fin, om, cond, loop, eval,
        name, assign, cas, mu, nu,
    };

    Kind kind = Kind::nil;
    PredRef arg;                 ///< test .. opt
    std::vector<LValue> lvalues; ///< frame, assign (one), cas (one)
    std::vector<CmdAst> kids;
    std::vector<Expr> exprs;     ///< guard, evaluated expression, assigned value, cas operands
    Value literal;               ///< eval target
    std::string name;            ///< name, binder of mu/nu
    Pos pos;

    bool operator==(const CmdAst& o) const;
};

struct VarDecl {
    std::string name;
    std::optional<Domain> index; ///< present for arrays
    Domain domain;
    Pos pos;
    bool operator==(const VarDecl& o) const { return name == o.name && index == o.index && domain == o.domain; }
};

struct NamedPred {
    std::string name;
    Expr pred;
    Pos pos;
    bool operator==(const NamedPred& o) const { return name == o.name && pred == o.pred; }
};

struct NamedCmd {
    std::string name;
    CmdAst cmd;
    Pos pos;
    bool operator==(const NamedCmd& o) const { return name == o.name && cmd == o.cmd; }
};

/// Value bound to a metavariable in `with` clauses.
struct Binding {
    enum class Kind { set, rel, cmd, expr, family, value, word };
    std::string key;
    Kind kind = Kind::cmd;
    PredRef ref;
    std::vector<PredRef> family;
    std::optional<CmdAst> cmd;
    std::optional<Expr> expr;
    Value value;
    std::string word;
    Pos pos;

    bool operator==(const Binding& o) const;
};

struct Goal {
    enum class Kind {
        refine, equal, triple, establish, stable, tolerates, guarantee, law,
        conditional, loop, recursion, remove, hoare_loop, fairness,
    };

    Kind kind = Kind::refine;
    std::string label;
    std::vector<CmdAst> cmds;
    std::vector<PredRef> preds;
    std::optional<Expr> expr;
    Value literal;
    std::string law;
    std::string binder; ///< recursion parameter name
    std::vector<Binding> with;
    std::optional<std::size_t> depth;
    std::optional<Engine> engine;
    Outcome expect = Outcome::holds;
    Pos pos;

    bool operator==(const Goal& o) const;
};

std::string to_string(Goal::Kind k);

struct Script {
    std::vector<VarDecl> vars;
    std::vector<NamedPred> sets, rels;
    std::vector<NamedCmd> cmds;
    std::vector<Goal> goals;
    bool operator==(const Script&) const = default;
};

Script parse(const std::string& text);
/// Canonical text; parse(print(s)) == s.
std::string print(const Script& s);
std::string print(const CmdAst& c);
std::string print_expr(const Expr& e);

struct RunOptions {
    /// Overrides the per-kind default depth of goals without their own
    /// (3, or 5 for hoare-loop and 8 for remove).
    std::optional<std::size_t> depth;
    std::optional<Engine> engine;
    std::uint64_t seed = 1;
    std::size_t jobs = 1;
    bool timings = false;
    /// Random bindings per law for `law` goals without explicit bindings.
    std::size_t law_samples = 50;
    /// Extra law goals appended after the script's own ("all" or ids).
    std::vector<std::string> laws;
};

struct GoalResult {
    std::string id;
    std::string kind;
    Verdict verdict;
    Outcome expected = Outcome::holds;
    std::vector<std::string> details;
    /// Space the counterexample ranges over.
    std::shared_ptr<const StateSpace> space;

    bool as_expected() const { return verdict.outcome == expected; }
};

struct Report {
    std::uint64_t seed = 0;
    bool timings = false;
    std::vector<GoalResult> goals;

    bool all_as_expected() const;
};

/// Resolves names and runs every goal. Throws ParseError on unresolved names
/// or domain mismatches.
Report run(const Script& script, const RunOptions& opts);

std::string render_json(const Report& r);
std::string render_human(const Report& r);

} // namespace rgk::dsl
