#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "rgk/dsl.hh"

namespace rgk::dsl {

ParseError::ParseError(Pos p, std::string msg, std::vector<std::string> exp)
    : Error(std::to_string(p.line) + ":" + std::to_string(p.col) + ": " + msg), pos(p), message(std::move(msg)), expected(std::move(exp))
{
}

std::string ParseError::render(const std::string& source, const std::string& file) const
{
    std::ostringstream os;
    if (!file.empty())
        os << file << ":";
    os << pos.line << ":" << pos.col << ": error: " << message;
    if (!expected.empty()) {
        os << " (expected ";
        for (std::size_t i = 0; i < expected.size(); ++i)
            os << (i ? ", " : "") << "'" << expected[i] << "'";
        os << ")";
    }
    os << "\n";
    std::istringstream in(source);
    std::string line;
    for (int n = 1; std::getline(in, line); ++n)
        if (n == pos.line) {
            os << "  " << line << "\n  " << std::string(static_cast<std::size_t>(std::max(0, pos.col - 1)), ' ') << "^\n";
            break;
        }
    return os.str();
}

namespace {

// ---------------------------------------------------------------- lexer

enum class Tok { ident, integer, string, punct, end };

struct Token {
    Tok kind = Tok::end;
    std::string text;
    bool primed = false;
    std::int64_t number = 0;
    Pos pos;
    /// No whitespace between this token and the previous one.
    bool glued = false;
};

const char* const kPuncts[] = {":=", "..", "->", "/\\", "\\/", "||", "==", "!=", "<=", ">=", ";", ":", "{", "}", "[",
                               "]",  "(",  ")",  "<",   ">",   ",",  "=",  "+",  "-",  "*",  "!", "|", "."};

std::vector<Token> lex(const std::string& src)
{
    std::vector<Token> out;
    std::size_t i = 0;
    int line = 1, col = 1;
    bool glued = false;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k, ++i) {
            if (src[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };
    while (i < src.size()) {
        const char c = src[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            glued = false;
            continue;
        }
        if (c == '#' || (c == '/' && i + 1 < src.size() && src[i + 1] == '/')) {
            while (i < src.size() && src[i] != '\n')
                advance(1);
            glued = false;
            continue;
        }
        Token t;
        t.pos = {line, col};
        t.glued = glued;
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_'))
                ++j;
            t.kind = Tok::ident;
            t.text = src.substr(i, j - i);
            advance(j - i);
            if (i < src.size() && src[i] == '\'') {
                t.primed = true;
                advance(1);
            }
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j])))
                ++j;
            t.kind = Tok::integer;
            t.text = src.substr(i, j - i);
            if (t.text.size() > 12)
                throw ParseError(t.pos, "integer literal too large");
            t.number = std::stoll(t.text);
            advance(j - i);
        } else if (c == '"') {
            std::size_t j = i + 1;
            while (j < src.size() && src[j] != '"' && src[j] != '\n')
                ++j;
            if (j >= src.size() || src[j] != '"')
                throw ParseError(t.pos, "unterminated string");
            t.kind = Tok::string;
            t.text = src.substr(i + 1, j - i - 1);
            advance(j + 1 - i);
        } else {
            bool found = false;
            for (const char* p : kPuncts) {
                const std::size_t n = std::char_traits<char>::length(p);
                if (src.compare(i, n, p) == 0) {
                    t.kind = Tok::punct;
                    t.text = p;
                    advance(n);
                    found = true;
                    break;
                }
            }
            if (!found)
                throw ParseError(t.pos, std::string("unexpected character '") + c + "'");
        }
        out.push_back(std::move(t));
        glued = true;
    }
    Token end;
    end.pos = {line, col};
    out.push_back(end);
    return out;
}

const std::set<std::string> kStatement = {"var", "arr", "set", "rel", "cmd", "check"};
const std::set<std::string> kReserved = {
    "var", "arr", "set", "rel", "cmd", "check", "bot", "top", "nil", "term", "idle", "fair", "pi", "eps", "alpha", "test", "pgm", "env",
    "assert", "guar", "rely", "post", "atomic", "opt", "fin", "om", "if", "then", "else", "fi", "while", "do", "od", "cas", "mu", "nu",
    "true", "false", "in", "notin", "subset", "subseteq", "union", "inter", "and", "or", "not", "with", "depth", "engine", "expect",
    "under", "from", "satisfies", "bool", "subsets", "family"};

// ---------------------------------------------------------------- parser

struct ExprFlags {
    bool no_gt = false;   ///< '>' closes an angle-bracketed predicate
    bool no_conn = false; ///< '/\' and '\/' belong to the enclosing command
};

class Parser {
public:
    explicit Parser(const std::string& text) : toks_(lex(text)) {}

    Script script()
    {
        Script s;
        while (!at_end()) {
            const Token& t = peek();
            if (t.kind != Tok::ident || !kStatement.count(t.text))
                fail("expected a declaration or goal", {"var", "arr", "set", "rel", "cmd", "check"});
            const std::string kw = next().text;
            if (kw == "var") {
                VarDecl d;
                d.pos = peek().pos;
                d.name = fresh_name();
                expect_word("in");
                d.domain = domain();
                s.vars.push_back(std::move(d));
            } else if (kw == "arr") {
                VarDecl d;
                d.pos = peek().pos;
                d.name = fresh_name();
                expect("[");
                d.index = domain();
                expect("]");
                expect_word("in");
                d.domain = domain();
                s.vars.push_back(std::move(d));
            } else if (kw == "set" || kw == "rel") {
                const Pos pos = peek().pos;
                std::string name = fresh_name();
                expect(":=");
                NamedPred np{std::move(name), expr({}), pos};
                (kw == "set" ? s.sets : s.rels).push_back(std::move(np));
            } else if (kw == "cmd") {
                const Pos pos = peek().pos;
                std::string name = fresh_name();
                expect(":=");
                s.cmds.push_back(NamedCmd{std::move(name), cmd(), pos});
            } else {
                s.goals.push_back(goal());
            }
            expect(";");
        }
        return s;
    }

private:
    // ------------------------------------------------------------ tokens

    const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
    const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
    bool at_end() const { return peek().kind == Tok::end; }
    bool is(const char* p, std::size_t k = 0) const { return peek(k).kind == Tok::punct && peek(k).text == p; }
    bool is_word(const char* w, std::size_t k = 0) const { return peek(k).kind == Tok::ident && !peek(k).primed && peek(k).text == w; }
    bool accept(const char* p)
    {
        if (!is(p))
            return false;
        next();
        return true;
    }
    bool accept_word(const char* w)
    {
        if (!is_word(w))
            return false;
        next();
        return true;
    }

    [[noreturn]] void fail(const std::string& msg, std::vector<std::string> expected = {}) const
    {
        throw ParseError(peek().pos, msg + (at_end() ? " at end of input" : " near '" + peek().text + "'"), std::move(expected));
    }

    void expect(const char* p)
    {
        if (!accept(p))
            fail(std::string("expected '") + p + "'", {p});
    }
    void expect_word(const char* w)
    {
        if (!accept_word(w))
            fail(std::string("expected '") + w + "'", {w});
    }

    std::string ident()
    {
        if (peek().kind != Tok::ident || peek().primed)
            fail("expected an identifier", {"identifier"});
        return next().text;
    }

    std::string fresh_name()
    {
        if (peek().kind == Tok::ident && kReserved.count(peek().text))
            fail("'" + peek().text + "' is a reserved word");
        return ident();
    }

    /// word ("-" word)*, with no spaces, e.g. seq-assoc
    std::string dashed()
    {
        std::string s = ident();
        while (is("-") && peek().glued && peek(1).kind == Tok::ident && peek(1).glued) {
            next();
            s += "-" + next().text;
        }
        return s;
    }

    std::int64_t integer()
    {
        const bool neg = accept("-");
        if (peek().kind != Tok::integer)
            fail("expected an integer", {"integer"});
        const std::int64_t v = next().number;
        return neg ? -v : v;
    }

    // ------------------------------------------------------------ values

    Value make_int(std::int64_t v, Pos pos)
    {
        try {
            return Value::integer(v);
        } catch (const Error& e) {
            throw ParseError(pos, e.what());
        }
    }

    Value set_literal()
    {
        expect("{");
        std::uint64_t bits = 0;
        if (!is("}"))
            do {
                const Pos pos = peek().pos;
                const std::int64_t e = integer();
                if (e < 0 || e > SmallSet::kMaxElement)
                    throw ParseError(pos, "set element out of range 0.." + std::to_string(SmallSet::kMaxElement));
                bits |= std::uint64_t{1} << e;
            } while (accept(","));
        expect("}");
        return Value::set(SmallSet(bits));
    }

    Value value()
    {
        if (accept_word("true"))
            return vtrue();
        if (accept_word("false"))
            return vfalse();
        if (is("{"))
            return set_literal();
        const Pos pos = peek().pos;
        return make_int(integer(), pos);
    }

    Domain domain()
    {
        const Pos pos = peek().pos;
        if (accept_word("bool"))
            return bool_domain();
        if (accept_word("subsets")) {
            const Value u = set_literal();
            return powerset_domain(u.as_set());
        }
        if (accept("{")) {
            std::vector<Value> vs;
            do
                vs.push_back(value());
            while (accept(","));
            expect("}");
            return make_domain(std::move(vs));
        }
        if (peek().kind == Tok::integer || is("-")) {
            const std::int64_t lo = integer();
            expect("..");
            const std::int64_t hi = integer();
            if (hi < lo)
                throw ParseError(pos, "empty range");
            try {
                return int_range(lo, hi);
            } catch (const Error& e) {
                throw ParseError(pos, e.what());
            }
        }
        fail("expected a domain", {"{", "lo..hi", "bool", "subsets"});
    }

    // ------------------------------------------------------------ expressions

    bool conn_allowed(const ExprFlags& f) const { return !f.no_conn; }

    Expr expr(ExprFlags f)
    {
        Expr e = conj_expr(f);
        while ((conn_allowed(f) && is("\\/")) || is_word("or")) {
            next();
            e = Expr::binary(e, BinaryOp::logical_or, conj_expr(f));
        }
        return e;
    }

    Expr conj_expr(ExprFlags f)
    {
        Expr e = not_expr(f);
        while ((conn_allowed(f) && is("/\\")) || is_word("and")) {
            next();
            e = Expr::binary(e, BinaryOp::logical_and, not_expr(f));
        }
        return e;
    }

    Expr not_expr(ExprFlags f)
    {
        if (accept("!") || accept_word("not"))
            return Expr::unary(UnaryOp::logical_not, not_expr(f));
        return cmp_expr(f);
    }

    std::optional<BinaryOp> cmp_op(ExprFlags f) const
    {
        const Token& t = peek();
        if (t.kind == Tok::punct) {
            if (t.text == "=")
                return BinaryOp::eq;
            if (t.text == "!=")
                return BinaryOp::ne;
            if (t.text == "<")
                return BinaryOp::lt;
            if (t.text == "<=")
                return BinaryOp::le;
            if (t.text == ">" && !f.no_gt)
                return BinaryOp::gt;
            if (t.text == ">=")
                return BinaryOp::ge;
        } else if (t.kind == Tok::ident && !t.primed) {
            if (t.text == "in")
                return BinaryOp::member;
            if (t.text == "notin")
                return BinaryOp::not_member;
            if (t.text == "subset")
                return BinaryOp::strict_subset;
            if (t.text == "subseteq")
                return BinaryOp::subseteq;
        }
        return std::nullopt;
    }

    Expr cmp_expr(ExprFlags f)
    {
        Expr e = add_expr(f);
        if (auto op = cmp_op(f)) {
            next();
            e = Expr::binary(e, *op, add_expr(f));
        }
        return e;
    }

    Expr add_expr(ExprFlags f)
    {
        Expr e = unary_expr(f);
        while (true) {
            BinaryOp op;
            if (is("+"))
                op = BinaryOp::add;
            else if (is("-"))
                op = BinaryOp::sub;
            else if (is_word("union"))
                op = BinaryOp::set_union;
            else if (is_word("inter"))
                op = BinaryOp::set_inter;
            else
                return e;
            next();
            e = Expr::binary(e, op, unary_expr(f));
        }
    }

    Expr unary_expr(ExprFlags f)
    {
        if (is("-")) {
            if (peek(1).kind == Tok::integer && peek(1).glued) {
                const Pos pos = peek().pos;
                next();
                return Expr::constant(make_int(-next().number, pos));
            }
            next();
            return Expr::unary(UnaryOp::negate, unary_expr(f));
        }
        return primary_expr();
    }

    Expr primary_expr()
    {
        const Token& t = peek();
        if (t.kind == Tok::integer) {
            const Pos pos = t.pos;
            return Expr::constant(make_int(next().number, pos));
        }
        if (is_word("true") || is_word("false") || is("{"))
            return Expr::constant(value());
        if (accept("(")) {
            Expr e = expr({});
            expect(")");
            return e;
        }
        accept("*");
        if (peek().kind == Tok::ident && !kReserved.count(peek().text))
            return Expr::deref(lvexpr());
        fail("expected an expression", {"integer", "true", "false", "{", "(", "identifier"});
    }

    LvExpr lvexpr()
    {
        const Token& t = peek();
        if (t.kind != Tok::ident)
            fail("expected an l-value", {"identifier"});
        next();
        LvExpr lv = LvExpr::variable(t.text, t.primed);
        while (accept("[")) {
            Expr i = expr({});
            expect("]");
            lv = LvExpr::array_index(lv, i);
        }
        return lv;
    }

    /// Constant l-value such as x or a[0].
    LValue lvalue()
    {
        LValue lv = LValue::var(ident());
        while (accept("[")) {
            lv = lv.indexed(value());
            expect("]");
        }
        return lv;
    }

    // ------------------------------------------------------------ predicates

    PredRef set_ref()
    {
        PredRef r;
        r.pos = peek().pos;
        if (accept("{")) {
            r.pred = expr({});
            expect("}");
        } else {
            r.name = ident();
        }
        return r;
    }

    PredRef rel_ref()
    {
        PredRef r;
        r.pos = peek().pos;
        if (accept("<")) {
            r.pred = expr({.no_gt = true});
            expect(">");
        } else {
            r.name = ident();
        }
        return r;
    }

    PredRef bracket_ref()
    {
        PredRef r;
        r.pos = peek().pos;
        if (accept("[")) {
            r.pred = expr({});
            expect("]");
        } else {
            r.name = ident();
        }
        return r;
    }

    // ------------------------------------------------------------ commands

    CmdAst node(CmdAst::Kind k, Pos pos, std::vector<CmdAst> kids = {})
    {
        CmdAst c;
        c.kind = k;
        c.pos = pos;
        c.kids = std::move(kids);
        return c;
    }

    CmdAst cmd()
    {
        CmdAst c = par_cmd();
        while (is("|")) {
            const Pos pos = next().pos;
            c = node(CmdAst::Kind::choice, pos, {std::move(c), par_cmd()});
        }
        return c;
    }

    CmdAst par_cmd()
    {
        CmdAst c = conj_cmd();
        while (is("||")) {
            const Pos pos = next().pos;
            c = node(CmdAst::Kind::par, pos, {std::move(c), conj_cmd()});
        }
        return c;
    }

    CmdAst conj_cmd()
    {
        CmdAst c = seq_cmd();
        while (is("/\\")) {
            const Pos pos = next().pos;
            c = node(CmdAst::Kind::conj, pos, {std::move(c), seq_cmd()});
        }
        return c;
    }

    bool seq_continues() const
    {
        if (!is(";"))
            return false;
        const Token& n = peek(1);
        if (n.kind == Tok::end)
            return false;
        return !(n.kind == Tok::ident && kStatement.count(n.text));
    }

    CmdAst seq_cmd()
    {
        CmdAst c = frame_cmd();
        while (seq_continues()) {
            const Pos pos = next().pos;
            c = node(CmdAst::Kind::seq, pos, {std::move(c), frame_cmd()});
        }
        return c;
    }

    /// Tries `lv, lv, ... :`; restores the position when it does not match.
    std::optional<std::vector<LValue>> frame_prefix()
    {
        if (peek().kind != Tok::ident || peek().primed || kReserved.count(peek().text))
            return std::nullopt;
        const std::size_t save = pos_;
        try {
            std::vector<LValue> lvs;
            do
                lvs.push_back(lvalue());
            while (accept(","));
            if (is(":")) {
                next();
                return lvs;
            }
        } catch (const ParseError&) {
        }
        pos_ = save;
        return std::nullopt;
    }

    CmdAst frame_cmd()
    {
        const Pos pos = peek().pos;
        if (auto lvs = frame_prefix()) {
            CmdAst c = node(CmdAst::Kind::frame, pos, {frame_cmd()});
            c.lvalues = std::move(*lvs);
            return c;
        }
        return unit_cmd();
    }

    bool assignment_ahead() const
    {
        if (peek().kind != Tok::ident || peek().primed || kReserved.count(peek().text))
            return false;
        std::size_t k = 1;
        int depth = 0;
        while (true) {
            const Token& t = peek(k);
            if (t.kind == Tok::end)
                return false;
            if (t.kind == Tok::punct && t.text == "[")
                ++depth;
            else if (t.kind == Tok::punct && t.text == "]")
                --depth;
            else if (depth == 0)
                return t.kind == Tok::punct && t.text == ":=";
            ++k;
        }
    }

    CmdAst unit_cmd()
    {
        using K = CmdAst::Kind;
        const Token t = peek();
        const Pos pos = t.pos;
        if (t.kind == Tok::punct) {
            if (accept("(")) {
                CmdAst c = cmd();
                expect(")");
                return c;
            }
            if (accept("[")) {
                CmdAst c = node(K::eval, pos);
                c.exprs.push_back(expr({}));
                expect("->");
                c.literal = value();
                expect("]");
                return c;
            }
        }
        if (t.kind != Tok::ident || t.primed)
            fail("expected a command", {"(", "[", "identifier", "bot", "top", "nil", "test", "pgm", "if", "while"});
        static const std::pair<const char*, K> atoms[] = {{"bot", K::bot},   {"top", K::top}, {"nil", K::nil}, {"term", K::term},
                                                          {"idle", K::idle}, {"fair", K::fair}, {"pi", K::pi},   {"eps", K::eps},
                                                          {"alpha", K::alpha}};
        for (const auto& [w, k] : atoms)
            if (t.text == w) {
                next();
                return node(k, pos);
            }
        static const std::pair<const char*, K> angle[] = {{"test", K::test}, {"pgm", K::pgm}, {"env", K::env}, {"guar", K::guar}, {"rely", K::rely}};
        for (const auto& [w, k] : angle)
            if (t.text == w) {
                next();
                CmdAst c = node(k, pos);
                c.arg = rel_ref();
                return c;
            }
        static const std::pair<const char*, K> bracket[] = {{"post", K::post}, {"atomic", K::atomic}, {"opt", K::opt}};
        for (const auto& [w, k] : bracket)
            if (t.text == w) {
                next();
                CmdAst c = node(k, pos);
                c.arg = bracket_ref();
                return c;
            }
        if (accept_word("assert")) {
            CmdAst c = node(K::assertion, pos);
            c.arg = set_ref();
            return c;
        }
        if (t.text == "fin" || t.text == "om") {
            next();
            expect("(");
            CmdAst c = node(t.text == "fin" ? K::fin : K::om, pos, {cmd()});
            expect(")");
            return c;
        }
        if (accept_word("if")) {
            CmdAst c = node(K::cond, pos);
            c.exprs.push_back(expr({}));
            expect_word("then");
            c.kids.push_back(cmd());
            expect_word("else");
            c.kids.push_back(cmd());
            expect_word("fi");
            return c;
        }
        if (accept_word("while")) {
            CmdAst c = node(K::loop, pos);
            c.exprs.push_back(expr({}));
            expect_word("do");
            c.kids.push_back(cmd());
            expect_word("od");
            return c;
        }
        if (accept_word("cas")) {
            CmdAst c = node(K::cas, pos);
            expect("(");
            c.lvalues.push_back(lvalue());
            expect(",");
            c.exprs.push_back(expr({}));
            expect(",");
            c.exprs.push_back(expr({}));
            expect(")");
            return c;
        }
        if (t.text == "mu" || t.text == "nu") {
            next();
            CmdAst c = node(t.text == "mu" ? K::mu : K::nu, pos);
            c.name = fresh_name();
            expect(".");
            c.kids.push_back(cmd());
            return c;
        }
        if (kReserved.count(t.text))
            fail("expected a command", {"identifier"});
        if (assignment_ahead()) {
            CmdAst c = node(K::assign, pos);
            c.lvalues.push_back(lvalue());
            expect(":=");
            c.exprs.push_back(expr({.no_conn = true}));
            return c;
        }
        next();
        CmdAst c = node(K::name, pos);
        c.name = t.text;
        return c;
    }

    // ------------------------------------------------------------ goals

    Outcome outcome_word()
    {
        const Pos pos = peek().pos;
        const std::string w = dashed();
        if (w == "holds" || w == "hold")
            return Outcome::holds;
        if (w == "fails" || w == "fail")
            return Outcome::fails;
        if (w == "inconclusive")
            return Outcome::inconclusive;
        if (w == "premise-violation")
            return Outcome::premise_violation;
        if (w == "soundness-alarm")
            return Outcome::soundness_alarm;
        throw ParseError(pos, "unknown outcome '" + w + "'", {"holds", "fails", "inconclusive", "premise-violation", "soundness-alarm"});
    }

    Binding binding()
    {
        Binding b;
        b.pos = peek().pos;
        b.key = ident();
        expect("=");
        if (b.key == "universe" || b.key == "i") {
            b.kind = Binding::Kind::value;
            b.value = value();
        } else if (b.key == "order" || b.key == "rely" || b.key == "guarantee") {
            b.kind = Binding::Kind::word;
            b.word = ident();
        } else if (b.key == "z") {
            b.kind = Binding::Kind::expr;
            b.expr = expr({.no_conn = true});
        } else if (is("{")) {
            b.kind = Binding::Kind::set;
            b.ref = set_ref();
        } else if (is("<")) {
            b.kind = Binding::Kind::rel;
            b.ref = rel_ref();
        } else if (accept_word("family")) {
            b.kind = Binding::Kind::family;
            expect("(");
            if (!is(")"))
                do
                    b.family.push_back(set_ref());
                while (accept(","));
            expect(")");
        } else {
            b.kind = Binding::Kind::cmd;
            b.cmd = cmd();
        }
        return b;
    }

    std::vector<Binding> with_clause(bool required)
    {
        std::vector<Binding> out;
        if (!accept_word("with")) {
            if (required)
                fail("expected 'with'", {"with"});
            return out;
        }
        do
            out.push_back(binding());
        while (accept(","));
        return out;
    }

    Goal goal()
    {
        using K = Goal::Kind;
        Goal g;
        g.pos = peek().pos;
        if (peek().kind == Tok::string)
            g.label = next().text;
        const Pos kpos = peek().pos;
        const std::string kind = dashed();
        if (kind == "refine" || kind == "equal") {
            g.kind = kind == "refine" ? K::refine : K::equal;
            g.cmds.push_back(cmd());
            expect(kind == "refine" ? ">=" : "==");
            g.cmds.push_back(cmd());
        } else if (kind == "triple") {
            g.kind = K::triple;
            g.preds.push_back(set_ref());
            g.cmds.push_back(cmd());
            g.preds.push_back(set_ref());
        } else if (kind == "establish") {
            g.kind = K::establish;
            g.preds.push_back(set_ref());
            g.preds.push_back(rel_ref());
            expect("[");
            g.expr = expr({});
            expect("->");
            g.literal = value();
            expect("]");
            g.preds.push_back(set_ref());
        } else if (kind == "stable") {
            g.kind = K::stable;
            g.preds.push_back(set_ref());
            expect_word("under");
            g.preds.push_back(rel_ref());
        } else if (kind == "tolerates") {
            g.kind = K::tolerates;
            g.preds.push_back(rel_ref());
            expect_word("under");
            g.preds.push_back(rel_ref());
            expect_word("from");
            g.preds.push_back(set_ref());
        } else if (kind == "guarantee") {
            g.kind = K::guarantee;
            g.cmds.push_back(cmd());
            expect_word("satisfies");
            g.preds.push_back(rel_ref());
        } else if (kind == "law") {
            g.kind = K::law;
            g.law = dashed();
            g.with = with_clause(false);
        } else if (kind == "conditional") {
            g.kind = K::conditional;
            g.expr = expr({});
            g.with = with_clause(true);
        } else if (kind == "while") {
            g.kind = K::loop;
            g.expr = expr({});
            expect_word("do");
            g.cmds.push_back(cmd());
            expect_word("od");
            g.with = with_clause(true);
        } else if (kind == "recursion") {
            g.kind = K::recursion;
            g.binder = fresh_name();
            expect(".");
            g.cmds.push_back(cmd());
            g.with = with_clause(true);
        } else if (kind == "remove") {
            g.kind = K::remove;
            g.with = with_clause(false);
        } else if (kind == "hoare-loop") {
            g.kind = K::hoare_loop;
        } else if (kind == "fairness") {
            g.kind = K::fairness;
        } else {
            throw ParseError(kpos, "unknown goal '" + kind + "'",
                             {"refine", "equal", "triple", "establish", "stable", "tolerates", "guarantee", "law", "conditional", "while",
                              "recursion", "remove", "hoare-loop", "fairness"});
        }
        while (true) {
            if (accept_word("depth")) {
                const Pos pos = peek().pos;
                const std::int64_t d = integer();
                if (d < 0)
                    throw ParseError(pos, "depth must be non-negative");
                g.depth = static_cast<std::size_t>(d);
            } else if (accept_word("engine")) {
                const Pos pos = peek().pos;
                auto e = parse_engine(ident());
                if (!e)
                    throw ParseError(pos, "unknown engine", {"enum", "graph"});
                g.engine = *e;
            } else if (accept_word("expect")) {
                g.expect = outcome_word();
            } else {
                break;
            }
        }
        return g;
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

} // namespace

Script parse(const std::string& text)
{
    Parser p(text);
    return p.script();
}

} // namespace rgk::dsl
