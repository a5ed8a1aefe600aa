#include <sstream>

#include "rgk/dsl.hh"

namespace rgk::dsl {

bool CmdAst::operator==(const CmdAst& o) const
{
    return kind == o.kind && arg == o.arg && lvalues == o.lvalues && kids == o.kids && exprs == o.exprs && literal == o.literal && name == o.name;
}

bool Binding::operator==(const Binding& o) const
{
    return key == o.key && kind == o.kind && ref == o.ref && family == o.family && cmd == o.cmd && expr == o.expr && value == o.value &&
           word == o.word;
}

bool Goal::operator==(const Goal& o) const
{
    return kind == o.kind && label == o.label && cmds == o.cmds && preds == o.preds && expr == o.expr && literal == o.literal && law == o.law &&
           binder == o.binder && with == o.with && depth == o.depth && engine == o.engine && expect == o.expect;
}

std::string to_string(Goal::Kind k)
{
    using K = Goal::Kind;
    switch (k) {
    case K::refine: return "refine";
    case K::equal: return "equal";
    case K::triple: return "triple";
    case K::establish: return "establish";
    case K::stable: return "stable";
    case K::tolerates: return "tolerates";
    case K::guarantee: return "guarantee";
    case K::law: return "law";
    case K::conditional: return "conditional";
    case K::loop: return "while";
    case K::recursion: return "recursion";
    case K::remove: return "remove";
    case K::hoare_loop: return "hoare-loop";
    case K::fairness: return "fairness";
    }
    return "?";
}

namespace {

std::string lv_text(const LvExpr& lv)
{
    if (lv.kind() == LvExpr::Kind::variable)
        return lv.name() + (lv.primed() ? "'" : "");
    return lv_text(lv.array()) + "[" + print_expr(lv.index()) + "]";
}

std::string op_text(BinaryOp op)
{
    switch (op) {
    case BinaryOp::logical_and: return "/\\";
    case BinaryOp::logical_or: return "\\/";
    default: return op_symbol(op);
    }
}

std::string domain_text(const Domain& d)
{
    std::string s = "{";
    for (std::size_t i = 0; i < d.size(); ++i)
        s += (i ? ", " : "") + d[i].to_string();
    return s + "}";
}

std::string set_text(const PredRef& r) { return r.pred ? "{" + print_expr(*r.pred) + "}" : r.name; }
std::string rel_text(const PredRef& r) { return r.pred ? "<" + print_expr(*r.pred) + ">" : r.name; }
std::string bracket_text(const PredRef& r) { return r.pred ? "[" + print_expr(*r.pred) + "]" : r.name; }

std::string lvalues_text(const std::vector<LValue>& lvs)
{
    std::string s;
    for (std::size_t i = 0; i < lvs.size(); ++i)
        s += (i ? ", " : "") + lvs[i].to_string();
    return s;
}

std::string outcome_word(Outcome o)
{
    switch (o) {
    case Outcome::holds: return "holds";
    case Outcome::fails: return "fails";
    case Outcome::inconclusive: return "inconclusive";
    case Outcome::premise_violation: return "premise-violation";
    case Outcome::soundness_alarm: return "soundness-alarm";
    }
    return "?";
}

std::string binding_text(const Binding& b)
{
    std::string v;
    switch (b.kind) {
    case Binding::Kind::set: v = set_text(b.ref); break;
    case Binding::Kind::rel: v = rel_text(b.ref); break;
    case Binding::Kind::cmd: v = print(*b.cmd); break;
    case Binding::Kind::expr: v = print_expr(*b.expr); break;
    case Binding::Kind::value: v = b.value.to_string(); break;
    case Binding::Kind::word: v = b.word; break;
    case Binding::Kind::family:
        v = "family(";
        for (std::size_t i = 0; i < b.family.size(); ++i)
            v += (i ? ", " : "") + set_text(b.family[i]);
        v += ")";
        break;
    }
    return b.key + " = " + v;
}

} // namespace

std::string print_expr(const Expr& e)
{
    switch (e.kind()) {
    case Expr::Kind::constant: return e.value().to_string();
    case Expr::Kind::deref: return lv_text(e.lvexpr());
    case Expr::Kind::unary: return op_symbol(e.unary_op()) + "(" + print_expr(e.operand()) + ")";
    case Expr::Kind::binary: return "(" + print_expr(e.lhs()) + " " + op_text(e.binary_op()) + " " + print_expr(e.rhs()) + ")";
    }
    return "?";
}

std::string print(const CmdAst& c)
{
    using K = CmdAst::Kind;
    auto bin = [&](const char* op) { return "(" + print(c.kids[0]) + " " + op + " " + print(c.kids[1]) + ")"; };
    switch (c.kind) {
    case K::bot: return "bot";
    case K::top: return "top";
    case K::nil: return "nil";
    case K::term: return "term";
    case K::idle: return "idle";
    case K::fair: return "fair";
    case K::pi: return "pi";
    case K::eps: return "eps";
    case K::alpha: return "alpha";
    case K::test: return "test " + rel_text(c.arg);
    case K::pgm: return "pgm " + rel_text(c.arg);
    case K::env: return "env " + rel_text(c.arg);
    case K::guar: return "guar " + rel_text(c.arg);
    case K::rely: return "rely " + rel_text(c.arg);
    case K::assertion: return "assert " + set_text(c.arg);
    case K::post: return "post " + bracket_text(c.arg);
    case K::atomic: return "atomic " + bracket_text(c.arg);
    case K::opt: return "opt " + bracket_text(c.arg);
    case K::frame: return "(" + lvalues_text(c.lvalues) + " : " + print(c.kids[0]) + ")";
    case K::seq: return bin(";");
    case K::choice: return bin("|");
    case K::par: return bin("||");
    case K::conj: return bin("/\\");
    case K::fin: return "fin(" + print(c.kids[0]) + ")";
    case K::om: return "om(" + print(c.kids[0]) + ")";
    case K::cond: return "if " + print_expr(c.exprs[0]) + " then " + print(c.kids[0]) + " else " + print(c.kids[1]) + " fi";
    case K::loop: return "while " + print_expr(c.exprs[0]) + " do " + print(c.kids[0]) + " od";
    case K::eval: return "[" + print_expr(c.exprs[0]) + " -> " + c.literal.to_string() + "]";
    case K::name: return c.name;
    case K::assign: return c.lvalues[0].to_string() + " := " + print_expr(c.exprs[0]);
    case K::cas: return "cas(" + c.lvalues[0].to_string() + ", " + print_expr(c.exprs[0]) + ", " + print_expr(c.exprs[1]) + ")";
    case K::mu: return "(mu " + c.name + " . " + print(c.kids[0]) + ")";
    case K::nu: return "(nu " + c.name + " . " + print(c.kids[0]) + ")";
    }
    return "?";
}

std::string print(const Script& s)
{
    std::ostringstream os;
    for (const VarDecl& v : s.vars) {
        if (v.index)
            os << "arr " << v.name << "[" << domain_text(*v.index) << "] in " << domain_text(v.domain) << ";\n";
        else
            os << "var " << v.name << " in " << domain_text(v.domain) << ";\n";
    }
    for (const NamedPred& p : s.sets)
        os << "set " << p.name << " := " << print_expr(p.pred) << ";\n";
    for (const NamedPred& p : s.rels)
        os << "rel " << p.name << " := " << print_expr(p.pred) << ";\n";
    for (const NamedCmd& c : s.cmds)
        os << "cmd " << c.name << " := " << print(c.cmd) << ";\n";
    for (const Goal& g : s.goals) {
        using K = Goal::Kind;
        os << "check ";
        if (!g.label.empty())
            os << "\"" << g.label << "\" ";
        os << to_string(g.kind);
        switch (g.kind) {
        case K::refine: os << " " << print(g.cmds[0]) << " >= " << print(g.cmds[1]); break;
        case K::equal: os << " " << print(g.cmds[0]) << " == " << print(g.cmds[1]); break;
        case K::triple: os << " " << set_text(g.preds[0]) << " " << print(g.cmds[0]) << " " << set_text(g.preds[1]); break;
        case K::establish:
            os << " " << set_text(g.preds[0]) << " " << rel_text(g.preds[1]) << " [" << print_expr(*g.expr) << " -> " << g.literal.to_string() << "] "
               << set_text(g.preds[2]);
            break;
        case K::stable: os << " " << set_text(g.preds[0]) << " under " << rel_text(g.preds[1]); break;
        case K::tolerates: os << " " << rel_text(g.preds[0]) << " under " << rel_text(g.preds[1]) << " from " << set_text(g.preds[2]); break;
        case K::guarantee: os << " " << print(g.cmds[0]) << " satisfies " << rel_text(g.preds[0]); break;
        case K::law: os << " " << g.law; break;
        case K::conditional: os << " " << print_expr(*g.expr); break;
        case K::loop: os << " " << print_expr(*g.expr) << " do " << print(g.cmds[0]) << " od"; break;
        case K::recursion: os << " " << g.binder << " . " << print(g.cmds[0]); break;
        case K::remove:
        case K::hoare_loop:
        case K::fairness: break;
        }
        if (!g.with.empty()) {
            os << " with ";
            for (std::size_t i = 0; i < g.with.size(); ++i)
                os << (i ? ", " : "") << binding_text(g.with[i]);
        }
        if (g.depth)
            os << " depth " << *g.depth;
        if (g.engine)
            os << " engine " << to_string(*g.engine);
        if (g.expect != Outcome::holds)
            os << " expect " << outcome_word(g.expect);
        os << ";\n";
    }
    return os.str();
}

} // namespace rgk::dsl
