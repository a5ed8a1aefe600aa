#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "rgk/dsl.hh"

using namespace rgk;
using namespace rgk::dsl;

namespace {

std::string slurp(const std::filesystem::path& p)
{
    std::ifstream in(p);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::filesystem::path> shipped_scripts()
{
    std::vector<std::filesystem::path> out;
    for (const auto& e : std::filesystem::directory_iterator(RGK_SCRIPTS_DIR))
        if (e.path().extension() == ".rgk")
            out.push_back(e.path());
    std::sort(out.begin(), out.end());
    return out;
}

ParseError parse_error(const std::string& text)
{
    try {
        parse(text);
    } catch (const ParseError& e) {
        return e;
    }
    FAIL("no parse error for: " << text);
    return ParseError({}, "");
}

} // namespace

TEST_CASE("stable goal")
{
    Script s = parse("var x in {0,1}; rel r := x' = x; check stable {x = 0} under r;");
    REQUIRE(s.vars.size() == 1);
    CHECK(s.vars[0].name == "x");
    CHECK(s.vars[0].domain.size() == 2);
    REQUIRE(s.rels.size() == 1);
    REQUIRE(s.goals.size() == 1);
    CHECK(s.goals[0].kind == Goal::Kind::stable);
    CHECK(s.goals[0].preds[1].name == "r");
    Report r = run(s, {});
    REQUIRE(r.goals.size() == 1);
    CHECK(r.goals[0].verdict.holds());
}

TEST_CASE("refine goal with a named spec")
{
    const std::string text = "var x in {0,1}; rel r := x' = x;\n"
                             "cmd spec := rely r /\\ post [x' = 0]; check refine spec >= pgm<x' = 0> depth 3;";
    Script s = parse(text);
    REQUIRE(s.goals.size() == 1);
    const Goal& g = s.goals[0];
    CHECK(g.kind == Goal::Kind::refine);
    CHECK(g.depth == 3u);
    CHECK(g.cmds[0].kind == CmdAst::Kind::name);
    CHECK(g.cmds[1].kind == CmdAst::Kind::pgm);
    CHECK(s.cmds[0].cmd.kind == CmdAst::Kind::conj);
    CHECK(parse(print(s)) == s);
    CHECK(run(s, {}).all_as_expected());
}

TEST_CASE("command precedence")
{
    Script s = parse("var x in {0,1}; cmd c := nil | pi ; eps || alpha /\\ x : nil;");
    const CmdAst& c = s.cmds[0].cmd;
    REQUIRE(c.kind == CmdAst::Kind::choice);
    CHECK(c.kids[0].kind == CmdAst::Kind::nil);
    const CmdAst& par = c.kids[1];
    REQUIRE(par.kind == CmdAst::Kind::par);
    CHECK(par.kids[0].kind == CmdAst::Kind::seq);
    REQUIRE(par.kids[1].kind == CmdAst::Kind::conj);
    CHECK(par.kids[1].kids[1].kind == CmdAst::Kind::frame);
}

TEST_CASE("syntax error carries a caret")
{
    const std::string text = "var x in {0,1};\ncheck refine >= nil;";
    ParseError e = parse_error(text);
    CHECK(e.pos.line == 2);
    CHECK(e.pos.col == 14);
    CHECK_FALSE(e.expected.empty());
    const std::string shown = e.render(text, "t.rgk");
    CHECK(shown.find("t.rgk:2:14:") == 0);
    CHECK(shown.find("check refine >= nil;\n") != std::string::npos);
    CHECK(shown.find("\n               ^") != std::string::npos);
}

TEST_CASE("resolution errors")
{
    auto run_error = [](const std::string& text) {
        try {
            run(parse(text), {});
        } catch (const ParseError& e) {
            return e.message;
        }
        return std::string();
    };
    CHECK(run_error("var x in {0,1}; check stable {x = 0} under nope;").find("nope") != std::string::npos);
    CHECK(run_error("var x in {0,1}; check stable {y = 0} under <true>;").find("y") != std::string::npos);
    CHECK_FALSE(run_error("var x in {0,1}; check law not-a-law;").empty());
    CHECK_FALSE(run_error("var x in {0,1}; check law assert-merge with p1 = {true};").empty());
}

TEST_CASE("expectations")
{
    Script s = parse("var x in {0,1}; check refine test<x = 0> >= test<x = 1> expect fails;\n"
                     "check refine test<x = 0> >= test<x = 1>;");
    Report r = run(s, {});
    CHECK(r.goals[0].as_expected());
    CHECK_FALSE(r.goals[1].as_expected());
    CHECK_FALSE(r.all_as_expected());
    REQUIRE(r.goals[1].verdict.counterexample);
}

TEST_CASE("shipped scripts round-trip and meet their expectations")
{
    const auto files = shipped_scripts();
    REQUIRE(files.size() >= 4);
    for (const auto& f : files) {
        CAPTURE(f.string());
        const Script s = parse(slurp(f));
        const std::string once = print(s);
        const Script back = parse(once);
        CHECK(back == s);
        CHECK(print(back) == once);
    }
}

TEST_CASE("json report is deterministic and well formed")
{
    const Script s = parse(slurp(std::filesystem::path(RGK_SCRIPTS_DIR) / "basics.rgk"));
    RunOptions o;
    o.seed = 7;
    const std::string a = render_json(run(s, o));
    o.jobs = 4;
    const std::string b = render_json(run(s, o));
    CHECK(a == b);

    const auto j = nlohmann::json::parse(a);
    CHECK(j["version"] == 1);
    CHECK(j["seed"] == 7);
    REQUIRE(j["goals"].size() == s.goals.size());
    for (const auto& g : j["goals"]) {
        for (const char* k : {"id", "kind", "verdict", "depth", "engine", "elapsed_ms", "counterexample"})
            CHECK(g.contains(k));
        CHECK(g["elapsed_ms"] == 0);
        if (!g["counterexample"].is_null()) {
            const auto& cx = g["counterexample"];
            CHECK(cx["start"].is_array());
            for (const auto& st : cx["steps"]) {
                CHECK((st["label"] == "pi" || st["label"] == "eps"));
                CHECK(st["pre"].is_array());
                CHECK(st["post"].is_array());
            }
            auto start = cx["start"].get<std::vector<std::string>>();
            CHECK(std::is_sorted(start.begin(), start.end()));
        }
    }
}
