// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
#include <algorithm>
#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "rgk/case_studies.hh"
#include "rgk/lang.hh"
#include "rgk/laws.hh"
#include "rgk/random.hh"
#include "rgk/theorems.hh"

using namespace rgk;

namespace {

struct Result {
    bool ok = true;
    std::string detail;
};

StateSpace counter(int n) { return StateSpace(StateSpaceDecl().add_var("x", int_range(0, n - 1))); }

Result laws()
{
    std::size_t n_ex = 0, n_rnd = 0;
    std::ostringstream bad;
    bool ok = true;
    for (const Law& l : law_catalogue()) {
        SweepStats ex = sweep_exhaustive(l, 4, Engine::graph);
        SweepStats rnd = sweep_random(l, 200, 1, 4, Engine::graph);
        n_ex += ex.instances;
        n_rnd += rnd.instances;
        if (!ex.clean() || !rnd.clean() || rnd.instances < 200 || ex.instances == 0) {
            ok = false;
            bad << " " << l.id;
            for (const auto& s : ex.failure_notes)
                std::cerr << "  " << s << "\n";
            for (const auto& s : rnd.failure_notes)
                std::cerr << "  " << s << "\n";
        }
    }
    std::ostringstream os;
    os << law_catalogue().size() << " laws, " << n_ex << " exhaustive (|S|=2) + " << n_rnd << " random (|S|=3) bindings, depth 4";
    if (!ok)
        os << "; failing:" << bad.str();
    return {ok, os.str()};
}

// Only commands with more than the baseline traces at depth 3 count.
Result engines()
{
    std::size_t cmds = 0, cmd_ok = 0, pairs = 0, pair_ok = 0, traces = 0, skipped = 0;
    for (int n : {2, 3}) {
        StateSpace sp = counter(n);
        Rng rng(100 + n);
        auto draw = [&] {
            for (;;) {
                Command c = rng.command(sp, 1 + rng.below(8));
                if (denote(sp, c, 3, Engine::enumerate).size() > sp.size())
                    return c;
                ++skipped;
            }
        };
        for (int i = 0; i < 300; ++i) {
            Command c = draw();
            for (std::size_t d = 1; d <= 3; ++d) {
                const TraceSet e = denote(sp, c, d, Engine::enumerate);
                ++cmds;
                traces += e.size();
                cmd_ok += e == denote(sp, c, d, Engine::graph);
            }
        }
        Checker a(sp, {3, Engine::enumerate}), b(sp, {3, Engine::graph});
        for (int i = 0; i < 150; ++i) {
            Command c = draw(), d = draw();
            Verdict va = a.refines(c, d), vb = b.refines(c, d);
            ++pairs;
            pair_ok += va.outcome == vb.outcome && va.counterexample == vb.counterexample;
        }
    }
    std::ostringstream os;
    os << cmd_ok << "/" << cmds << " denotations equal (600 commands at depths 1-3, mean " << traces / cmds << " traces), " << pair_ok
       << "/" << pairs << " refinement verdicts and counterexamples equal; " << skipped << " baseline-only draws skipped";
    return {cmd_ok == cmds && pair_ok == pairs && cmds / 3 >= 500 && pairs >= 200, os.str()};
}

Result theorems()
{
    struct Row {
        const char* name;
        TheoremSweep s;
    };
    const std::vector<Row> rows{{"expression", sweep_expression_rules(50, 7, 4, Engine::graph)},
                                {"conditional", sweep_conditional(60, 7, 4, Engine::graph)},
                                {"recursion", sweep_recursion(60, 7, 5, Engine::graph)},
                                {"while", sweep_while(60, 7, 4, Engine::graph)}};
    bool ok = true;
    std::ostringstream os;
    for (const Row& r : rows) {
        ok = ok && r.s.instances >= 50 && r.s.soundness_alarms == 0 && r.s.inconclusive == 0;
        os << r.name << " " << r.s.instances << " (" << r.s.holds << " hold, " << r.s.premise_violations << " premise violations, "
           << r.s.soundness_alarms << " alarms); ";
        for (const auto& a : r.s.alarms)
            std::cerr << "  alarm: " << a << "\n";
    }
    return {ok, os.str()};
}

Result negative_control()
{
    NegativeControlReport n = negative_control_hoare_loop(5, Engine::graph);
    std::ostringstream os;
    os << "interfered " << to_string(n.interfered.outcome) << ", rely identity " << to_string(n.isolated.outcome);
    if (n.interfered.counterexample)
        os << ", counterexample of " << n.interfered.counterexample->length() << " steps";
    return {n.interfered.fails() && n.interfered.counterexample && n.isolated.holds() && n.as_expected(), os.str()};
}

Result remove_case()
{
    RemoveReport r = verify_remove(RemoveConfig{});
    std::ostringstream os;
    std::size_t held = 0;
    for (const Obligation& o : r.loop.premises)
        held += o.verdict.holds();
    os << r.space->size() << " states, depth 8: " << held << "/" << r.loop.premises.size() << " loop obligations hold, guarantee "
       << to_string(r.guarantee.outcome) << ", refinement " << to_string(r.refinement.outcome) << ", early-exit witness "
       << (r.early_exit ? r.early_exit->to_string(*r.space) : std::string("missing"));
    return {r.all_hold() && held == r.loop.premises.size(), os.str()};
}

Result fairness()
{
    bool ok = true;
    std::size_t n = 0;
    for (int states = 1; states <= 3; ++states) {
        StateSpace sp = counter(states);
        for (std::size_t d = 1; d <= 4; ++d) {
            Checker ck(sp, {d, Engine::graph});
            ok = ok && ck.equals(Command::conj(cmd::term(sp), cmd::fair(sp)), cmd::fin_iter(sp, cmd::alpha(sp))).holds();
            ++n;
        }
    }
    return {ok, std::to_string(n) + " (|S|, depth) combinations"};
}

Result double_read()
{
    StateSpace sp = counter(2);
    Checker ck(sp, {3, Engine::graph});
    const Expr xx = Expr::binary(Expr::var("x"), BinaryOp::add, Expr::var("x"));
    const Command read = cmd::eval_expr(sp, xx, Value::integer(1));
    const bool shared = ck.feasible(sp.all(), Command::conj(cmd::rely(sp, sp.univ()), read));
    const bool isolated = ck.feasible(sp.all(), Command::conj(cmd::rely(sp, sp.identity()), read));
    return {shared && !isolated, std::string("x + x -> 1 feasible under rely univ: ") + (shared ? "yes" : "no") +
                                     ", under rely identity: " + (isolated ? "yes" : "no")};
}

std::string run_cli(const std::string& cmd, int& rc)
{
    std::string out;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) {
        rc = -1;
        return out;
    }
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0)
        out.append(buf.data(), n);
    rc = pclose(p);
    return out;
}

Result cli(const std::string& exe, const std::string& scripts)
{
    std::vector<std::filesystem::path> files;
    for (const auto& e : std::filesystem::directory_iterator(scripts))
        if (e.path().extension() == ".rgk")
            files.push_back(e.path());
    std::sort(files.begin(), files.end());
    bool ok = !files.empty();
    std::size_t bytes = 0;
    for (const auto& f : files) {
        const std::string cmd = "'" + exe + "' check '" + f.string() + "' --seed 42 --json - --jobs 2 2>/dev/null";
        int rc1 = 0, rc2 = 0;
        const std::string a = run_cli(cmd, rc1);
        const std::string b = run_cli(cmd, rc2);
        bytes += a.size();
        if (a.empty() || a != b || rc1 != 0 || rc2 != 0) {
            ok = false;
            std::cerr << "  " << f.filename().string() << ": rc " << rc1 << "/" << rc2 << (a == b ? "" : ", outputs differ") << "\n";
        }
    }
    return {ok, std::to_string(files.size()) + " scripts, " + std::to_string(bytes) + " bytes of json each run"};
}

} // namespace

int main(int argc, char** argv)
{
    const std::string exe = argc > 1 ? argv[1] : RGK_CLI_PATH;
    const std::string scripts = argc > 2 ? argv[2] : RGK_SCRIPTS_DIR;
    const std::vector<std::pair<std::string, std::function<Result()>>> criteria{
        {"laws", laws},
        {"engine cross-check", engines},
        {"theorem sweeps", theorems},
        {"negative control", negative_control},
        {"remove case study", remove_case},
        {"fairness", fairness},
        {"double read", double_read},
        {"cli determinism", [&] { return cli(exe, scripts); }},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        Result r;
        try {
            r = criteria[i].second();
        } catch (const std::exception& e) {
            r = {false, std::string("exception: ") + e.what()};
        }
        const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("%s %d %s: %s (%.1fs)\n", r.ok ? "PASS" : "FAIL", static_cast<int>(i + 1), criteria[i].first.c_str(), r.detail.c_str(), s);
        std::fflush(stdout);
        failed += !r.ok;
    }
    return failed ? 1 : 0;
}
