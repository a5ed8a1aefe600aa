#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "rgk/dsl.hh"
#include "rgk/laws.hh"

namespace {

bool read_file(const std::string& path, std::string& out)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        return false;
    std::ostringstream ss;
    ss << in.rdbuf();
    out = ss.str();
    return true;
}

std::vector<std::string> split_ids(const std::string& s)
{
    std::vector<std::string> out;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, ',');)
        if (!item.empty())
            out.push_back(item);
    return out;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Bounded checker for rely/guarantee refinement scripts"};
    app.require_subcommand(1);

    std::string file, json_out, engine_name, laws;
    std::size_t depth = 0, jobs = 1, samples = 50;
    std::uint64_t seed = 0;
    bool timings = false;

    CLI::App* check = app.add_subcommand("check", "run the goals of a script");
    check->add_option("file", file, "script file")->required();
    auto* depth_opt = check->add_option("--depth", depth, "default depth for goals without their own");
    auto* engine_opt = check->add_option("--engine", engine_name, "enum or graph")->check(CLI::IsMember({"enum", "graph"}));
    check->add_option("--laws", laws, "extra law goals: all, or comma-separated ids");
    check->add_option("--json", json_out, "write the json report to this file (- for stdout)");
    auto* seed_opt = check->add_option("--seed", seed, "seed for random law bindings (default: $RG_KERNEL_SEED, else 1)");
    check->add_option("--jobs", jobs, "goals checked concurrently")->check(CLI::PositiveNumber);
    check->add_option("--samples", samples, "random bindings per law goal");
    check->add_flag("--timings", timings, "report elapsed times (makes the json output non-deterministic)");

    CLI::App* print = app.add_subcommand("print", "parse a script and print it in canonical form");
    print->add_option("file", file, "script file")->required();

    CLI::App* list = app.add_subcommand("list-laws", "list the law catalogue");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    if (list->parsed()) {
        for (const rgk::Law& l : rgk::law_catalogue())
            std::cout << l.id << "\t" << l.statement << "\n";
        return 0;
    }

    std::string text;
    if (!read_file(file, text)) {
        std::cerr << "rgk: cannot read " << file << "\n";
        return 2;
    }

    rgk::dsl::Script script;
    try {
        script = rgk::dsl::parse(text);
        if (print->parsed()) {
            std::cout << rgk::dsl::print(script);
            return 0;
        }

        rgk::dsl::RunOptions opts;
        if (*depth_opt)
            opts.depth = depth;
        if (*engine_opt)
            opts.engine = rgk::parse_engine(engine_name);
        if (*seed_opt) {
            opts.seed = seed;
        } else if (const char* env = std::getenv("RG_KERNEL_SEED")) {
            try {
                opts.seed = std::stoull(env);
            } catch (const std::exception&) {
                std::cerr << "rgk: RG_KERNEL_SEED is not a number\n";
                return 2;
            }
        }
        opts.jobs = jobs;
        opts.timings = timings;
        opts.law_samples = samples;
        opts.laws = split_ids(laws);

        const rgk::dsl::Report rep = rgk::dsl::run(script, opts);
        if (json_out == "-") {
            std::cout << rgk::dsl::render_json(rep);
        } else {
            std::cout << rgk::dsl::render_human(rep);
            if (!json_out.empty()) {
                std::ofstream out(json_out, std::ios::binary);
                if (!out) {
                    std::cerr << "rgk: cannot write " << json_out << "\n";
                    return 2;
                }
                out << rgk::dsl::render_json(rep);
            }
        }
        return rep.all_as_expected() ? 0 : 1;
    } catch (const rgk::dsl::ParseError& e) {
        std::cerr << e.render(text, file);
        return 2;
    } catch (const rgk::Error& e) {
        std::cerr << file << ": error: " << e.what() << "\n";
        return 2;
    }
}
