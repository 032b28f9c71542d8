#include <xsolve/cli.hh>
#include <xsolve/compiler.hh>
#include <xsolve/engine.hh>
#include <xsolve/errors.hh>
#include <xsolve/xcsp_model.hh>

#include <CLI11.hpp>
#include <fmt/core.h>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace xsolve;

using std::ostream;
using std::string;
using std::vector;

namespace
{
    auto read_file(const string & path) -> string
    {
        std::ifstream in{path, std::ios::binary};
        if (! in)
            throw Error(fmt::format("cannot read '{}'", path));
        std::ostringstream text;
        text << in.rdbuf();
        if (in.bad())
            throw Error(fmt::format("cannot read '{}'", path));
        return text.str();
    }

    auto check_config(const RunConfig & config) -> void
    {
        if (config.limit && *config.limit == 0)
            throw Error("--limit must be positive");
        if (config.node_limit && *config.node_limit == 0)
            throw Error("--node-limit must be positive");
        if (config.time_limit && ! (*config.time_limit >= 0))
            throw Error("--time-limit must not be negative");
        if (config.element_base && *config.element_base != 0 && *config.element_base != 1)
            throw Error("--element-base must be 0 or 1");
    }

    auto value_line(const Solution & s) -> string
    {
        string line = "v";
        for (auto v : s.values)
            line += fmt::format(" {}", v);
        return line;
    }
}

auto xsolve::run(const RunConfig & config, ostream & out, ostream & err) -> int
{
    auto started = std::chrono::steady_clock::now();
    ResolvedInstance instance;
    Problem problem;
    SearchOptions options;
    Integer base = default_element_base;

    try {
        check_config(config);
        auto var = var_heuristic_from_name(config.var_heuristic);
        if (! var)
            throw Error(fmt::format("unknown variable heuristic '{}'", config.var_heuristic));
        auto val = val_heuristic_from_name(config.val_heuristic);
        if (! val)
            throw Error(fmt::format("unknown value heuristic '{}'", config.val_heuristic));
        options.strategy = {*var, *val};

        auto model = parse_instance(read_file(config.input));
        // diagnostics start with the parser's warnings
        instance = resolve_references(model);
        for (auto & d : instance.diagnostics)
            err << "warning: " << d << '\n';

        base = config.element_base.value_or(default_element_base);
        problem = compile_instance(instance, CompileOptions{base, AllDifferentLowering::dedicated});
    }
    catch (const std::exception & e) {
        err << "error: " << e.what() << '\n';
        return exit_code::error;
    }

    options.limits.nodes = config.node_limit;
    if (config.time_limit)
        options.limits.time = std::chrono::duration<double>{*config.time_limit};
    options.solution_limit = config.mode == RunMode::first ? std::optional<std::uint64_t>{1} : config.limit;

    auto result = search(problem, options);

    if (config.verify)
        for (size_t i = 0; i < result.solutions.size(); ++i)
            if (auto bad = first_violation(instance, result.solutions[i], base)) {
                err << fmt::format("error: verification failed: solution {} ({}) violates constraint '{}'\n", i + 1,
                    value_line(result.solutions[i]).substr(2), *bad);
                return exit_code::verification_failed;
            }

    int code = exit_code::solved;
    if (! result.solutions.empty())
        out << "s SATISFIABLE\n";
    else if (result.complete)
        out << "s UNSATISFIABLE\n";
    else {
        out << "s UNKNOWN\n";
        code = exit_code::unknown;
    }

    if (config.mode == RunMode::count)
        out << "c count " << result.solutions.size() << '\n';
    else
        for (auto & s : result.solutions)
            out << value_line(s) << '\n';

    if (! result.complete && ! result.solutions.empty() && config.mode != RunMode::first)
        err << "note: search stopped by a resource limit; more solutions may exist\n";

    if (config.stats) {
        auto & st = result.stats;
        out << "c nodes " << st.nodes << '\n';
        out << "c failures " << st.failures << '\n';
        out << "c propagations " << st.propagations << '\n';
        out << "c peak_depth " << st.peak_depth << '\n';
        out << "c solutions " << st.solutions << '\n';
        std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - started;
        out << fmt::format("c time {:.6f}\n", elapsed.count());
    }
    return code;
}

auto xsolve::run_command_line(int argc, const char * const * argv, ostream & out, ostream & err) -> int
{
    RunConfig config;
    bool all = false, count = false;
    std::optional<Integer> base;

    CLI::App app{"Solve an XCSP 2.1 instance and print s/v/c result lines."};
    app.add_option("input", config.input, "XCSP 2.1 instance file")->required();
    app.add_flag("--all", all, "report every solution");
    app.add_flag("--count", count, "report only the number of solutions");
    app.add_option("--limit", config.limit, "stop after N solutions")->check(CLI::PositiveNumber);
    app.add_option("--var-heuristic", config.var_heuristic, "variable selection")
        ->check(CLI::IsMember({"input", "min-dom", "max-deg"}));
    app.add_option("--val-heuristic", config.val_heuristic, "value selection")->check(CLI::IsMember({"min", "max"}));
    app.add_option("--time-limit", config.time_limit, "time budget in seconds")->check(CLI::NonNegativeNumber);
    app.add_option("--node-limit", config.node_limit, "search node budget")->check(CLI::PositiveNumber);
    app.add_flag("--verify", config.verify, "check every reported solution against the instance");
    app.add_flag("--stats", config.stats, "print search statistics");
    app.add_option("--element-base", base, "index of the first element table entry")->check(CLI::IsMember({0, 1}));
    app.get_formatter()->column_width(28);

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError & e) {
        auto code = app.exit(e, out, err);
        return code == 0 ? exit_code::solved : exit_code::error;
    }

    if (count)
        config.mode = RunMode::count;
    else if (all || config.limit)
        config.mode = RunMode::all;
    config.element_base = base;
    return run(config, out, err);
}
