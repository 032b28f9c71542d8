#ifndef XSOLVE_CLI_HH
#define XSOLVE_CLI_HH

#include <xsolve/integer_set.hh>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace xsolve
{
    enum class RunMode
    {
        first,
        all,
        count
    };

    struct RunConfig
    {
        std::string input;
        RunMode mode = RunMode::first;
        std::optional<std::uint64_t> limit;
        std::string var_heuristic = "input";
        std::string val_heuristic = "min";
        std::optional<double> time_limit;
        std::optional<std::uint64_t> node_limit;
        bool verify = false;
        bool stats = false;
        std::optional<Integer> element_base;
    };

    namespace exit_code
    {
        constexpr int solved = 0;
        constexpr int error = 1;
        constexpr int unknown = 2;
        constexpr int verification_failed = 3;
    }

    /**
     * Solves one instance file. Standard output receives only "s ", "v "
     * and "c " lines; diagnostics go to err.
     */
    auto run(const RunConfig & config, std::ostream & out, std::ostream & err) -> int;

    /// Parses command-line arguments into a RunConfig and runs it.
    auto run_command_line(int argc, const char * const * argv, std::ostream & out, std::ostream & err) -> int;
}

#endif
