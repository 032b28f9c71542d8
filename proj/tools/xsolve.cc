#include <xsolve/cli.hh>

#include <iostream>

auto main(int argc, char * argv[]) -> int
{
    return xsolve::run_command_line(argc, argv, std::cout, std::cerr);
}
