#include <iostream>

#include "mcspace/cli.hpp"

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    auto report = mcspace::cli::run(args);
    std::cout << mcspace::cli::render(report);
    return static_cast<int>(report.status);
}
