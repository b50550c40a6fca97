#include <iostream>
#include <string>
#include <vector>

#include "schmidt/cli.hpp"

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return schmidt::cli::run(args, std::cin, std::cout, std::cerr);
}
