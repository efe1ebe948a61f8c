#include <iostream>

#include "levyx_cli/commands.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return levyx::cli::run(args, std::cout, std::cerr);
}
