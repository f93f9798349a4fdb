#include <iostream>
#include <string>
#include <vector>

#include "d2dsim/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return d2dsim::cli_main(args, std::cout, std::cerr);
}
