#include <iostream>
#include <string>
#include <vector>

#include "ocd/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return ocd::run_cli(args, std::cout, std::cerr);
}
