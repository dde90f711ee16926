#include <iostream>
#include <string>
#include <vector>

#include "rrc/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return rrc::run_cli(args, std::cout, std::cerr);
}
