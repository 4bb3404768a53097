#include <iostream>
#include <string>
#include <vector>

#include "bernsum/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return bernsum::cli::run(args, std::cout, std::cerr);
}
