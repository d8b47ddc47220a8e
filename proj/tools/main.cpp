#include <iostream>
#include <vector>

#include "loopfix/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return loopfix::cli::run(args, std::cout, std::cerr);
}
