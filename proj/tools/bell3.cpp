#include <iostream>
#include <string>
#include <vector>

#include "bell3/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return bell3::cli::run(args, std::cout, std::cerr);
}
