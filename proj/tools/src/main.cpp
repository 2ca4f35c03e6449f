#include <iostream>
#include <string>
#include <vector>

#include "qturn/cli/commands.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return qturn::cli::run(args, std::cout, std::cerr);
}
