#include <iostream>
#include <string>
#include <vector>

#include "ppmc/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return ppmc::runCli(args, std::cout, std::cerr);
}
