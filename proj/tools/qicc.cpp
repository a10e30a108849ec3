#include <iostream>
#include <string>
#include <vector>

#include "qicc/cli.hpp"

int main(int argc, char** argv) {
    const std::vector<std::string> args(argv, argv + argc);
    return qicc::cli::run(args, std::cout, std::cerr);
}
