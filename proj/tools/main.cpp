// SPDX-License-Identifier: MIT
#include <iostream>

#include "qshutter/cli.hpp"

int main(int argc, char** argv) {
    return qshutter::run_cli(argc, argv, std::cout, std::cerr);
}
