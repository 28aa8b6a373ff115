// SPDX-License-Identifier: Apache-2.0
#include "boolvox/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return boolvox::run_cli(argc, argv, std::cout, std::cerr); }
