#include <iostream>

#include "wcp_cli/cli.hpp"

int main(int argc, char** argv) { return wcp::cli::main_entry(argc, argv, std::cout, std::cerr); }
