#include <iostream>

#include "oppenheim/cli/commands.hpp"

int main(int argc, char** argv) {
  return oppenheim::cli::cli_main(argc, argv, std::cout, std::cerr);
}
