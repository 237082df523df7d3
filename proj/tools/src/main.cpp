#include "qcert_cli/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
  std::ios::sync_with_stdio(false);
  return qcert::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
